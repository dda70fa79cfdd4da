#include "regint/cli.hpp"

int main(int argc, char** argv) { return regint::cli::run(argc, argv); }
