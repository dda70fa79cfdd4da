// One line per criterion; exits nonzero if any criterion fails or overruns its budget.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "regint/cli.hpp"

using namespace regint::cli;

int main(int argc, char** argv) {
  std::uint64_t seed = kDefaultSeed;
  int only = 0;  // 0 runs everything
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc)
      seed = std::strtoull(argv[++i], nullptr, 10);
    else if (a == "--only" && i + 1 < argc)
      only = std::atoi(argv[++i]);
  }

  int failed = 0;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    const auto r = run_criterion(c, seed);
    const bool in_budget = r.wall_time <= c.budget_seconds;
    const bool ok = r.passed() && in_budget;
    failed += !ok;
    std::printf("[%s] criterion %2d  %-24s %3zu/%-3zu cases  %7.2fs / %4.0fs%s\n", ok ? "PASS" : "FAIL", c.id,
                c.area.c_str(), r.cases.size() - r.failures(), r.cases.size(), r.wall_time, c.budget_seconds,
                in_budget ? "" : "  over budget");
    for (const auto& k : r.cases) {
      if (k.status != Status::fail) continue;
      ordered_json e = {{"id", k.id},
                        {"params", k.params},
                        {"expected", number(k.expected)},
                        {"actual", number(k.actual)},
                        {"tolerance", number(k.tolerance)}};
      if (!k.note.empty()) e["note"] = k.note;
      std::printf("         %s\n", e.dump().c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%s: %d criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
