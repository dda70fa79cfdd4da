#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace regint::cli {

using nlohmann::ordered_json;

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr int kSchema = 1;

// Thrown for malformed invocations; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Status { pass, fail, skip };
const char* to_string(Status s);

// Doubles are rounded to 12 significant digits before they reach a report, so
// reruns with the same seed serialize byte-identically.
double round12(double x);
ordered_json number(double x);

struct CaseResult {
  std::string id;
  ordered_json params = ordered_json::object();
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  Status status = Status::pass;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = kDefaultSeed;
  std::vector<CaseResult> cases;
  double wall_time = 0.0;  // seconds; only serialized on request

  bool passed() const;
  std::size_t failures() const;
  ordered_json to_json(bool with_timing = false) const;
};

// Collects cases for one report.
class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}

  // |actual - expected| <= tol
  void close(std::string id, ordered_json params, double expected, double actual, double tol);
  // value <= limit
  void at_most(std::string id, ordered_json params, double value, double limit);
  // failures out of total exact checks; passes iff failures == 0
  void exact(std::string id, ordered_json params, long long failures, long long total);
  void fail(std::string id, ordered_json params, std::string note);
  void skip(std::string id, ordered_json params, std::string note);

 private:
  SuiteReport& r_;
};

struct Criterion {
  int id;
  std::string area;
  std::string suite;     // verify suite that includes it
  double budget_seconds;
  std::function<void(Recorder&, std::uint64_t seed)> run;
};

const std::vector<Criterion>& criteria();
SuiteReport run_criterion(const Criterion& c, std::uint64_t seed);

const std::vector<std::string>& suite_names();  // without "all"
// Runs every criterion of the suite ("all" for everything), merged in order.
// jobs > 1 runs criteria concurrently. Throws UsageError for unknown names.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int jobs = 1);

// Full command line; returns the process exit code.
int run(int argc, char** argv);

}  // namespace regint::cli
