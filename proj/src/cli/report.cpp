#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "regint/cli.hpp"

namespace regint::cli {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skip:
      return "skip";
  }
  return "?";
}

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

ordered_json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.status == Status::fail;
  return n;
}

ordered_json SuiteReport::to_json(bool with_timing) const {
  ordered_json j;
  j["schema"] = kSchema;
  j["suite"] = suite;
  j["seed"] = seed;
  j["status"] = passed() ? "pass" : "fail";
  j["failures"] = failures();
  auto& cs = j["cases"] = ordered_json::array();
  for (const auto& c : cases) {
    ordered_json e;
    e["id"] = c.id;
    e["params"] = c.params.is_null() ? ordered_json::object() : c.params;
    e["expected"] = number(c.expected);
    e["actual"] = number(c.actual);
    e["tolerance"] = number(c.tolerance);
    e["status"] = to_string(c.status);
    if (!c.note.empty()) e["note"] = c.note;
    cs.push_back(std::move(e));
  }
  if (with_timing) j["wall_time"] = number(wall_time);
  return j;
}

void Recorder::close(std::string id, ordered_json params, double expected, double actual, double tol) {
  const bool ok = std::isfinite(actual) && std::abs(actual - expected) <= tol;
  r_.cases.push_back({std::move(id), std::move(params), expected, actual, tol, ok ? Status::pass : Status::fail, {}});
}

void Recorder::at_most(std::string id, ordered_json params, double value, double limit) {
  const bool ok = !std::isnan(value) && value <= limit;
  r_.cases.push_back({std::move(id), std::move(params), limit, value, 0.0, ok ? Status::pass : Status::fail, {}});
}

void Recorder::exact(std::string id, ordered_json params, long long failures, long long total) {
  params["checks"] = total;
  r_.cases.push_back({std::move(id), std::move(params), 0.0, double(failures), 0.0,
                      failures == 0 && total > 0 ? Status::pass : Status::fail, {}});
}

void Recorder::fail(std::string id, ordered_json params, std::string note) {
  r_.cases.push_back({std::move(id), std::move(params), 0.0, 0.0, 0.0, Status::fail, std::move(note)});
}

void Recorder::skip(std::string id, ordered_json params, std::string note) {
  r_.cases.push_back({std::move(id), std::move(params), 0.0, 0.0, 0.0, Status::skip, std::move(note)});
}

}  // namespace regint::cli
