#include "subgauss/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace subgauss {
namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "fail";
}

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

void VerifyReport::add(std::string name, bool passed, double measured, double threshold) {
  checks_.push_back({std::move(name), passed, measured, threshold,
                     passed ? CheckStatus::Pass : CheckStatus::Fail});
}

void VerifyReport::skip(std::string name) {
  checks_.push_back({std::move(name), true, std::nan(""), std::nan(""), CheckStatus::Skipped});
}

void VerifyReport::append(const VerifyReport& other, const std::string& prefix) {
  for (const Check& c : other.checks_) {
    checks_.push_back(c);
    checks_.back().name.insert(0, prefix);
  }
}

bool VerifyReport::all_passed() const noexcept {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

std::string VerifyReport::to_json(int indent) const {
  auto arr = nlohmann::json::array();
  for (const auto& c : checks_) {
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"measured", number(c.measured)},
                   {"threshold", number(c.threshold)},
                   {"status", status_name(c.status)}});
  }
  return arr.dump(indent);
}

std::string VerifyReport::to_table() const {
  std::string out;
  char line[256];
  for (const auto& c : checks_) {
    if (c.status == CheckStatus::Skipped) {
      std::snprintf(line, sizeof line, "%-8s %s\n", "SKIPPED", c.name.c_str());
    } else {
      std::snprintf(line, sizeof line, "%-8s %-44s measured=%-13.6g threshold=%.6g\n",
                    c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.threshold);
    }
    out += line;
  }
  return out;
}

}  // namespace subgauss
