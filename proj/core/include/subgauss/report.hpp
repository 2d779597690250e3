#pragma once

#include <string>
#include <vector>

namespace subgauss {

enum class CheckStatus { Pass, Fail, Skipped };

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  CheckStatus status = CheckStatus::Fail;
};

/// Ordered list of oracle checks. Skipped checks count as passed.
class VerifyReport {
 public:
  void add(std::string name, bool passed, double measured, double threshold);
  void skip(std::string name);
  /// Appends other's checks, each name prefixed by prefix.
  void append(const VerifyReport& other, const std::string& prefix = "");

  const std::vector<Check>& checks() const noexcept { return checks_; }
  bool all_passed() const noexcept;

  /// JSON array of {name, passed, measured, threshold, status}; non-finite numbers become null.
  std::string to_json(int indent = 2) const;
  /// One line per check for terminal output.
  std::string to_table() const;

 private:
  std::vector<Check> checks_;
};

}  // namespace subgauss
