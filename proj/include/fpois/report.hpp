#pragma once

#include <string>
#include <vector>

namespace fpois {

/// One named verification with the residual that decided it, in
/// canonical text ("0" when it passed).
struct Check {
  std::string name;
  bool pass = true;
  std::string residual = "0";
};

/// Ordered list of checks. Passes iff every check passes.
struct MoritaReport {
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const MoritaReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }
};

}  // namespace fpois
