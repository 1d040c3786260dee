#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kimlab {

/// One named sub-check of a validation or scenario run.
struct Check {
  std::string name;
  /// The statement being verified, in mathematical notation.
  std::string claim;
  bool pass = false;
  /// Counterexample or supporting data; empty when there is nothing to show.
  std::string witness;
};

/// Structured pass/fail result. A report passes iff every check passes.
struct Report {
  std::string subject;
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  Check& add(std::string name, bool pass, std::string witness = {},
             std::string claim = {}) {
    checks.push_back(
        Check{std::move(name), std::move(claim), pass, std::move(witness)});
    return checks.back();
  }

  /// First failing check, or nullptr.
  const Check* first_failure() const {
    for (const auto& c : checks) {
      if (!c.pass) return &c;
    }
    return nullptr;
  }
};

}  // namespace kimlab
