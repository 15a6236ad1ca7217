#pragma once

#include <string>
#include <vector>

namespace matpfd {

/// Pass/fail record for one identity or comparison.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& c : checks) f += c.passed ? 0 : 1;
    return f;
  }
  bool ok() const { return failures() == 0; }
};

}  // namespace matpfd
