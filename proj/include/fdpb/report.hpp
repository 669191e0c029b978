#pragma once

#include <string>
#include <vector>

namespace fdpb {

struct Check {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

/// Flat list of named residual checks; the overall verdict is the conjunction.
struct ValidationReport {
  std::vector<Check> checks;

  void add(std::string name, double residual, double threshold) {
    checks.push_back({std::move(name), residual, residual <= threshold});
  }

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }

  double max_residual() const {
    double worst = 0.0;
    for (const auto& c : checks) worst = std::max(worst, c.residual);
    return worst;
  }
};

}  // namespace fdpb
