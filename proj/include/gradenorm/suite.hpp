#pragma once

#include <string>
#include <vector>

#include "gradenorm/reports.hpp"

namespace gradenorm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteReport {
  std::vector<CriterionResult> criteria;
  bool all_pass() const {
    for (const auto& c : criteria)
      if (!c.pass) return false;
    return true;
  }
};

/// The full certification battery.  Every tolerance is pinned in the
/// implementation; threads only affects wall time, never results.
SuiteReport run_acceptance_suite(int threads = 1);

Json suite_to_json(const SuiteReport& report);

}  // namespace gradenorm
