#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fwave {

// One end-to-end check of the library against a pinned tolerance. The
// checks cover kernel equivalence, divergence-rate fits, the Wick moment
// identity, Cauchy decay of the approximation ladder, exact admissibility
// arithmetic, the solver contract, full-pipeline convergence in both
// regimes, and a sweep of per-module invariants.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // the numbers behind the verdict, one line
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;

  bool all_pass() const {
    for (const auto& r : results) {
      if (!r.pass) return false;
    }
    return true;
  }
};

// Runs the acceptance suite; the full set takes tens of minutes. Each
// criterion prints one pass/fail line to `progress` as it completes.
// `only` selects a subset of criterion ids; empty runs all of them.
AcceptanceReport run_acceptance(std::ostream* progress = nullptr,
                                const std::vector<int>& only = {});

}  // namespace fwave
