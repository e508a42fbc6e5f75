#pragma once

#include <string>
#include <vector>

#include "fwave/rational.hpp"

namespace fwave {

// Wave admissibility of Lebesgue exponent pairs, evaluated in exact
// rational arithmetic. No floating point on any decision path.
//
// (q,r) is (d,s)-admissible when
//   2 <= q <= inf,  2 <= r < inf,
//   2/q + (d-1)/r <= (d-1)/2,
//   1/q + d/r = d/2 - s,
// and (qt,rt) is (d,s)-dual-admissible when
//   1 <= qt <= 2,  1 < rt <= 2,
//   2/qt + (d-1)/rt >= 2 + (d-1)/2,
//   1/qt + d/rt = 2 + d/2 - s.

enum class PairKind { Admissible, Dual };

struct PairCheck {
  const char* name;  // "q_bounds", "r_bounds", "dispersion", "scaling"
  bool pass;
};

struct AdmissiblePair {
  Rat q, r;
  int d = 2;
  Rat s;
  PairKind kind = PairKind::Admissible;
  std::vector<PairCheck> checks;

  bool ok() const;
  std::vector<std::string> violations() const;
};

// Violations are recorded in `checks`, never thrown.
AdmissiblePair check_admissible(Rat q, Rat r, int d, Rat s, PairKind kind);

// Endpoint exclusion from the dispersive-estimate hypotheses:
// (2/q, (d-1)(1/2 - 1/r)) != (1,1) for the forward pair and
// (2/qt, (d-1)(1/rt - 1/2)) != (1,1) for the dual pair.
bool endpoint_excluded(Rat q, Rat r, int d, PairKind kind);

struct PairFamily {
  AdmissiblePair admissible;
  AdmissiblePair dual;
  bool q_ratio = false;  // q >  2*qt
  bool r_ratio = false;  // r >= 2*rt

  bool ok() const;
};

// The explicit family
//   q  = (d+1)/(s(d-1))      r  = 2(d+1)/(d+1-4s)
//   qt = (d+1)/(2+s(d-1))    rt = 2(d+1)/(5+d-4s)
// with every admissibility and ratio condition evaluated. All checks pass
// for 2 <= d <= 4 and s in (1/4, 1/2]; other inputs are allowed and simply
// report their failures.
PairFamily construct_pairs(int d, Rat s);

struct ScanRow {
  int d = 0;
  Rat s;
  Rat r_max;   // largest admissible r:   2(d+1)/(d+1-4s)
  Rat rt_min;  // smallest dual rt:       2(d+1)/(5+d-4s)
  Rat ratio;   // r_max / rt_min
  bool feasible_scaling = false;  // 4s >= d-3, necessary for r >= 2*rt
  bool q_ratio = false;
  bool r_ratio = false;
  bool all_ok = false;  // construct_pairs family fully admissible + ratios
};

// Sweeps the extreme pairs over dimensions and orders; shows where the
// quadratic fixed-point argument stops being available (ratio < 2, or the
// d=5 equality case where q = 2*qt exactly).
std::vector<ScanRow> optimality_scan(const std::vector<int>& dims,
                                     const std::vector<Rat>& s_values);

}  // namespace fwave
