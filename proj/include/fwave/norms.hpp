#pragma once

#include <cstdint>
#include <vector>

#include "fwave/field.hpp"
#include "fwave/grid.hpp"
#include "fwave/rational.hpp"

namespace fwave {

enum class TimeNorm { LInf, LQ };

struct NormSpec {
  double sobolev_order = 0.0;
  double integrability = 2.0;  // spatial p in [1, inf]
  // one flag per grid point; empty means the whole torus
  std::vector<std::uint8_t> mask;
  TimeNorm time_norm = TimeNorm::LInf;
  double time_q = 1.0;  // exponent when time_norm == LQ
};

// W^{s,p} norm of one spatial slice: Bessel multiplier (1+|k|^2)^{s/2}
// applied in the spectrum, then restriction to the masked domain, then the
// cell-volume-weighted discrete L^p norm (plain max over the mask for
// p = inf). Negative-order norms on a domain are computed in exactly this
// order: multiplier globally first, restriction second.
double sobolev_norm(const Grid& g, const double* slice, double s, double p,
                    const std::vector<std::uint8_t>& mask = {});

// Composes sobolev_norm per time slice with the requested time norm;
// TimeNorm::LQ uses trapezoid weights on the field's own time grid.
double bochner_norm(const Field& f, const NormSpec& spec);

// Solution-space norm: max of L^inf([0,T]; W^{s,2}) and L^q([0,T]; L^r).
// The field's time grid must end at T. With strict=true the pair (q,r)
// must be (d,s)-admissible, checked in exact rational arithmetic.
double x_s_norm(const Field& f, Rat s, Rat q, Rat r, double T,
                bool strict = false);

}  // namespace fwave
