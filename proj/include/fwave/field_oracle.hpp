#pragma once

#include "fwave/hurst.hpp"
#include "fwave/lattice.hpp"

namespace fwave {

// Deterministic covariance of the sampled field by adaptive quadrature over
// the exact kept-cell union, so Monte Carlo estimates have a bias-free
// target. With D the shell of cells kept at outer_level but not at
// inner_level (inner_level = -1 means no inner truncation, i.e. the plain
// field at outer_level), computes
//
//   E[ (F(t,y) - F(s,y)) * (F(t,yt) - F(s,yt)) ]
//     = 2 sum_{half cells C in D} int_C |xi|^{1-2H0} prod_i |eta_i|^{1-2Hi}
//           |gamma_{s,t}(xi,|eta|)|^2 cos(<eta, y-yt>) dxi deta
//
// where F is the linear field of the shell sampled with shared draws.
// Absolute error target tol; throws ToleranceNotReached when the adaptive
// passes cannot certify it. d <= 2 only (cost of the nested quadrature).
double covariance_oracle(const Hurst& hurst, int inner_level, int outer_level,
                         int cells_per_octave, DomainMode mode, double s,
                         double t, const double* y, const double* ytil,
                         double tol);

}  // namespace fwave
