#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fwave/field.hpp"
#include "fwave/hurst.hpp"
#include "fwave/lattice.hpp"

namespace fwave {

// sigma_n(t) = E[Psi_n(t,.)^2] as the continuum integral over the
// truncation domain, reduced radially in eta:
//
//   sigma_n(t) = A_sp int_0^{2^n} dr r^{2d-1-2*sum Hsp}
//                     * 2 int_0^{2^n} dxi xi^{1-2H0} |gamma_t(xi,r)|^2
//
// with the exact angular mass A_sp = 2 prod_i Gamma((p_i+1)/2) /
// Gamma(sum_i (p_i+1)/2), p_i = 1-2H_i, so the value is the sampler's
// continuum target and Monte Carlo variances match it with no free scale.
// Relative error below tol or ToleranceNotReached.
double sigma_quadrature(const Hurst& hurst, int n_level, double t, double tol);

// Exact second moment of the sampled (discrete) field at time t:
// sum over cells of 2 w_C |gamma_t(center)|^2. This is what Monte Carlo
// variance estimates converge to; it approaches sigma_quadrature as
// cells_per_octave grows.
double second_moment_cells(const Lattice& lat, double t);

struct SigmaCurve {
  Hurst hurst;
  std::vector<int> n_values;
  std::vector<double> t_values;
  std::vector<double> sigma;  // row-major [n][t]
  double quadrature_tol = 0.0;

  double at(std::size_t i_n, std::size_t i_t) const {
    return sigma[i_n * t_values.size() + i_t];
  }
};

SigmaCurve sigma_curve(const Hurst& hurst, const std::vector<int>& n_values,
                       const std::vector<double>& t_values, double tol);

enum class SigmaRegime { Geometric, Linear, Convergent };

const char* sigma_regime_name(SigmaRegime r);

struct SigmaFit {
  SigmaRegime regime = SigmaRegime::Convergent;
  // slope of log2(sigma_{n+1}-sigma_n) vs n; equals the divergence
  // exponent kappa = 2(d - 1/2 - sum H) when that is >= 0
  double fitted_rate = 0.0;
  double fitted_c = 0.0;               // leading constant of c * t * growth(n)
  double linear_in_t_residual = 0.0;   // max_t |a_t - c t| / (c t)
};

// Fits the divergence law from successive differences, which removes the
// O(1) offset of the asymptotics. Needs >= 4 levels and >= 3 times.
SigmaFit sigma_asymptotic_fit(const SigmaCurve& curve);

// Pointwise Wick square psi^2 - sigma(t). sigma_at_times aligns with
// psi.times and was computed at sigma_n_level.
Field wick_square(const Field& psi, int sigma_n_level,
                  const std::vector<double>& sigma_at_times);

struct WickCheckPoint {
  double t = 0.0, s = 0.0;
  std::array<double, 4> y{}, ytil{};
};

struct WickCheckRow {
  double lhs = 0.0;      // MC mean of wick2_m(t,y) * wick2_n(s,ytil)
  double lhs_se = 0.0;
  double rhs = 0.0;      // 2 * (MC cross moment)^2
  double rhs_se = 0.0;   // delta-method
  bool pass = false;
};

struct WickReport {
  std::vector<WickCheckRow> rows;
  bool all_pass = true;
};

// Monte Carlo check of E[wick2_m(t,y) wick2_n(s,ytil)] =
// 2 E[Psi_m(t,y) Psi_n(s,ytil)]^2 under coherently nested draws.
WickReport wick_covariance_check(const Hurst& hurst, int n_level, int m_level,
                                 int cells_per_octave,
                                 const std::vector<WickCheckPoint>& points,
                                 int realizations, std::uint64_t seed);

}  // namespace fwave
