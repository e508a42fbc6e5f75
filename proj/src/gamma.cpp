#include "fwave/gamma.hpp"

#include <cmath>

#include "fwave/error.hpp"
#include "fwave/quadrature.hpp"

namespace fwave {
namespace {

constexpr double kPhaseWindow = 1e-2;   // series when |t(xi -+ r)| below this
constexpr double kSmallRadius = 5e-3;   // moment series when r t below this
constexpr cplx kI{0.0, 1.0};

// (e^{i t d} - 1)/d = i t E(i t d), E(w) = sum_{j=0..5} w^j/(j+1)!
cplx quotient_series(double t, double d) {
  const cplx w = kI * (t * d);
  cplx e{1.0, 0.0};
  cplx wp{1.0, 0.0};
  constexpr double inv_fact[6] = {1.0,        1.0 / 2.0,  1.0 / 6.0,
                                  1.0 / 24.0, 1.0 / 120., 1.0 / 720.0};
  for (int j = 1; j < 6; ++j) {
    wp *= w;
    e += wp * inv_fact[j];
  }
  return kI * t * e;
}

// moments M_k = int_0^t s^k e^{-i xi s} ds for k = 1,3,5,7
void odd_moments(double t, double xi, cplx out[4]) {
  cplx m[8];
  if (std::abs(xi) * t < 0.5) {
    // series in (-i xi): M_k = sum_j (-i xi)^j t^{k+j+1} / (j! (k+j+1))
    for (int k = 0; k < 8; ++k) {
      cplx acc{0.0, 0.0};
      cplx coef{1.0, 0.0};  // (-i xi)^j / j!
      double tp = std::pow(t, k + 1);
      for (int j = 0; j < 40; ++j) {
        const cplx term = coef * (tp / (k + j + 1));
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc) && j > 2) break;
        coef *= -kI * xi / static_cast<double>(j + 1);
        tp *= t;
      }
      m[k] = acc;
    }
  } else {
    const cplx ixi = kI * xi;
    const cplx et = std::exp(-ixi * t);
    m[0] = (1.0 - et) / ixi;
    double tp = 1.0;
    for (int k = 1; k < 8; ++k) {
      tp *= t;
      m[k] = (static_cast<double>(k) * m[k - 1] - tp * et) / ixi;
    }
  }
  out[0] = m[1];
  out[1] = m[3];
  out[2] = m[5];
  out[3] = m[7];
}

GammaEval gamma_core(double t, double xi, double r, bool small_radius,
                     bool series1, bool series2) {
  if (t == 0.0) return {cplx{0.0, 0.0}, GammaBranch::ClosedForm};
  if (small_radius) {
    // gamma = e^{i xi t} sum_j (-1)^j r^{2j} M_{2j+1} / (2j+1)!
    cplx m[4];
    odd_moments(t, xi, m);
    const double r2 = r * r;
    cplx acc = m[0];
    acc -= m[1] * (r2 / 6.0);
    acc += m[2] * (r2 * r2 / 120.0);
    acc -= m[3] * (r2 * r2 * r2 / 5040.0);
    return {std::exp(kI * (xi * t)) * acc, GammaBranch::SmallRadiusSeries};
  }
  const double d1 = xi - r;
  const double d2 = xi + r;
  const cplx eixit = std::exp(kI * (xi * t));
  cplx q1, q2;
  if (series1) {
    q1 = -std::exp(kI * (r * t)) * quotient_series(t, d1);
  } else {
    q1 = (std::exp(kI * (r * t)) - eixit) / d1;
  }
  if (series2) {
    q2 = -std::exp(-kI * (r * t)) * quotient_series(t, d2);
  } else {
    q2 = (std::exp(-kI * (r * t)) - eixit) / d2;
  }
  const GammaBranch b = (series1 || series2) ? GammaBranch::SeriesNearResonance
                                             : GammaBranch::ClosedForm;
  return {(q1 - q2) / (2.0 * r), b};
}

void check_args(double t, double r) {
  if (!(r > 0.0)) fail_domain("InvalidWindow: gamma needs r > 0");
  if (!(t >= 0.0)) fail_domain("InvalidWindow: gamma needs t >= 0");
}

}  // namespace

GammaEval gamma_eval(double t, double xi, double r) {
  check_args(t, r);
  const bool small = r * t < kSmallRadius;
  const bool s1 = std::abs(t * (xi - r)) < kPhaseWindow;
  const bool s2 = std::abs(t * (xi + r)) < kPhaseWindow;
  return gamma_core(t, xi, r, small, s1, s2);
}

cplx gamma_closed(double t, double xi, double r) {
  return gamma_eval(t, xi, r).value;
}

cplx gamma_increment(double s, double t, double xi, double r) {
  check_args(t, r);
  if (!(s >= 0.0 && s <= t)) fail_domain("InvalidWindow: need 0 <= s <= t");
  const bool small = r * t < kSmallRadius;
  const bool s1 = std::abs(t * (xi - r)) < kPhaseWindow;
  const bool s2 = std::abs(t * (xi + r)) < kPhaseWindow;
  const GammaEval gt = gamma_core(t, xi, r, small, s1, s2);
  const GammaEval gs = gamma_core(s, xi, r, small, s1, s2);
  return gt.value - gs.value;
}

cplx gamma_quadrature_oracle(double t, double xi, double r, double tol) {
  check_args(t, r);
  if (!(tol > 0.0)) fail_domain("InvalidTolerance: oracle tol must be > 0");
  if (t == 0.0) return {0.0, 0.0};
  auto f = [xi, r](double s) -> cplx {
    return std::exp(cplx{0.0, -xi * s}) * (std::sin(s * r) / r);
  };
  CQuadResult q = integrate_complex(f, 0.0, t, tol * 0.1, tol * 0.1, 2000000);
  if (!q.converged) {
    fail_numerical("QuadratureNonConvergence: gamma oracle did not reach tol");
  }
  return std::exp(cplx{0.0, xi * t}) * q.value;
}

}  // namespace fwave
