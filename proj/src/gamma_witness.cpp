#include <algorithm>
#include <cmath>

#include "fwave/error.hpp"
#include "fwave/gamma.hpp"
#include "fwave/quadrature.hpp"
#include "fwave/rng.hpp"

namespace fwave {
namespace {

struct Draw {
  double s, t, xi, r;
};

// log-uniform over [lo, hi]
double log_uniform(CounterRng& rng, double lo, double hi) {
  return lo * std::exp(rng.next_u01() * std::log(hi / lo));
}

std::vector<Draw> make_draws(int n, std::uint64_t seed) {
  std::vector<Draw> d(n);
  CounterRng rng(splitmix64(seed ^ 0x77bdcdb1ull));
  for (auto& x : d) {
    double a = 2.0 * rng.next_u01();
    double b = 2.0 * rng.next_u01();
    x.s = std::min(a, b);
    x.t = std::max(a, b);
    x.xi = 200.0 * (rng.next_u01() - 0.5);
    x.r = log_uniform(rng, 1e-2, 1e2);
  }
  return d;
}

WitnessReport assemble(const std::vector<WitnessSample>& all, int n_base) {
  WitnessReport rep;
  rep.samples.assign(all.begin(), all.begin() + n_base);
  for (int i = 0; i < n_base; ++i) rep.fitted_c = std::max(rep.fitted_c, all[i].ratio);
  rep.fitted_c_refined = rep.fitted_c;
  for (const auto& s : all) rep.fitted_c_refined = std::max(rep.fitted_c_refined, s.ratio);
  rep.stable = rep.fitted_c > 0.0 && rep.fitted_c_refined <= 10.0 * rep.fitted_c;
  return rep;
}

}  // namespace

double gamma_pointwise_bound(double s, double t, double xi, double r,
                             double kappa, double lambda) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) fail_domain("InvalidWindow: kappa must lie in [0,1]");
  if (!(lambda > 0.0 && lambda <= 1.0)) fail_domain("InvalidWindow: lambda must lie in (0,1]");
  const double axi = std::abs(xi);
  const double t1 = 1.0 + std::pow(axi, kappa);
  const double t2 = 1.0 / axi + 1.0 / std::pow(axi, 1.0 - kappa);  // inf at xi=0
  const double gap = std::abs(axi - r);
  const double t3 =
      (std::pow(r, kappa) + std::pow(axi, kappa)) /
      (r * std::pow(gap, 1.0 - lambda * (1.0 - kappa)));  // inf on the ridge
  return std::pow(std::abs(t - s), kappa) * std::min({t1, t2, t3});
}

WitnessReport gamma_pointwise_witness(int n_samples, double kappa,
                                      double lambda, std::uint64_t seed) {
  if (n_samples < 1) fail_domain("InvalidWindow: need at least one sample");
  const auto draws = make_draws(2 * n_samples, seed);
  std::vector<WitnessSample> all(draws.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const Draw& d = draws[i];
    WitnessSample w{d.s, d.t, d.xi, d.r, 0.0, 0.0, 0.0};
    w.lhs = std::abs(gamma_increment(d.s, d.t, d.xi, d.r));
    w.rhs = gamma_pointwise_bound(d.s, d.t, d.xi, d.r, kappa, lambda);
    w.ratio = (w.rhs > 0.0 && std::isfinite(w.rhs)) ? w.lhs / w.rhs : 0.0;
    all[i] = w;
  }
  return assemble(all, n_samples);
}

double gamma_integrated_lhs(double s, double t, double r, double hurst_h,
                            double tol) {
  if (!(hurst_h > 0.0 && hurst_h < 1.0)) fail_domain("InvalidHurst: H must lie in (0,1)");
  if (!(tol > 0.0)) fail_domain("InvalidTolerance: tol must be > 0");
  auto g = [&](double xi) {
    const double a = std::abs(gamma_increment(s, t, xi, r));
    return a * a;
  };
  const double p = 1.0 - 2.0 * hurst_h;
  double total = 2.0 * integrate_power(g, 0.0, 1.0, p, tol * 0.1, tol * 0.1).value;
  auto weighted = [&](double xi) { return std::pow(xi, p) * g(xi); };
  double lo = 1.0;
  double hi = std::max({2.0 * r, 16.0, 8.0 / std::max(t - s, 0.125)});
  for (int block = 0; block < 24; ++block) {
    const QuadResult q =
        integrate(weighted, lo, hi, tol * 0.05 * std::max(total, 1e-300),
                  tol * 0.05, 400000, {r});
    total += 2.0 * q.value;
    if (2.0 * std::abs(q.value) < 0.25 * tol * std::abs(total) && block > 0) {
      return total;
    }
    lo = hi;
    hi *= 2.0;
  }
  fail_numerical("QuadratureNonConvergence: integrated gamma bound tail");
}

double gamma_integrated_bound(double s, double t, double r, double hurst_h,
                              double eps, double kappa) {
  if (!(eps > 0.0 && eps < 1.0)) fail_domain("InvalidWindow: eps must lie in (0,1)");
  if (!(kappa >= 0.0 && kappa < std::min(hurst_h, 0.5 * (1.0 - eps)))) {
    fail_domain("InvalidWindow: need 0 <= kappa < min(H, (1-eps)/2)");
  }
  const double decay = std::pow(r, -2.0 - 2.0 * (hurst_h - kappa)) +
                       std::pow(r, -1.0 - 2.0 * hurst_h + eps);
  return std::pow(std::abs(t - s), 2.0 * kappa) * std::min(1.0, decay);
}

WitnessReport gamma_integrated_witness(int n_samples, double hurst_h,
                                       double eps, double kappa,
                                       std::uint64_t seed) {
  if (n_samples < 1) fail_domain("InvalidWindow: need at least one sample");
  const auto draws = make_draws(2 * n_samples, seed ^ 0x51ed2701ull);
  std::vector<WitnessSample> all(draws.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const Draw& d = draws[i];
    WitnessSample w{d.s, d.t, 0.0, d.r, 0.0, 0.0, 0.0};
    w.lhs = gamma_integrated_lhs(d.s, d.t, d.r, hurst_h, 1e-6);
    w.rhs = gamma_integrated_bound(d.s, d.t, d.r, hurst_h, eps, kappa);
    w.ratio = w.rhs > 0.0 ? w.lhs / w.rhs : 0.0;
    all[i] = w;
  }
  return assemble(all, n_samples);
}

double gamma_integrated_decay_exponent(double s, double t, double hurst_h) {
  // least-squares slope of log2 LHS against log2 r over r = 2^0 .. 2^8
  const int n = 9;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int j = 0; j < n; ++j) {
    const double r = std::exp2(j);
    const double lhs = gamma_integrated_lhs(s, t, r, hurst_h, 1e-7);
    const double x = j;
    const double y = std::log2(lhs);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

}  // namespace fwave
