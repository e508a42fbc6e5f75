#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fwave/error.hpp"
#include "fwave/field.hpp"
#include "fwave/renorm.hpp"

using namespace fwave;

namespace {

Hurst H(std::initializer_list<double> hs) {
  return make_hurst(std::vector<double>(hs));
}

struct MeanSe {
  double mean = 0.0, se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  v /= n - 1.0;
  return {m, std::sqrt(v / n)};
}

}  // namespace

TEST_CASE("sigma quadrature basics and validation") {
  const Hurst h = H({0.4, 0.4});
  CHECK(sigma_quadrature(h, 3, 0.0, 1e-8) == 0.0);
  CHECK(sigma_quadrature(h, 3, 0.7, 1e-7) > 0.0);
  CHECK_THROWS_WITH_AS(sigma_quadrature(h, 3, 0.7, 0.0),
                       doctest::Contains("InvalidTolerance"), Error);
  CHECK_THROWS_WITH_AS(sigma_quadrature(h, 3, -1.0, 1e-7),
                       doctest::Contains("InvalidWindow"), Error);
  CHECK_THROWS_WITH_AS(sigma_quadrature(h, -2, 0.7, 1e-7),
                       doctest::Contains("InvalidWindow"), Error);
}

TEST_CASE("sigma quadrature is the refinement limit of the cell sum") {
  // d=1: the kept-cell union equals the smooth truncation domain, so the
  // only gap is the midpoint rule within cells
  {
    const Hurst h = H({0.35, 0.55});
    const double t = 0.8;
    const double sq = sigma_quadrature(h, 4, t, 1e-8);
    const double smc2 = second_moment_cells(Lattice(h, 4, 2), t);
    const double smc4 = second_moment_cells(Lattice(h, 4, 4), t);
    CHECK(std::abs(smc4 - sq) / sq < 0.02);
    // refinement moves the cell sum toward the integral
    CHECK(std::abs(smc4 - sq) < std::abs(smc2 - sq));
  }
  // d=2: the jagged ball boundary adds a small domain mismatch
  {
    const Hurst h = H({0.8, 0.7, 0.75});
    const double t = 0.7;
    const double sq = sigma_quadrature(h, 2, t, 1e-8);
    const double smc = second_moment_cells(Lattice(h, 2, 2), t);
    CHECK(std::abs(smc - sq) / sq < 0.08);
  }
}

TEST_CASE("monte carlo variance tracks sigma over a (t,n) grid") {
  const Hurst h = H({0.5, 0.5});
  const int cpo = 2, R = 2000;
  for (int n : {3, 4}) {
    const Lattice lat(h, n, cpo);
    for (double t : {0.5, 1.0}) {
      const PointSampler ps(lat, {t}, {{0.3, 0, 0, 0}}, FieldKind::LinearPsi);
      std::vector<double> sq(R);
#pragma omp parallel for schedule(static)
      for (int r = 0; r < R; ++r) {
        const double v = ps.sample({5150, static_cast<std::uint64_t>(r)})[0];
        sq[r] = v * v;
      }
      const MeanSe ms = mean_se(sq);
      const double sig = sigma_quadrature(h, n, t, 1e-7);
      CHECK(std::abs(ms.mean - sig) < 3.0 * ms.se);
    }
  }
  // one d=2 point of the same consistency check
  {
    const Hurst h2 = H({0.8, 0.7, 0.75});
    const Lattice lat(h2, 2, 2);
    const double t = 0.7;
    const PointSampler ps(lat, {t}, {{0.3, -0.2, 0, 0}}, FieldKind::LinearPsi);
    const int R2 = 1200;
    std::vector<double> sq(R2);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < R2; ++r) {
      const double v = ps.sample({6001, static_cast<std::uint64_t>(r)})[0];
      sq[r] = v * v;
    }
    const MeanSe ms = mean_se(sq);
    const double sig = sigma_quadrature(h2, 2, t, 1e-7);
    CHECK(std::abs(ms.mean - sig) < 3.0 * ms.se);
  }
}

TEST_CASE("sampler fourth moment is gaussian") {
  const Hurst h = H({0.4, 0.4});
  const Lattice lat(h, 4, 2);
  const double t = 0.8;
  const PointSampler ps(lat, {t}, {{0.3, 0, 0, 0}}, FieldKind::LinearPsi);
  const double sig = second_moment_cells(lat, t);

  const int R = 10000;
  std::vector<double> p4(R);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < R; ++r) {
    const double v = ps.sample({777, static_cast<std::uint64_t>(r)})[0];
    p4[r] = v * v * v * v;
  }
  const MeanSe ms = mean_se(p4);
  CHECK(std::abs(ms.mean / (3.0 * sig * sig) - 1.0) < 0.05);
}

TEST_CASE("sigma divergence rates by regime") {
  const std::vector<int> ns{2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<double> ts{0.5, 0.75, 1.0};

  // subcritical: kappa = 2(d - 1/2 - sum H) = 0.6
  {
    const SigmaCurve c = sigma_curve(H({0.4, 0.4, 0.4}), ns, ts, 1e-6);
    for (std::size_t j = 0; j + 1 < ns.size(); ++j) {
      for (std::size_t it = 0; it < ts.size(); ++it) {
        CHECK(c.at(j + 1, it) >= c.at(j, it));  // monotone in n
      }
    }
    const SigmaFit fit = sigma_asymptotic_fit(c);
    CHECK(fit.regime == SigmaRegime::Geometric);
    CHECK(std::abs(fit.fitted_rate - 0.6) < 0.1);
    CHECK(fit.fitted_c > 0.0);
  }

  // border: sum H = d - 1/2, linear in n, amplitude linear in t
  {
    const SigmaCurve c = sigma_curve(H({0.5, 0.5, 0.5}), ns, ts, 1e-6);
    const SigmaFit fit = sigma_asymptotic_fit(c);
    CHECK(fit.regime == SigmaRegime::Linear);
    CHECK(std::abs(fit.fitted_rate) < 0.05);
    CHECK(fit.linear_in_t_residual < 0.05);
    // successive differences settle to a constant within 10 percent
    for (std::size_t it = 0; it < ts.size(); ++it) {
      std::vector<double> diffs;
      for (std::size_t j = 0; j + 1 < ns.size(); ++j) {
        diffs.push_back(c.at(j + 1, it) - c.at(j, it));
      }
      const double last = diffs.back();
      for (std::size_t j = diffs.size() - 4; j < diffs.size(); ++j) {
        CHECK(std::abs(diffs[j] - last) / last < 0.10);
      }
    }
  }

  // supercritical sum: sigma_n converges, increments die out
  {
    const SigmaCurve c = sigma_curve(H({0.8, 0.8}), {2, 3, 4, 5, 6, 7}, ts, 1e-7);
    const SigmaFit fit = sigma_asymptotic_fit(c);
    CHECK(fit.regime == SigmaRegime::Convergent);
    CHECK(fit.fitted_rate < -0.2);
  }
}

TEST_CASE("asymptotic fit recovers a synthetic law") {
  SigmaCurve c;
  c.hurst = H({0.4, 0.4, 0.4});
  c.n_values = {2, 3, 4, 5, 6, 7, 8, 9};
  c.t_values = {0.25, 0.5, 1.0};
  for (int n : c.n_values) {
    for (double t : c.t_values) {
      // +-1 percent deterministic ripple
      const double ripple = 0.01 * std::sin(3.7 * n + 11.0 * t);
      c.sigma.push_back(3.0 * t * std::exp2(0.6 * n) * (1.0 + ripple));
    }
  }
  const SigmaFit fit = sigma_asymptotic_fit(c);
  CHECK(fit.regime == SigmaRegime::Geometric);
  CHECK(std::abs(fit.fitted_rate - 0.6) < 0.02);
  CHECK(std::abs(fit.fitted_c - 3.0) / 3.0 < 0.05);
  CHECK(fit.linear_in_t_residual < 0.05);

  SigmaCurve tiny = c;
  tiny.n_values = {2, 3, 4};
  tiny.sigma.resize(9);
  CHECK_THROWS_WITH_AS(sigma_asymptotic_fit(tiny),
                       doctest::Contains("InsufficientData"), Error);
  SigmaCurve skew = c;
  skew.n_values = {2, 3, 5, 6, 7, 8, 9, 11};
  CHECK_THROWS_WITH_AS(sigma_asymptotic_fit(skew),
                       doctest::Contains("InsufficientData"), Error);
}

TEST_CASE("wick square field operation") {
  const Hurst h = H({0.4, 0.4});
  const Lattice lat(h, 3, 2);
  const Grid g(1, 32, M_PI);
  const std::vector<double> times{0.0, 0.5, 1.0};
  const Field psi = sample_field_grid(lat, g, times, {9, 2}, FieldKind::LinearPsi);

  std::vector<double> sig(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    sig[i] = sigma_quadrature(h, 3, times[i], 1e-7);
  }
  const Field w = wick_square(psi, 3, sig);
  CHECK(w.kind == FieldKind::WickPsi2);
  for (std::size_t i = 0; i < w.slice_size(); ++i) {
    CHECK(w.slice(0)[i] == 0.0);  // t=0: psi=0 and sigma=0
    CHECK(w.slice(2)[i] ==
          doctest::Approx(psi.slice(2)[i] * psi.slice(2)[i] - sig[2]).epsilon(1e-12));
  }

  CHECK_THROWS_WITH_AS(wick_square(psi, 4, sig),
                       doctest::Contains("LevelMismatch"), Error);
  CHECK_THROWS_WITH_AS(wick_square(psi, 3, {0.0, 1.0}),
                       doctest::Contains("TimeGridMismatch"), Error);
  CHECK_THROWS_WITH_AS(wick_square(w, 3, sig),
                       doctest::Contains("KindMismatch"), Error);
}

TEST_CASE("wick square has zero monte carlo mean") {
  const Hurst h = H({0.4, 0.4});
  const int n = 5, cpo = 4;
  const Lattice lat(h, n, cpo);
  const double t = 0.9, x = 0.4;
  const PointSampler ps(lat, {t}, {{x, 0, 0, 0}}, FieldKind::LinearPsi);
  const double sig = sigma_quadrature(h, n, t, 1e-8);

  const int R = 5000;
  std::vector<double> w(R);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < R; ++r) {
    const double v = ps.sample({2718, static_cast<std::uint64_t>(r)})[0];
    w[r] = v * v - sig;
  }
  const MeanSe ms = mean_se(w);
  CHECK(std::abs(ms.mean) < 3.0 * ms.se);
}

TEST_CASE("wick covariance identity") {
  const Hurst h = H({0.35, 0.45});

  // same level, same point: LHS estimates Var[psi^2] = 2 sigma^2
  {
    std::vector<WickCheckPoint> pts{{0.8, 0.8, {0.3, 0, 0, 0}, {0.3, 0, 0, 0}}};
    const WickReport rep = wick_covariance_check(h, 4, 4, 2, pts, 5000, 424242);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].pass);
    const double sig = sigma_quadrature(h, 4, 0.8, 1e-7);
    CHECK(std::abs(rep.rows[0].lhs - 2.0 * sig * sig) <
          3.0 * std::hypot(rep.rows[0].lhs_se, 0.0) + 0.04 * sig * sig);
  }

  // s = 0: both sides vanish
  {
    std::vector<WickCheckPoint> pts{{0.9, 0.0, {0.2, 0, 0, 0}, {0.5, 0, 0, 0}}};
    const WickReport rep = wick_covariance_check(h, 3, 5, 2, pts, 2000, 11);
    CHECK(rep.rows[0].rhs == 0.0);
    CHECK(rep.rows[0].pass);
  }

  // mixed levels, random-ish points
  {
    std::vector<WickCheckPoint> pts{
        {1.0, 0.6, {0.25, 0, 0, 0}, {-0.4, 0, 0, 0}},
        {0.7, 0.7, {0.8, 0, 0, 0}, {0.8, 0, 0, 0}},
        {1.2, 0.3, {-0.1, 0, 0, 0}, {0.55, 0, 0, 0}},
    };
    const WickReport rep = wick_covariance_check(h, 3, 5, 2, pts, 5000, 987);
    CHECK(rep.all_pass);
  }
}

TEST_CASE("sigma is nondecreasing in t") {
  const Hurst h = H({0.45, 0.45});
  double prev = 0.0;
  for (double t : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double s = sigma_quadrature(h, 4, t, 1e-7);
    CHECK(s >= prev);
    prev = s;
  }
}
