#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fwave/error.hpp"
#include "fwave/norms.hpp"
#include "fwave/strichartz.hpp"

using namespace fwave;

TEST_CASE("exponent hypotheses, accepted tuples") {
  CHECK_NOTHROW(check_homogeneous_hypotheses(2, Rat(6), Rat(6)));
  CHECK_NOTHROW(check_homogeneous_hypotheses(2, Rat::infinity(), Rat(2)));
  CHECK_NOTHROW(check_homogeneous_hypotheses(3, Rat(4), Rat(4)));

  // admissible/dual pair at the same s couples with s1 = s2 = 0
  CHECK_NOTHROW(check_inhomogeneous_hypotheses(2, Rat(0), Rat(0), Rat(6),
                                               Rat(6), Rat(6, 5), Rat(6, 5)));
  // the energy pair (inf, 2) carries the full order s1 = s
  CHECK_NOTHROW(check_inhomogeneous_hypotheses(2, Rat(1, 2), Rat(0),
                                               Rat::infinity(), Rat(2),
                                               Rat(6, 5), Rat(6, 5)));
}

TEST_CASE("exponent hypotheses, rejected tuples") {
  CHECK_THROWS_WITH_AS(check_homogeneous_hypotheses(1, Rat(6), Rat(6)),
                       doctest::Contains("d >= 2"), Error);
  CHECK_THROWS_WITH_AS(check_homogeneous_hypotheses(2, Rat(1), Rat(6)),
                       doctest::Contains("q must lie"), Error);
  CHECK_THROWS_WITH_AS(
      check_homogeneous_hypotheses(2, Rat(6), Rat::infinity()),
      doctest::Contains("r must lie"), Error);
  CHECK_THROWS_WITH_AS(check_homogeneous_hypotheses(2, Rat(4), Rat(2)),
                       doctest::Contains("dispersion bound"), Error);
  // d=4, (q,r)=(2,6) satisfies the dispersion bound with equality but sits
  // exactly on the excluded corner (2/q, (d-1)(1/2-1/r)) = (1,1)
  CHECK_THROWS_WITH_AS(check_homogeneous_hypotheses(4, Rat(2), Rat(6)),
                       doctest::Contains("endpoint"), Error);

  CHECK_THROWS_WITH_AS(
      check_inhomogeneous_hypotheses(2, Rat(1, 2), Rat(0), Rat(6), Rat(6),
                                     Rat(6, 5), Rat(6, 5)),
      doctest::Contains("scaling relation"), Error);
  CHECK_THROWS_WITH_AS(
      check_inhomogeneous_hypotheses(2, Rat(0), Rat(0), Rat(6), Rat(6),
                                     Rat(3), Rat(6, 5)),
      doctest::Contains("qt must lie"), Error);
  CHECK_THROWS_WITH_AS(
      check_inhomogeneous_hypotheses(2, Rat(0), Rat(0), Rat(6), Rat(6),
                                     Rat(6, 5), Rat(1)),
      doctest::Contains("rt must lie"), Error);
  CHECK_THROWS_WITH_AS(
      check_inhomogeneous_hypotheses(2, Rat(0), Rat(0), Rat(6), Rat(6),
                                     Rat(2), Rat(2)),
      doctest::Contains("dual dispersion"), Error);
  // d=4, (qt,rt)=(2,6/5) passes the dual dispersion bound with equality but
  // hits the dual excluded corner; s1 = 1/6 closes the scaling relation
  CHECK_THROWS_WITH_AS(
      check_inhomogeneous_hypotheses(4, Rat(1, 6), Rat(0), Rat::infinity(),
                                     Rat(2), Rat(2), Rat(6, 5)),
      doctest::Contains("endpoint"), Error);
}

TEST_CASE("data-side order of the free estimate") {
  CHECK(strichartz_mu(2, Rat(1, 2), Rat(6), Rat(6)) == doctest::Approx(1.0));
  // the energy pair keeps the data order: mu = s
  CHECK(strichartz_mu(2, Rat(1, 2), Rat::infinity(), Rat(2)) ==
        doctest::Approx(0.5));
  CHECK(strichartz_mu(3, Rat(1, 2), Rat(4), Rat(4)) == doctest::Approx(1.0));
}

TEST_CASE("band-limited trial data") {
  const Grid coarse(2, 16, 1.0);
  const Grid fine(2, 32, 1.0);
  const int band = 3;

  // the same (seed, trial) names the same trig polynomial at any resolution
  {
    const std::vector<double> a = random_band_field(coarse, band, 11, 4, 0);
    const std::vector<double> b = random_band_field(fine, band, 11, 4, 0);
    for (int j0 = 0; j0 < coarse.m; ++j0) {
      for (int j1 = 0; j1 < coarse.m; ++j1) {
        const double va = a[j0 * coarse.m + j1];
        const double vb = b[(2 * j0) * fine.m + (2 * j1)];
        CHECK(va == doctest::Approx(vb).epsilon(1e-12));
      }
    }
  }

  // deterministic, and distinct across trials and tags
  {
    const std::vector<double> a = random_band_field(coarse, band, 11, 4, 0);
    const std::vector<double> b = random_band_field(coarse, band, 11, 4, 0);
    CHECK(a == b);
    const std::vector<double> c = random_band_field(coarse, band, 11, 5, 0);
    const std::vector<double> d = random_band_field(coarse, band, 11, 4, 1);
    CHECK(a != c);
    CHECK(a != d);
  }

  // spectrum is confined to the band
  {
    const std::vector<double> a = random_band_field(coarse, band, 3, 0, 0);
    std::vector<cplx> spec(coarse.total());
    to_spectrum(coarse, a.data(), spec.data());
    double leak = 0.0, inside = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      int idx[2];
      coarse.unravel(i, idx);
      const bool in = std::abs(coarse.kindex(idx[0])) <= band &&
                      std::abs(coarse.kindex(idx[1])) <= band;
      (in ? inside : leak) = std::max(in ? inside : leak, std::abs(spec[i]));
    }
    CHECK(inside > 0.0);
    CHECK(leak < 1e-13);
  }

  CHECK_THROWS_WITH_AS(random_band_field(coarse, 8, 1, 0, 0),
                       doctest::Contains("GridAliasing"), Error);

  // sources agree across resolutions too, slice by slice
  {
    const std::vector<double> times = uniform_times(0.5, 4);
    const Field fa = random_band_source(coarse, times, band, 7, 2);
    const Field fb = random_band_source(fine, times, band, 7, 2);
    for (std::size_t it = 0; it < times.size(); ++it) {
      for (int j0 = 0; j0 < coarse.m; ++j0) {
        for (int j1 = 0; j1 < coarse.m; ++j1) {
          const double va = fa.slice(it)[j0 * coarse.m + j1];
          const double vb = fb.slice(it)[(2 * j0) * fine.m + (2 * j1)];
          CHECK(va == doctest::Approx(vb).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("free estimate terms on a single mode") {
  // phi0 = cos(2 x0 + x1), phi1 = 0 on [-pi, pi)^2: the evolution stays on
  // the mode, w = cos(t sqrt5) cos(2 x0 + x1)
  const Grid g(2, 16, M_PI);
  InitialData d;
  d.phi0.resize(g.total());
  d.phi1.assign(g.total(), 0.0);
  std::vector<double> x(2);
  for (std::size_t i = 0; i < g.total(); ++i) {
    g.coords(i, x.data());
    d.phi0[i] = std::cos(2 * x[0] + x[1]);
  }

  const Rat s(1, 2), q(6), r(6);
  const int steps = 48;
  const WitnessTerms t = homogeneous_terms(g, d, s, q, r, 1.0, steps);

  // rhs: mu = 1, so |phi0|_{W^{1,2}} = sqrt(1 + 5) * sqrt(vol/2)
  const double rhs_want = std::sqrt(6.0) * std::sqrt(g.volume() / 2.0);
  CHECK(t.rhs == doctest::Approx(rhs_want).epsilon(1e-12));

  // lhs: compose the same closed-form evolution through the norm module
  {
    const std::vector<double> times = uniform_times(1.0, steps);
    const double k = std::sqrt(5.0);
    Field w(g, times), vel(g, times);
    for (std::size_t it = 0; it < times.size(); ++it) {
      const double ct = std::cos(times[it] * k);
      const double st = -k * std::sin(times[it] * k);
      for (std::size_t i = 0; i < g.total(); ++i) {
        w.slice(it)[i] = ct * d.phi0[i];
        vel.slice(it)[i] = st * d.phi0[i];
      }
    }
    NormSpec ns;
    ns.sobolev_order = 0.5;
    ns.integrability = 6.0;
    ns.time_norm = TimeNorm::LQ;
    ns.time_q = 6.0;
    double lhs_want = bochner_norm(w, ns);
    ns.sobolev_order = -0.5;
    lhs_want += bochner_norm(vel, ns);
    CHECK(t.lhs == doctest::Approx(lhs_want).epsilon(1e-11));
  }

  CHECK(t.lhs / t.rhs > 0.0);
  CHECK(std::isfinite(t.lhs / t.rhs));
}

TEST_CASE("free-evolution witness is stable under refinement") {
  WitnessSpec spec;
  spec.grid = Grid(2, 16, 1.0);
  spec.t_max = 1.0;
  spec.steps = 24;
  spec.trials = 12;
  spec.band = 2;
  spec.seed = 5;

  const FittedConstantReport rep =
      homogeneous_witness(Rat(1, 2), Rat(6), Rat(6), spec);
  CHECK(rep.kept == spec.trials);
  CHECK(rep.skipped == 0);
  CHECK(rep.constant_coarse > 0.0);
  CHECK(rep.pass);
  // trig-polynomial data: both resolutions are already near the continuum
  CHECK(rep.growth > 0.8);
  CHECK(rep.growth < 1.25);
  for (const WitnessRow& row : rep.rows) {
    CHECK(!row.skipped);
    CHECK(row.ratio > 0.0);
    CHECK(std::isfinite(row.ratio));
  }

  // ratios are scale invariant, and zero data is skipped, not fitted
  {
    WitnessSpec scaled = spec;
    scaled.amplitudes.assign(spec.trials, 2.0);
    const FittedConstantReport rep2 =
        homogeneous_witness(Rat(1, 2), Rat(6), Rat(6), scaled);
    CHECK(rep2.constant_coarse ==
          doctest::Approx(rep.constant_coarse).epsilon(1e-12));

    WitnessSpec with_zero = spec;
    with_zero.amplitudes.assign(spec.trials, 1.0);
    with_zero.amplitudes[0] = 0.0;
    const FittedConstantReport rep3 =
        homogeneous_witness(Rat(1, 2), Rat(6), Rat(6), with_zero);
    CHECK(rep3.skipped == 1);
    CHECK(rep3.kept == spec.trials - 1);
    CHECK(rep3.rows[0].skipped);
    CHECK(rep3.rows[0].lhs == 0.0);
    CHECK(rep3.rows[0].rhs == 0.0);
    CHECK(rep3.pass);
  }
}

TEST_CASE("source witness is stable under refinement") {
  WitnessSpec spec;
  spec.grid = Grid(2, 16, 1.0);
  spec.t_max = 1.0;
  spec.steps = 24;
  spec.trials = 10;
  spec.band = 2;
  spec.seed = 9;

  // L^q L^r solution control from the dual-exponent source norm
  {
    const FittedConstantReport rep = inhomogeneous_witness(
        Rat(0), Rat(0), Rat(6), Rat(6), Rat(6, 5), Rat(6, 5), spec);
    CHECK(rep.kept == spec.trials);
    CHECK(rep.constant_coarse > 0.0);
    CHECK(rep.pass);
    CHECK(rep.growth > 0.8);
    CHECK(rep.growth < 1.25);
  }
  // energy pair: sup-in-time W^{1/2,2} control
  {
    const FittedConstantReport rep =
        inhomogeneous_witness(Rat(1, 2), Rat(0), Rat::infinity(), Rat(2),
                              Rat(6, 5), Rat(6, 5), spec);
    CHECK(rep.kept == spec.trials);
    CHECK(rep.pass);
  }

  CHECK_THROWS_WITH_AS(
      inhomogeneous_witness(Rat(1, 2), Rat(0), Rat(6), Rat(6), Rat(6, 5),
                            Rat(6, 5), spec),
      doctest::Contains("HypothesisViolated"), Error);
}

TEST_CASE("witness configuration validation") {
  WitnessSpec spec;
  spec.grid = Grid(2, 16, 1.0);

  {
    WitnessSpec bad = spec;
    bad.trials = 0;
    CHECK_THROWS_WITH_AS(homogeneous_witness(Rat(1, 2), Rat(6), Rat(6), bad),
                         doctest::Contains("InsufficientData"), Error);
  }
  {
    WitnessSpec bad = spec;
    bad.amplitudes = {1.0, 2.0};  // trials stays at the default
    CHECK_THROWS_WITH_AS(homogeneous_witness(Rat(1, 2), Rat(6), Rat(6), bad),
                         doctest::Contains("InsufficientData"), Error);
  }
  {
    WitnessSpec bad = spec;
    bad.steps = 1;
    CHECK_THROWS_WITH_AS(homogeneous_witness(Rat(1, 2), Rat(6), Rat(6), bad),
                         doctest::Contains("InvalidWindow"), Error);
  }
  {
    WitnessSpec bad = spec;
    bad.band = 8;
    CHECK_THROWS_WITH_AS(homogeneous_witness(Rat(1, 2), Rat(6), Rat(6), bad),
                         doctest::Contains("GridAliasing"), Error);
  }
}
