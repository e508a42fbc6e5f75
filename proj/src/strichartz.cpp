#include "fwave/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include "fwave/admiss.hpp"
#include "fwave/error.hpp"
#include "fwave/norms.hpp"
#include "fwave/rng.hpp"

namespace fwave {

namespace {

void need(bool ok, const char* what) {
  if (!ok) fail_domain(std::string("HypothesisViolated: ") + what);
}

}  // namespace

void check_homogeneous_hypotheses(int d, Rat q, Rat r) {
  need(d >= 2, "the dispersive bounds need d >= 2");
  need(q >= Rat(2), "q must lie in [2, inf]");
  need(r >= Rat(2) && !r.is_inf(), "r must lie in [2, inf)");
  need(Rat(2) * q.reciprocal() + Rat(d - 1) * r.reciprocal() <= Rat(d - 1, 2),
       "dispersion bound 2/q + (d-1)/r <= (d-1)/2 fails");
  need(endpoint_excluded(q, r, d, PairKind::Admissible),
       "(2/q, (d-1)(1/2 - 1/r)) = (1,1) endpoint is excluded");
}

void check_inhomogeneous_hypotheses(int d, Rat s1, Rat s2, Rat q, Rat r,
                                    Rat qt, Rat rt) {
  check_homogeneous_hypotheses(d, q, r);
  need(qt >= Rat(1) && qt <= Rat(2), "qt must lie in [1, 2]");
  need(rt > Rat(1) && rt <= Rat(2), "rt must lie in (1, 2]");
  need(Rat(2) * qt.reciprocal() + Rat(d - 1) * rt.reciprocal() >=
           Rat(2) + Rat(d - 1, 2),
       "dual dispersion bound 2/qt + (d-1)/rt >= 2 + (d-1)/2 fails");
  need(endpoint_excluded(qt, rt, d, PairKind::Dual),
       "(2/qt, (d-1)(1/rt - 1/2)) = (1,1) endpoint is excluded");
  const Rat lhs = s1 - (q.reciprocal() + Rat(d) * r.reciprocal());
  const Rat rhs = Rat(2) - s2 - (qt.reciprocal() + Rat(d) * rt.reciprocal());
  need(lhs == rhs,
       "scaling relation s1 - (1/q + d/r) = 2 - s2 - (1/qt + d/rt) fails");
}

double strichartz_mu(int d, Rat s, Rat q, Rat r) {
  return s.value() + 0.5 * d -
         (q.reciprocal().value() + d * r.reciprocal().value());
}

namespace {

void check_band(const Grid& g, int band) {
  if (band < 0) fail_domain("InvalidWindow: frequency band must be >= 0");
  if (band > g.m / 2 - 1) {
    fail_domain("GridAliasing: frequency band exceeds the grid Nyquist");
  }
}

// odometer over n in [-band, band]^d
bool advance(std::vector<int>& n, int band) {
  for (int a = static_cast<int>(n.size()) - 1; a >= 0; --a) {
    if (n[a] < band) {
      ++n[a];
      std::fill(n.begin() + a + 1, n.end(), -band);
      return true;
    }
    n[a] = -band;
  }
  return false;
}

// one of each conjugate pair {n, -n}; the zero mode is canonical
bool is_canonical(const std::vector<int>& n) {
  for (int v : n) {
    if (v > 0) return true;
    if (v < 0) return false;
  }
  return true;
}

std::uint64_t mode_code(const std::vector<int>& n, int band) {
  const std::uint64_t radix = 2ull * band + 1ull;
  std::uint64_t code = 0;
  for (int v : n) code = code * radix + static_cast<std::uint64_t>(v + band);
  return code;
}

std::size_t storage_flat(const Grid& g, const std::vector<int>& n) {
  std::size_t flat = 0;
  for (int v : n) {
    flat = flat * static_cast<std::size_t>(g.m) +
           static_cast<std::size_t>(g.kstorage(v));
  }
  return flat;
}

bool is_zero_mode(const std::vector<int>& n) {
  return std::all_of(n.begin(), n.end(), [](int v) { return v == 0; });
}

std::vector<double> real_part_field(const Grid& g, std::vector<cplx>& spec) {
  from_spectrum(g, spec.data(), spec.data());
  std::vector<double> out(g.total());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spec[i].real();
  return out;
}

}  // namespace

std::vector<double> random_band_field(const Grid& g, int band,
                                      std::uint64_t seed, std::uint64_t trial,
                                      std::uint64_t tag) {
  check_band(g, band);
  const std::uint64_t base = mix_key(mix_key(seed, tag), trial);
  std::vector<cplx> spec(g.total(), cplx{0.0, 0.0});
  std::vector<int> n(g.d, -band);
  do {
    std::vector<int> canon = n;
    const bool flip = !is_canonical(n);
    if (flip) {
      for (int& v : canon) v = -v;
    }
    CounterRng rng(mix_key(base, mode_code(canon, band)));
    cplx c = rng.next_std_complex_gaussian();
    if (is_zero_mode(n)) c = cplx(c.real(), 0.0);
    spec[storage_flat(g, n)] = flip ? std::conj(c) : c;
  } while (advance(n, band));
  return real_part_field(g, spec);
}

InitialData random_band_data(const Grid& g, int band, std::uint64_t seed,
                             std::uint64_t trial) {
  InitialData d;
  d.phi0 = random_band_field(g, band, seed, trial, 0);
  d.phi1 = random_band_field(g, band, seed, trial, 1);
  return d;
}

Field random_band_source(const Grid& g, const std::vector<double>& times,
                         int band, std::uint64_t seed, std::uint64_t trial) {
  check_band(g, band);
  if (times.empty()) fail_domain("InvalidWindow: empty time grid");
  const std::uint64_t base = mix_key(mix_key(seed, 2), trial);

  struct Mode {
    std::size_t flat;
    cplx a, b;
    double omega;
  };
  std::vector<Mode> modes;
  std::vector<int> n(g.d, -band);
  do {
    std::vector<int> canon = n;
    const bool flip = !is_canonical(n);
    if (flip) {
      for (int& v : canon) v = -v;
    }
    CounterRng rng(mix_key(base, mode_code(canon, band)));
    cplx a = rng.next_std_complex_gaussian();
    cplx b = rng.next_std_complex_gaussian();
    const double omega = 3.0 * rng.next_u01();
    if (is_zero_mode(n)) {
      a = cplx(a.real(), 0.0);
      b = cplx(b.real(), 0.0);
    }
    if (flip) {
      a = std::conj(a);
      b = std::conj(b);
    }
    modes.push_back({storage_flat(g, n), a, b, omega});
  } while (advance(n, band));

  Field f(g, times);
  std::vector<cplx> spec(g.total());
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double t = times[it];
    std::fill(spec.begin(), spec.end(), cplx{0.0, 0.0});
    for (const Mode& mo : modes) {
      spec[mo.flat] = mo.a * std::cos(mo.omega * t) +
                      mo.b * std::sin(mo.omega * t);
    }
    from_spectrum(g, spec.data(), spec.data());
    double* s = f.slice(it);
    for (std::size_t i = 0; i < spec.size(); ++i) s[i] = spec[i].real();
  }
  return f;
}

namespace {

// lhs of both estimates: solution in L^q W^{s,r}, velocity one order lower
double solution_side(const Field& w, const Field& vel, double s, Rat q,
                     Rat r) {
  NormSpec ns;
  ns.sobolev_order = s;
  ns.integrability = r.value();
  if (q.is_inf()) {
    ns.time_norm = TimeNorm::LInf;
  } else {
    ns.time_norm = TimeNorm::LQ;
    ns.time_q = q.value();
  }
  const double a = bochner_norm(w, ns);
  ns.sobolev_order = s - 1.0;
  return a + bochner_norm(vel, ns);
}

}  // namespace

WitnessTerms homogeneous_terms(const Grid& g, const InitialData& data, Rat s,
                               Rat q, Rat r, double t_max, int steps) {
  const std::vector<double> times = uniform_times(t_max, steps);
  Field vel;
  const Field w = linear_evolution(g, data, times, &vel);

  WitnessTerms t;
  t.lhs = solution_side(w, vel, s.value(), q, r);
  const double mu = strichartz_mu(g.d, s, q, r);
  t.rhs = sobolev_norm(g, data.phi0.data(), mu, 2.0) +
          sobolev_norm(g, data.phi1.data(), mu - 1.0, 2.0);
  return t;
}

WitnessTerms inhomogeneous_terms(const Field& f, Rat s1, Rat s2, Rat q, Rat r,
                                 Rat qt, Rat rt) {
  Field vel;
  const Field w = duhamel(f, &vel);

  WitnessTerms t;
  t.lhs = solution_side(w, vel, s1.value(), q, r);
  NormSpec src;
  src.sobolev_order = -s2.value();
  src.integrability = rt.value();
  src.time_norm = TimeNorm::LQ;
  src.time_q = qt.value();
  t.rhs = bochner_norm(f, src);
  return t;
}

namespace {

using TrialEval = std::function<WitnessTerms(const Grid& g, int steps,
                                             int trial, double amp)>;

FittedConstantReport run_witness(const WitnessSpec& spec,
                                 const TrialEval& eval) {
  if (spec.trials < 1) {
    fail_domain("InsufficientData: witness needs at least one trial");
  }
  if (!spec.amplitudes.empty() &&
      spec.amplitudes.size() != static_cast<std::size_t>(spec.trials)) {
    fail_domain("InsufficientData: amplitudes must match the trial count");
  }
  if (!(spec.t_max > 0.0) || spec.steps < 2) {
    fail_domain("InvalidWindow: witness needs t_max > 0 and >= 2 steps");
  }
  check_band(spec.grid, spec.band);

  const Grid fine(spec.grid.d, 2 * spec.grid.m, spec.grid.half_width);
  std::vector<WitnessRow> rows(spec.trials), rows_fine(spec.trials);

  auto row_of = [](const WitnessTerms& t) {
    WitnessRow r;
    r.lhs = t.lhs;
    r.rhs = t.rhs;
    if (t.rhs == 0.0) {
      r.skipped = true;
    } else {
      r.ratio = t.lhs / t.rhs;
    }
    return r;
  };

#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < spec.trials; ++k) {
    const double amp = spec.amplitudes.empty() ? 1.0 : spec.amplitudes[k];
    rows[k] = row_of(eval(spec.grid, spec.steps, k, amp));
    rows_fine[k] = row_of(eval(fine, 2 * spec.steps, k, amp));
  }

  FittedConstantReport rep;
  rep.rows = rows;
  for (int k = 0; k < spec.trials; ++k) {
    if (rows[k].skipped || rows_fine[k].skipped) {
      ++rep.skipped;
      continue;
    }
    ++rep.kept;
    rep.constant_coarse = std::max(rep.constant_coarse, rows[k].ratio);
    rep.constant_fine = std::max(rep.constant_fine, rows_fine[k].ratio);
  }
  if (rep.kept > 0 && rep.constant_coarse > 0.0) {
    rep.growth = rep.constant_fine / rep.constant_coarse;
    rep.pass = rep.growth < 2.0;
  }
  return rep;
}

}  // namespace

FittedConstantReport homogeneous_witness(Rat s, Rat q, Rat r,
                                         const WitnessSpec& spec) {
  check_homogeneous_hypotheses(spec.grid.d, q, r);
  return run_witness(
      spec, [&](const Grid& g, int steps, int trial, double amp) {
        InitialData d =
            random_band_data(g, spec.band, spec.seed,
                             static_cast<std::uint64_t>(trial));
        for (double& x : d.phi0) x *= amp;
        for (double& x : d.phi1) x *= amp;
        return homogeneous_terms(g, d, s, q, r, spec.t_max, steps);
      });
}

FittedConstantReport inhomogeneous_witness(Rat s1, Rat s2, Rat q, Rat r,
                                           Rat qt, Rat rt,
                                           const WitnessSpec& spec) {
  check_inhomogeneous_hypotheses(spec.grid.d, s1, s2, q, r, qt, rt);
  return run_witness(
      spec, [&](const Grid& g, int steps, int trial, double amp) {
        Field f = random_band_source(g, uniform_times(spec.t_max, steps),
                                     spec.band, spec.seed,
                                     static_cast<std::uint64_t>(trial));
        for (double& x : f.v) x *= amp;
        return inhomogeneous_terms(f, s1, s2, q, r, qt, rt);
      });
}

}  // namespace fwave
