#include "fwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "fwave/admiss.hpp"
#include "fwave/error.hpp"
#include "fwave/norms.hpp"
#include "fwave/renorm.hpp"

namespace fwave {

namespace {

// sin(t k)/k continued through k = 0
double sinc_t(double t, double k) { return k == 0.0 ? t : std::sin(t * k) / k; }

void check_data(const Grid& g, const InitialData& data) {
  if (data.phi0.size() != g.total() || data.phi1.size() != g.total()) {
    fail_domain("GridMismatch: initial data does not match the grid");
  }
}

void check_times(const std::vector<double>& times) {
  if (times.size() < 2 || times.front() != 0.0) {
    fail_domain("InvalidWindow: time grid must start at 0 with >= 2 points");
  }
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (!(times[i + 1] > times[i])) {
      fail_domain("InvalidWindow: time grid must be strictly increasing");
    }
  }
}

Field prefix_field(const Field& f, std::size_t nt) {
  Field out(f.grid,
            std::vector<double>(f.times.begin(), f.times.begin() + nt));
  std::copy(f.v.begin(), f.v.begin() + nt * f.slice_size(), out.v.begin());
  out.kind = f.kind;
  out.n_level = f.n_level;
  out.seed = f.seed;
  out.stream = f.stream;
  return out;
}

}  // namespace

std::vector<double> bump_cutoff(const Grid& g, double radius) {
  if (!(radius > 0.0) || radius > g.half_width) {
    fail_domain("InvalidWindow: bump radius must lie in (0, L]");
  }
  std::vector<double> rho(g.total(), 0.0);
  std::vector<double> x(g.d);
  for (std::size_t i = 0; i < g.total(); ++i) {
    g.coords(i, x.data());
    double r2 = 0.0;
    for (int a = 0; a < g.d; ++a) r2 += x[a] * x[a];
    const double u = r2 / (radius * radius);
    if (u < 1.0) rho[i] = std::exp(1.0 - 1.0 / (1.0 - u));
  }
  return rho;
}

Field linear_evolution(const Grid& g, const InitialData& data,
                       const std::vector<double>& times, Field* velocity) {
  check_data(g, data);
  if (times.empty()) fail_domain("InvalidWindow: empty time grid");

  const std::size_t n = g.total();
  std::vector<cplx> p0(n), p1(n);
  to_spectrum(g, data.phi0.data(), p0.data());
  to_spectrum(g, data.phi1.data(), p1.data());

  Field out(g, times);
  if (velocity) *velocity = Field(g, times);

  std::vector<cplx> mode(n);
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double t = times[it];
    for (std::size_t i = 0; i < n; ++i) {
      const double k = g.knorm(i);
      mode[i] = std::cos(t * k) * p0[i] + sinc_t(t, k) * p1[i];
    }
    from_spectrum(g, mode.data(), mode.data());
    double* w = out.slice(it);
    for (std::size_t i = 0; i < n; ++i) w[i] = mode[i].real();

    if (velocity) {
      for (std::size_t i = 0; i < n; ++i) {
        const double k = g.knorm(i);
        mode[i] = -k * std::sin(t * k) * p0[i] + std::cos(t * k) * p1[i];
      }
      from_spectrum(g, mode.data(), mode.data());
      double* wt = velocity->slice(it);
      for (std::size_t i = 0; i < n; ++i) wt[i] = mode[i].real();
    }
  }
  return out;
}

void propagate_linear(const Grid& g, const InitialData& data, double t,
                      double* w, double* wt) {
  Field vel;
  const Field f = linear_evolution(g, data, {t}, wt ? &vel : nullptr);
  if (w) std::memcpy(w, f.slice(0), g.total() * sizeof(double));
  if (wt) std::memcpy(wt, vel.slice(0), g.total() * sizeof(double));
}

Field duhamel(const Field& source, Field* velocity) {
  const Grid& g = source.grid;
  check_times(source.times);
  const std::size_t n = g.total();
  const std::size_t nt = source.times.size();

  Field out(g, source.times);
  if (velocity) *velocity = Field(g, source.times);

  // prefix trapezoid sums: cosI = int cos(s|k|) f_hat(s), sinI likewise;
  // on the zero mode they hold int f_hat and int s f_hat instead
  std::vector<cplx> cosI(n, 0.0), sinI(n, 0.0);
  std::vector<cplx> prev(n), cur(n), mode(n);

  to_spectrum(g, source.slice(0), prev.data());
  // w(0) = 0, wt(0) = 0 already

  for (std::size_t j = 1; j < nt; ++j) {
    const double t0 = source.times[j - 1];
    const double t1 = source.times[j];
    const double hdt = 0.5 * (t1 - t0);
    to_spectrum(g, source.slice(j), cur.data());
    for (std::size_t i = 0; i < n; ++i) {
      const double k = g.knorm(i);
      if (k == 0.0) {
        cosI[i] += hdt * (prev[i] + cur[i]);
        sinI[i] += hdt * (t0 * prev[i] + t1 * cur[i]);
      } else {
        cosI[i] += hdt * (std::cos(t0 * k) * prev[i] + std::cos(t1 * k) * cur[i]);
        sinI[i] += hdt * (std::sin(t0 * k) * prev[i] + std::sin(t1 * k) * cur[i]);
      }
    }
    std::swap(prev, cur);

    for (std::size_t i = 0; i < n; ++i) {
      const double k = g.knorm(i);
      // sin((t-s)k)/k expanded so the s-integrals are time-independent
      mode[i] = k == 0.0
                    ? t1 * cosI[i] - sinI[i]
                    : (std::sin(t1 * k) * cosI[i] - std::cos(t1 * k) * sinI[i]) / k;
    }
    from_spectrum(g, mode.data(), mode.data());
    double* w = out.slice(j);
    for (std::size_t i = 0; i < n; ++i) w[i] = mode[i].real();

    if (velocity) {
      for (std::size_t i = 0; i < n; ++i) {
        const double k = g.knorm(i);
        mode[i] = k == 0.0
                      ? cosI[i]
                      : std::cos(t1 * k) * cosI[i] + std::sin(t1 * k) * sinI[i];
      }
      from_spectrum(g, mode.data(), mode.data());
      double* wt = velocity->slice(j);
      for (std::size_t i = 0; i < n; ++i) wt[i] = mode[i].real();
    }
  }
  return out;
}

Field gamma_map(const Field& v, const InitialData& data, const PiPair& pi,
                const std::vector<double>& rho) {
  const Grid& g = v.grid;
  check_data(g, data);
  if (rho.size() != g.total()) {
    fail_domain("GridMismatch: cutoff does not match the grid");
  }
  const bool has_pi = !pi.empty();
  if (has_pi && (!(pi.pi1.grid == g) || !(pi.pi2.grid == g) ||
                 pi.pi1.times != v.times || pi.pi2.times != v.times)) {
    fail_domain("GridMismatch: companion fields live on a different grid");
  }

  Field nl(g, v.times);
  const std::size_t n = g.total();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t it = 0; it < static_cast<std::ptrdiff_t>(v.times.size());
       ++it) {
    const double* vs = v.slice(it);
    double* out = nl.slice(it);
    if (has_pi) {
      const double* p1 = pi.pi1.slice(it);
      const double* p2 = pi.pi2.slice(it);
      for (std::size_t i = 0; i < n; ++i) {
        const double rv = rho[i] * vs[i];
        out[i] = -(rv * rv + (rho[i] * p1[i]) * rv + rho[i] * rho[i] * p2[i]);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double rv = rho[i] * vs[i];
        out[i] = -rv * rv;
      }
    }
  }

  Field lin = linear_evolution(g, data, v.times);
  Field duh = duhamel(nl);
  for (std::size_t i = 0; i < lin.v.size(); ++i) lin.v[i] += duh.v[i];
  return lin;
}

namespace {

// one Picard run at a fixed horizon; returns converged flag
bool iterate_fixed_horizon(Field& v, const InitialData& data, const PiPair& pi,
                           const std::vector<double>& rho,
                           const PicardOptions& opt, double T,
                           PicardTrace& trace) {
  double prev_diff = std::numeric_limits<double>::infinity();
  int bad_streak = 0;
  for (int k = 0; k < opt.max_iter; ++k) {
    Field next = gamma_map(v, data, pi, rho);
    Field delta = next;
    for (std::size_t i = 0; i < delta.v.size(); ++i) delta.v[i] -= v.v[i];
    const double diff = x_s_norm(delta, opt.s, opt.q, opt.r, T);
    const double norm = x_s_norm(next, opt.s, opt.q, opt.r, T);
    trace.iterate_norms.push_back(norm);
    trace.diff_norms.push_back(diff);
    if (std::isfinite(prev_diff) && prev_diff > 0.0) {
      trace.contraction.push_back(diff / prev_diff);
    }
    ++trace.iterations;
    v = std::move(next);
    if (diff < opt.tol) return true;
    if (!std::isfinite(diff) || !std::isfinite(norm)) return false;
    bad_streak = diff >= prev_diff ? bad_streak + 1 : 0;
    if (bad_streak >= 3) return false;  // clearly not contracting
    prev_diff = diff;
  }
  // ran out of iterations while still contracting: report rather than halve
  if (!trace.contraction.empty() && trace.contraction.back() < 0.9) {
    fail_numerical("MaxIterExceeded: fixed point still contracting at iteration cap");
  }
  return false;
}

PiPair prefix_pi(const PiPair& pi, std::size_t nt) {
  PiPair out;
  out.alpha = pi.alpha;
  if (!pi.empty()) {
    out.pi1 = prefix_field(pi.pi1, nt);
    out.pi2 = prefix_field(pi.pi2, nt);
  }
  return out;
}

}  // namespace

Field picard_solve(const Grid& g, const std::vector<double>& times,
                   const InitialData& data, const PiPair& pi,
                   const std::vector<double>& rho, const PicardOptions& opt,
                   PicardTrace* trace) {
  check_data(g, data);
  check_times(times);
  if (opt.strict_admissible) {
    const AdmissiblePair p =
        check_admissible(opt.q, opt.r, g.d, opt.s, PairKind::Admissible);
    if (!p.ok()) {
      fail_domain("NotAdmissible: picard exponents (q,r)=(" + opt.q.str() +
                  "," + opt.r.str() + ") fail the admissibility conditions");
    }
  }

  PicardTrace local;
  PicardTrace& tr = trace ? *trace : local;
  tr = PicardTrace{};

  std::size_t steps = times.size() - 1;
  for (int h = 0;; ++h) {
    const std::size_t nt = steps + 1;
    const std::vector<double> sub(times.begin(), times.begin() + nt);
    const double T = sub.back();
    const PiPair pi_sub = prefix_pi(pi, nt);

    tr.iterate_norms.clear();
    tr.diff_norms.clear();
    tr.contraction.clear();
    tr.iterations = 0;
    tr.halvings = h;
    tr.t_used = T;

    Field v = linear_evolution(g, data, sub);
    if (iterate_fixed_horizon(v, data, pi_sub, rho, opt, T, tr)) {
      tr.converged = true;
      if (opt.uniqueness_probe) {
        PicardTrace probe;
        Field v0(g, sub);  // start from zero instead of the linear flow
        if (iterate_fixed_horizon(v0, data, pi_sub, rho, opt, T, probe)) {
          Field delta = v;
          for (std::size_t i = 0; i < delta.v.size(); ++i) {
            delta.v[i] -= v0.v[i];
          }
          tr.uniqueness_gap = x_s_norm(delta, opt.s, opt.q, opt.r, T);
        } else {
          tr.uniqueness_gap = std::numeric_limits<double>::infinity();
        }
      }
      return v;
    }

    if (h >= opt.max_halvings || steps < 2 || steps % 2 != 0) {
      fail_numerical(
          "NoContraction: no contracting horizon above the minimum window");
    }
    steps /= 2;
  }
}

SolveResult solve_full(const Hurst& hurst, int n_level, const InitialData& data,
                       const std::vector<double>& rho, const SolveSpec& spec,
                       SolveMode mode) {
  const Grid& g = spec.grid;
  check_data(g, data);
  if (rho.size() != g.total()) {
    fail_domain("GridMismatch: cutoff does not match the grid");
  }
  if (g.d < 2) {
    fail_domain("DimensionUnsupported: the nonlinear pipeline needs d >= 2");
  }
  if (hurst.dim_space() != g.d) {
    fail_domain("DimensionUnsupported: Hurst vector does not match the grid");
  }

  const Regime regime = classify_regime(hurst);
  if ((mode == SolveMode::Regular && regime != Regime::Regular) ||
      (mode == SolveMode::Wick && regime != Regime::Wick)) {
    fail_domain(std::string("RegimeMismatch: Hurst vector is ") +
                regime_name(regime));
  }

  // wrap-around margin: images travel at unit speed, so the torus must
  // keep supp(rho) at least t_max + 1 away from its own copies
  double support = 0.0;
  {
    std::vector<double> x(g.d);
    for (std::size_t i = 0; i < g.total(); ++i) {
      if (rho[i] != 0.0) {
        g.coords(i, x.data());
        double r2 = 0.0;
        for (int a = 0; a < g.d; ++a) r2 += x[a] * x[a];
        support = std::max(support, std::sqrt(r2));
      }
    }
  }
  if (g.half_width < support + spec.t_max + 1.0 - 1e-12) {
    fail_domain("TorusTooSmall: need half width >= cutoff support + t_max + 1");
  }

  const std::vector<double> times = uniform_times(spec.t_max, spec.steps);
  const Lattice lat(hurst, n_level, spec.cells_per_octave);
  const NoiseKey key{spec.seed, spec.stream};

  SolveResult res;
  res.psi = sample_field_grid(lat, g, times, key, FieldKind::LinearPsi);

  PiPair pi;
  pi.pi1 = res.psi;
  for (double& x : pi.pi1.v) x *= 2.0;
  pi.pi2 = res.psi;
  pi.pi2.kind = FieldKind::WickPsi2;
  const std::size_t n = g.total();
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double* ps = res.psi.slice(it);
    double* p2 = pi.pi2.slice(it);
    const double sig = (mode == SolveMode::Wick && spec.renormalize)
                           ? second_moment_cells(lat, times[it])
                           : 0.0;
    for (std::size_t i = 0; i < n; ++i) p2[i] = ps[i] * ps[i] - sig;
  }
  if (mode == SolveMode::Wick) {
    double total = hurst.h0;
    for (int a = 0; a < g.d; ++a) total += hurst.hsp[a];
    res.alpha = std::min(0.24, (g.d - 0.5 - total) + 0.05);
    pi.alpha = res.alpha;
  }

  res.v = picard_solve(g, times, data, pi, rho, spec.picard, &res.trace);

  res.u = res.v;
  res.u.kind = FieldKind::SolutionU;
  res.u.n_level = n_level;
  res.u.seed = spec.seed;
  res.u.stream = spec.stream;
  const std::size_t nt_used = res.v.times.size();
  for (std::size_t it = 0; it < nt_used; ++it) {
    const double* ps = res.psi.slice(it);
    double* us = res.u.slice(it);
    for (std::size_t i = 0; i < n; ++i) us[i] += ps[i];
  }
  res.psi = prefix_field(res.psi, nt_used);
  res.v.kind = FieldKind::SolutionV;
  return res;
}

bool ConvergenceReport::decreasing(int allowed_inversions) const {
  int inversions = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (!(rows[i + 1].diff < rows[i].diff)) ++inversions;
  }
  return inversions <= allowed_inversions;
}

ConvergenceReport convergence_study(const Hurst& hurst,
                                    const std::vector<int>& n_levels,
                                    const InitialData& data,
                                    const std::vector<double>& rho,
                                    const SolveSpec& spec, SolveMode mode) {
  if (n_levels.size() < 2) {
    fail_domain("InsufficientData: convergence study needs >= 2 levels");
  }

  std::vector<SolveResult> sols;
  sols.reserve(n_levels.size());
  for (int n : n_levels) {
    SolveResult s = solve_full(hurst, n, data, rho, spec, mode);
    // only u is compared; drop the rest to keep peak memory flat
    s.v = Field{};
    s.psi = Field{};
    sols.push_back(std::move(s));
  }

  ConvergenceReport rep;
  rep.n_levels = n_levels;
  rep.alpha = mode == SolveMode::Wick ? sols.front().alpha : 0.0;

  std::size_t nt_common = sols.front().u.times.size();
  for (const SolveResult& s : sols) {
    rep.t0.push_back(s.trace.t_used);
    nt_common = std::min(nt_common, s.u.times.size());
  }
  rep.t_common = sols.front().u.times[nt_common - 1];

  std::vector<std::uint8_t> mask(spec.grid.total());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rho[i] != 0.0;

  const double order = -rep.alpha;
  for (std::size_t j = 0; j + 1 < sols.size(); ++j) {
    const Field& a = sols[j].u;
    const Field& b = sols[j + 1].u;
    double sup = 0.0;
    std::vector<double> delta(spec.grid.total());
    for (std::size_t it = 0; it < nt_common; ++it) {
      const double* as = a.slice(it);
      const double* bs = b.slice(it);
      for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = bs[i] - as[i];
      sup = std::max(
          sup, sobolev_norm(spec.grid, delta.data(), order, 2.0, mask));
    }
    rep.rows.push_back({n_levels[j], n_levels[j + 1], sup});
  }
  return rep;
}

}  // namespace fwave
