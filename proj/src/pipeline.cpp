#include "fwave/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "fwave/error.hpp"
#include "fwave/gamma.hpp"
#include "fwave/lattice.hpp"
#include "fwave/norms.hpp"
#include "fwave/noise.hpp"
#include "fwave/quadrature.hpp"
#include "fwave/renorm.hpp"

namespace fwave {

namespace {

void validate(const Hurst& hurst, const CauchySpec& spec) {
  if (hurst.dim_space() != spec.grid.d) {
    fail_domain("DimensionUnsupported: Hurst vector does not match the grid");
  }
  if (spec.levels.size() < 2) {
    fail_domain("InsufficientData: Cauchy study needs >= 2 levels");
  }
  for (std::size_t i = 0; i + 1 < spec.levels.size(); ++i) {
    if (spec.levels[i + 1] <= spec.levels[i]) {
      fail_domain("InsufficientData: levels must be strictly increasing");
    }
  }
  if (spec.times.empty()) fail_domain("InvalidWindow: no probe times");
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    if (!(spec.times[i] >= 0.0) ||
        (i > 0 && spec.times[i] < spec.times[i - 1])) {
      fail_domain("InvalidWindow: times must be sorted and nonnegative");
    }
  }
  if (!(spec.alpha >= 0.0)) {
    fail_domain("InvalidExponent: alpha must be >= 0");
  }
  if (!spec.mask.empty() && spec.mask.size() != spec.grid.total()) {
    fail_domain("MaskShape: mask does not match the grid");
  }
  if (spec.replicas < 0) {
    fail_domain("InsufficientData: replicas must be >= 0");
  }
  // the finest lattice must bin inside the Nyquist index, like the sampler
  const double radius = std::ldexp(1.0, spec.levels.back());
  if (std::lround(radius * spec.grid.half_width / M_PI) >= spec.grid.m / 2) {
    fail_domain(
        "GridAliasing: lattice frequencies exceed grid Nyquist; increase "
        "grid points or shrink the box");
  }
}

double masked_volume(const Grid& g, const std::vector<std::uint8_t>& mask) {
  if (mask.empty()) return g.volume();
  std::size_t count = 0;
  for (std::uint8_t m : mask) count += m != 0;
  if (count == 0) fail_domain("EmptyMask: domain has no grid points");
  return static_cast<double>(count) * g.cell_volume();
}

// per-grid-mode variance mass of one level, rows indexed by time:
// S[it * total + k] = sum over cells binned at +-k of w_C |gamma_t|^2
std::vector<double> mode_mass(const Lattice& lat, const Grid& g,
                              const std::vector<double>& times) {
  const CellTable cells = build_cell_table(lat);
  const std::size_t nc = cells.size();
  const std::size_t total = g.total();
  const int d = g.d;

  std::array<std::size_t, 4> stride{};
  {
    std::size_t s = 1;
    for (int a = d - 1; a >= 0; --a) {
      stride[a] = s;
      s *= static_cast<std::size_t>(g.m);
    }
  }
  std::vector<std::size_t> fp(nc), fm(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t p = 0, m = 0;
    for (int a = 0; a < d; ++a) {
      const int ci =
          static_cast<int>(std::lround(cells.eta[a][c] * g.half_width / M_PI));
      p += static_cast<std::size_t>(g.kstorage(ci)) * stride[a];
      m += static_cast<std::size_t>(g.kstorage(-ci)) * stride[a];
    }
    fp[c] = p;
    fm[c] = m;
  }

  std::vector<double> mass(times.size() * total, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t it = 0; it < static_cast<std::ptrdiff_t>(times.size());
       ++it) {
    double* row = mass.data() + static_cast<std::size_t>(it) * total;
    for (std::size_t c = 0; c < nc; ++c) {
      const cplx gm = gamma_eval(times[it], cells.xi[c], cells.rnorm[c]).value;
      const double w = cells.amp[c] * cells.amp[c] * std::norm(gm);
      row[fp[c]] += w;
      row[fm[c]] += w;
    }
  }
  return mass;
}

// sum_k (1+|k|^2)^{-order} (fine - coarse)(k), maximized over times
double mode_sum_diff(const Grid& g, const std::vector<double>& coarse,
                     const std::vector<double>& fine, std::size_t nt,
                     double order) {
  const std::size_t total = g.total();
  double best = 0.0;
  for (std::size_t it = 0; it < nt; ++it) {
    const double* a = coarse.data() + it * total;
    const double* b = fine.data() + it * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
      const double kn = g.knorm(k);
      acc += std::pow(1.0 + kn * kn, -order) * (b[k] - a[k]);
    }
    best = std::max(best, acc);
  }
  return best;
}

// spectral density of the Wick square: transform of c(h)^2 with c the
// covariance function synthesized from the mode mass
std::vector<double> square_density(const Grid& g,
                                   const std::vector<double>& mass,
                                   std::size_t nt) {
  const std::size_t total = g.total();
  std::vector<double> density(nt * total);
  std::vector<cplx> buf(total);
  for (std::size_t it = 0; it < nt; ++it) {
    const double* row = mass.data() + it * total;
    for (std::size_t k = 0; k < total; ++k) buf[k] = row[k];
    from_spectrum(g, buf.data(), buf.data());
    for (std::size_t i = 0; i < total; ++i) {
      const double c = buf[i].real();
      buf[i] = c * c;
    }
    to_spectrum_complex(g, buf.data(), buf.data());
    double* out = density.data() + it * total;
    for (std::size_t k = 0; k < total; ++k) out[k] = buf[k].real();
  }
  return density;
}

CauchyStudy closed_form_study(const Hurst& hurst, const CauchySpec& spec) {
  const Grid& g = spec.grid;
  const std::size_t nt = spec.times.size();

  CauchyStudy study;
  study.alpha = spec.alpha;
  study.domain_volume = masked_volume(g, spec.mask);
  study.times = spec.times;

  std::vector<double> mass_prev, dens_prev;
  for (std::size_t i = 0; i < spec.levels.size(); ++i) {
    const Lattice lat(hurst, spec.levels[i], spec.cells_per_octave);
    std::vector<double> mass = mode_mass(lat, g, spec.times);
    std::vector<double> dens;
    if (spec.squares) dens = square_density(g, mass, nt);

    if (i > 0) {
      CauchyRow row;
      row.n_coarse = spec.levels[i - 1];
      row.n_fine = spec.levels[i];
      row.value = study.domain_volume *
                  mode_sum_diff(g, mass_prev, mass, nt, spec.alpha);
      study.field_rows.push_back(row);
      if (spec.squares) {
        CauchyRow sq = row;
        sq.value = study.domain_volume * 2.0 *
                   mode_sum_diff(g, dens_prev, dens, nt, 2.0 * spec.alpha);
        study.square_rows.push_back(sq);
      }
    }
    mass_prev = std::move(mass);
    dens_prev = std::move(dens);
  }
  return study;
}

struct Accumulator {
  std::vector<double> sum, sumsq;  // [row][time]
  void init(std::size_t rows, std::size_t nt) {
    sum.assign(rows * nt, 0.0);
    sumsq.assign(rows * nt, 0.0);
  }
  void add(std::size_t row, std::size_t nt, const std::vector<double>& vals) {
    for (std::size_t it = 0; it < nt; ++it) {
      sum[row * nt + it] += vals[it];
      sumsq[row * nt + it] += vals[it] * vals[it];
    }
  }
  // max-over-times mean, with the standard error at the maximizing time
  CauchyRow report(std::size_t row, std::size_t nt, int n_coarse, int n_fine,
                   int replicas) const {
    CauchyRow out;
    out.n_coarse = n_coarse;
    out.n_fine = n_fine;
    const double r = replicas;
    for (std::size_t it = 0; it < nt; ++it) {
      const double mean = sum[row * nt + it] / r;
      if (mean >= out.value) {
        const double var =
            std::max(0.0, sumsq[row * nt + it] / r - mean * mean);
        out.value = mean;
        out.se = replicas > 1 ? std::sqrt(var / (r - 1.0)) : 0.0;
      }
    }
    return out;
  }
};

// everything about one level that replicas share: binned indices, the
// per-(time, cell) kernel values, draw addresses, renormalization curve
struct LevelPlan {
  std::size_t nc = 0;
  std::vector<std::uint64_t> addr;
  std::vector<cplx> tt;            // [it * nc + c]
  std::vector<std::size_t> fp, fm; // flat spectrum bins of +-eta_c
  std::vector<double> sigma;       // E[Psi^2] per time (squares only)
};

LevelPlan build_level_plan(const Hurst& hurst, int level, int cpo,
                           const Grid& g, const std::vector<double>& times,
                           bool squares) {
  const Lattice lat(hurst, level, cpo);
  const CellTable cells = build_cell_table(lat);
  LevelPlan plan;
  plan.nc = cells.size();
  plan.addr = cells.addr;
  plan.tt = time_table(cells, times, FieldKind::LinearPsi);

  std::array<std::size_t, 4> stride{};
  {
    std::size_t s = 1;
    for (int a = g.d - 1; a >= 0; --a) {
      stride[a] = s;
      s *= static_cast<std::size_t>(g.m);
    }
  }
  plan.fp.resize(plan.nc);
  plan.fm.resize(plan.nc);
  for (std::size_t c = 0; c < plan.nc; ++c) {
    std::size_t p = 0, m = 0;
    for (int a = 0; a < g.d; ++a) {
      const int ci =
          static_cast<int>(std::lround(cells.eta[a][c] * g.half_width / M_PI));
      p += static_cast<std::size_t>(g.kstorage(ci)) * stride[a];
      m += static_cast<std::size_t>(g.kstorage(-ci)) * stride[a];
    }
    plan.fp[c] = p;
    plan.fm[c] = m;
  }
  if (squares) {
    plan.sigma.resize(times.size());
    for (std::size_t it = 0; it < times.size(); ++it) {
      plan.sigma[it] = second_moment_cells(lat, times[it]);
    }
  }
  return plan;
}

CauchyStudy monte_carlo_study(const Hurst& hurst, const CauchySpec& spec) {
  const Grid& g = spec.grid;
  const std::size_t nt = spec.times.size();
  const std::size_t nlev = spec.levels.size();
  const std::size_t nrows = nlev - 1;
  const std::size_t total = g.total();

  CauchyStudy study;
  study.alpha = spec.alpha;
  study.domain_volume = masked_volume(g, spec.mask);
  study.times = spec.times;

  std::vector<LevelPlan> plans(nlev);
  for (std::size_t i = 0; i < nlev; ++i) {
    plans[i] = build_level_plan(hurst, spec.levels[i], spec.cells_per_octave,
                                g, spec.times, spec.squares);
  }

  // one pow() per mode; field/square multipliers are powers of the same base
  std::vector<double> mult_half(total);  // (1+|k|^2)^{-alpha/2}
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(total); ++k) {
    const double kn = g.knorm(static_cast<std::size_t>(k));
    mult_half[k] = std::pow(1.0 + kn * kn, -0.5 * spec.alpha);
  }
  const bool masked = !spec.mask.empty();
  const double cellvol = g.cell_volume();

  // || f ||^2 in W^{-order,2}(D) from its spectrum; mh = multiplier^(1/2)
  std::vector<cplx> scratch(masked ? total : 0);
  auto norm2_of_spec = [&](const cplx* dspec, int half_powers) {
    double acc = 0.0;
    if (!masked) {
      for (std::size_t k = 0; k < total; ++k) {
        double m = mult_half[k];
        for (int p = 1; p < half_powers; ++p) m *= mult_half[k];
        acc += m * m * std::norm(dspec[k]);
      }
      return g.volume() * acc;
    }
    for (std::size_t k = 0; k < total; ++k) {
      double m = mult_half[k];
      for (int p = 1; p < half_powers; ++p) m *= mult_half[k];
      scratch[k] = dspec[k] * m;
    }
    from_spectrum(g, scratch.data(), scratch.data());
    for (std::size_t x = 0; x < total; ++x) {
      if (spec.mask[x]) {
        const double re = scratch[x].real();
        acc += re * re;
      }
    }
    return cellvol * acc;
  };

  Accumulator field_acc, square_acc;
  field_acc.init(nrows, nt);
  if (spec.squares) square_acc.init(nrows, nt);

  std::vector<std::vector<cplx>> spec_buf(2);   // [parity][it * total + x]
  std::vector<std::vector<double>> psi_buf(2);
  spec_buf[0].resize(nt * total);
  spec_buf[1].resize(nt * total);
  if (spec.squares) {
    psi_buf[0].resize(nt * total);
    psi_buf[1].resize(nt * total);
  }
  std::vector<cplx> z, dspec(total), work(spec.squares ? total : 0);
  std::vector<double> norms(nt);

  for (int r = 0; r < spec.replicas; ++r) {
    const NoiseKey key{spec.seed, static_cast<std::uint64_t>(r)};
    for (std::size_t i = 0; i < nlev; ++i) {
      const LevelPlan& plan = plans[i];
      const std::size_t cur = i & 1, prev = cur ^ 1;

      z.resize(plan.nc);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(plan.nc);
           ++c) {
        z[c] = cell_draw(key, plan.addr[c]);
      }

#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t it = 0; it < static_cast<std::ptrdiff_t>(nt); ++it) {
        cplx* sp = spec_buf[cur].data() + static_cast<std::size_t>(it) * total;
        std::fill(sp, sp + total, cplx(0.0, 0.0));
        const cplx* trow = plan.tt.data() + static_cast<std::size_t>(it) * plan.nc;
        for (std::size_t c = 0; c < plan.nc; ++c) {
          const cplx w = z[c] * trow[c];
          sp[plan.fp[c]] += w;
          sp[plan.fm[c]] += std::conj(w);
        }
        if (spec.squares) {
          std::vector<cplx> phys(sp, sp + total);
          from_spectrum(g, phys.data(), phys.data());
          double* ps = psi_buf[cur].data() + static_cast<std::size_t>(it) * total;
          for (std::size_t x = 0; x < total; ++x) ps[x] = phys[x].real();
        }
      }

      if (i == 0) continue;
      for (std::size_t it = 0; it < nt; ++it) {
        const cplx* a = spec_buf[prev].data() + it * total;
        const cplx* b = spec_buf[cur].data() + it * total;
        for (std::size_t k = 0; k < total; ++k) dspec[k] = b[k] - a[k];
        norms[it] = norm2_of_spec(dspec.data(), 1);
      }
      field_acc.add(i - 1, nt, norms);

      if (spec.squares) {
        const LevelPlan& pp = plans[i - 1];
        for (std::size_t it = 0; it < nt; ++it) {
          const double* pa = psi_buf[prev].data() + it * total;
          const double* pb = psi_buf[cur].data() + it * total;
          const double shift = plan.sigma[it] - pp.sigma[it];
          for (std::size_t x = 0; x < total; ++x) {
            work[x] = pb[x] * pb[x] - pa[x] * pa[x] - shift;
          }
          to_spectrum_complex(g, work.data(), work.data());
          norms[it] = norm2_of_spec(work.data(), 2);
        }
        square_acc.add(i - 1, nt, norms);
      }
    }
  }

  for (std::size_t i = 0; i < nrows; ++i) {
    study.field_rows.push_back(field_acc.report(
        i, nt, spec.levels[i], spec.levels[i + 1], spec.replicas));
    if (spec.squares) {
      study.square_rows.push_back(square_acc.report(
          i, nt, spec.levels[i], spec.levels[i + 1], spec.replicas));
    }
  }
  return study;
}

void validate_quadrature(const Hurst& hurst, const QuadCauchySpec& spec) {
  if (hurst.dim_space() != 1) {
    fail_domain(
        "DimensionUnsupported: the quadrature path is one-dimensional; use "
        "the sampler for d >= 2");
  }
  if (spec.levels.size() < 2) {
    fail_domain("InsufficientData: Cauchy study needs >= 2 levels");
  }
  if (spec.levels.front() < 0) {
    fail_domain("InsufficientData: levels must be >= 0");
  }
  for (std::size_t i = 0; i + 1 < spec.levels.size(); ++i) {
    if (spec.levels[i + 1] <= spec.levels[i]) {
      fail_domain("InsufficientData: levels must be strictly increasing");
    }
  }
  if (spec.times.empty()) fail_domain("InvalidWindow: no probe times");
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    if (!(spec.times[i] >= 0.0) ||
        (i > 0 && spec.times[i] < spec.times[i - 1])) {
      fail_domain("InvalidWindow: times must be sorted and nonnegative");
    }
  }
  if (!(spec.alpha >= 0.0)) {
    fail_domain("InvalidExponent: alpha must be >= 0");
  }
  if (!(spec.k_step > 0.0)) {
    fail_domain("InvalidWindow: k_step must be > 0");
  }
  if (!(spec.tol > 0.0)) {
    fail_domain("InvalidWindow: quadrature tolerance must be > 0");
  }
  if (!(spec.domain_volume > 0.0)) {
    fail_domain("InvalidWindow: domain volume must be > 0");
  }
  const double cells = std::ldexp(1.0, spec.levels.back()) / spec.k_step;
  if (!(cells <= 2e6)) {
    fail_domain(
        "InvalidWindow: spectral grid too large; raise k_step or lower the "
        "top level");
  }
}

// 2 int_a^b xi^{1-2H0} |gamma_t(xi, k)|^2 dxi, split at the resonance ridge
double xi_band_moment(double t, double k, double a, double b, double p0,
                      double tol) {
  auto f = [&](double xi) { return std::norm(gamma_eval(t, xi, k).value); };
  double acc = 0.0;
  bool ok = true;
  const double mid = std::min(std::max(k, a), b);
  if (mid > a) {
    const QuadResult lo = integrate_power(f, a, mid, p0, 0.0, tol, 40000);
    ok = ok && lo.converged;
    acc += lo.value;
  }
  if (mid < b) {
    const QuadResult hi = integrate_power(f, mid, b, p0, 0.0, tol, 40000);
    ok = ok && hi.converged;
    acc += hi.value;
  }
  if (!ok) {
    fail_numerical("ToleranceNotReached: Cauchy quadrature did not converge");
  }
  return 2.0 * acc;
}

CauchyStudy quadrature_study(const Hurst& hurst, const QuadCauchySpec& spec) {
  const double h = spec.k_step;
  const double p0 = 1.0 - 2.0 * hurst.h0;
  const double p1 = 1.0 - 2.0 * hurst.hsp[0];
  const std::size_t nlev = spec.levels.size();
  const std::size_t nt = spec.times.size();
  const double r_max = std::ldexp(1.0, spec.levels.back());
  const std::size_t nk = static_cast<std::size_t>(std::ceil(r_max / h));

  CauchyStudy study;
  study.alpha = spec.alpha;
  study.domain_volume = spec.domain_volume;
  study.times = spec.times;

  // rho[li][it * nk + i]: radial spectral density of level li at midpoint
  // k_i = (i + 1/2) h, per probe time
  std::vector<std::vector<double>> rho(nlev,
                                       std::vector<double>(nt * nk, 0.0));
  for (std::size_t li = 0; li < nlev; ++li) {
    const double r = std::ldexp(1.0, spec.levels[li]);
    const double prev_r = li == 0 ? 0.0 : std::ldexp(1.0, spec.levels[li - 1]);
    if (li > 0) rho[li] = rho[li - 1];
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nk); ++i) {
      const double k = (static_cast<double>(i) + 0.5) * h;
      if (k > r) continue;
      const double lo = k <= prev_r ? prev_r : 0.0;  // new annulus coverage
      const double w = std::pow(k, p1);
      for (std::size_t it = 0; it < nt; ++it) {
        const double add =
            w * xi_band_moment(spec.times[it], k, lo, r, p0, spec.tol);
        double& cell = rho[li][it * nk + static_cast<std::size_t>(i)];
        if (k <= prev_r) {
          cell += add;
        } else {
          cell = add;
        }
      }
    }
  }

  // line convolutions rho * rho per level and time, via zero-padded FFT;
  // entry j of conv sits at k = (j - (2 nk - 1)) h
  std::vector<std::vector<double>> conv;
  std::size_t nconv = 0, fft_n = 1;
  if (spec.squares) {
    nconv = 4 * nk - 1;
    while (fft_n < nconv) fft_n <<= 1;
    conv.assign(nlev, std::vector<double>(nt * nconv, 0.0));
    std::vector<cplx> buf(fft_n);
    for (std::size_t li = 0; li < nlev; ++li) {
      for (std::size_t it = 0; it < nt; ++it) {
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        const double* src = rho[li].data() + it * nk;
        for (std::size_t i = 0; i < nk; ++i) {
          buf[nk - 1 - i] = src[i];  // negative side, mirrored
          buf[nk + i] = src[i];
        }
        fft_1d(buf.data(), fft_n, -1);
        for (std::size_t j = 0; j < fft_n; ++j) buf[j] *= buf[j];
        fft_1d(buf.data(), fft_n, +1);
        double* dst = conv[li].data() + it * nconv;
        const double scale = h / static_cast<double>(fft_n);
        for (std::size_t j = 0; j < nconv; ++j) {
          dst[j] = buf[j].real() * scale;
        }
      }
    }
  }

  for (std::size_t li = 0; li + 1 < nlev; ++li) {
    CauchyRow row;
    row.n_coarse = spec.levels[li];
    row.n_fine = spec.levels[li + 1];
    for (std::size_t it = 0; it < nt; ++it) {
      const double* a = rho[li].data() + it * nk;
      const double* b = rho[li + 1].data() + it * nk;
      double acc = 0.0;
      for (std::size_t i = 0; i < nk; ++i) {
        const double k = (static_cast<double>(i) + 0.5) * h;
        acc += std::pow(1.0 + k * k, -spec.alpha) * (b[i] - a[i]);
      }
      // both half-lines, times the grid pitch
      row.value = std::max(row.value, spec.domain_volume * 2.0 * h * acc);
    }
    study.field_rows.push_back(row);

    if (spec.squares) {
      CauchyRow sq;
      sq.n_coarse = row.n_coarse;
      sq.n_fine = row.n_fine;
      for (std::size_t it = 0; it < nt; ++it) {
        const double* a = conv[li].data() + it * nconv;
        const double* b = conv[li + 1].data() + it * nconv;
        double acc = 0.0;
        for (std::size_t j = 0; j < nconv; ++j) {
          const double k =
              (static_cast<double>(j) - (static_cast<double>(2 * nk) - 1.0)) *
              h;
          acc += std::pow(1.0 + k * k, -2.0 * spec.alpha) * (b[j] - a[j]);
        }
        // Wick pairing doubles the density; grid is already two-sided
        sq.value = std::max(sq.value, spec.domain_volume * 2.0 * h * acc);
      }
      study.square_rows.push_back(sq);
    }
  }
  return study;
}

}  // namespace

CauchyStudy cauchy_decay(const Hurst& hurst, const CauchySpec& spec) {
  validate(hurst, spec);
  return spec.replicas == 0 ? closed_form_study(hurst, spec)
                            : monte_carlo_study(hurst, spec);
}

CauchyStudy cauchy_decay_quadrature(const Hurst& hurst,
                                    const QuadCauchySpec& spec) {
  validate_quadrature(hurst, spec);
  return quadrature_study(hurst, spec);
}

bool decaying(const std::vector<CauchyRow>& rows, int allowed_inversions) {
  int inversions = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (!(rows[i + 1].value < rows[i].value)) ++inversions;
  }
  return inversions <= allowed_inversions;
}

std::vector<std::uint8_t> ball_mask(const Grid& g, double radius) {
  if (!(radius > 0.0)) fail_domain("InvalidWindow: mask radius must be > 0");
  std::vector<std::uint8_t> mask(g.total());
  std::vector<double> x(g.d);
  for (std::size_t i = 0; i < g.total(); ++i) {
    g.coords(i, x.data());
    double r2 = 0.0;
    for (int a = 0; a < g.d; ++a) r2 += x[a] * x[a];
    mask[i] = r2 <= radius * radius;
  }
  return mask;
}

}  // namespace fwave
