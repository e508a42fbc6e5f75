#include "fwave/field.hpp"

#include <cmath>
#include <cstddef>

#include "fwave/error.hpp"
#include "fwave/gamma.hpp"

namespace fwave {
namespace {

// Spectral L2 mass of the one-axis kernel (e^{itx}-1)/|x|^{H+1/2} over the
// whole line: integral of |e^{ix}-1|^2 |x|^{-2H-1} dx = 2 pi / (Gamma(2H+1)
// sin(pi H)). Dividing each axis by sqrt of this normalizes B_n toward the
// unit-scale fractional sheet (Var -> prod t^{2H0} |x_i|^{2Hi}).
double fbm_axis_mass(double h) {
  return 2.0 * M_PI / (std::tgamma(2.0 * h + 1.0) * std::sin(M_PI * h));
}

cplx unit_phase(int quarter_turns) {
  switch (quarter_turns & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

cplx cis(double a) { return {std::cos(a), std::sin(a)}; }

// e^{i a} - 1 = 2 i sin(a/2) e^{i a/2}, stable for small a
cplx expim1(double a) {
  const double s = std::sin(0.5 * a);
  return {-2.0 * s * s, 2.0 * s * std::cos(0.5 * a)};
}

void check_times(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
      fail_domain("InvalidWindow: times must be sorted and nonnegative");
    }
  }
}

}  // namespace

const char* field_kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::NoiseB: return "NOISE_B";
    case FieldKind::LinearPsi: return "LINEAR_PSI";
    case FieldKind::WickPsi2: return "WICK_PSI2";
    case FieldKind::SolutionV: return "SOLUTION_V";
    default: return "SOLUTION_U";
  }
}

CellTable build_cell_table(const Lattice& lat) {
  const auto& half = lat.half_cells();
  const int d = lat.dim_space();
  const std::size_t nc = half.size();

  CellTable tab;
  tab.d = d;
  tab.unit = unit_phase(d + 1);
  double mass = fbm_axis_mass(lat.hurst().h0);
  for (int i = 0; i < d; ++i) mass *= fbm_axis_mass(lat.hurst().hsp[i]);
  tab.b_norm = 1.0 / std::sqrt(mass);

  tab.xi.resize(nc);
  tab.rnorm.resize(nc);
  tab.sgn.resize(nc);
  tab.amp.resize(nc);
  tab.addr.resize(nc);
  for (int a = 0; a < d; ++a) tab.eta[a].resize(nc);

  double ctr[kMaxAxes];
  for (std::size_t k = 0; k < nc; ++k) {
    lat.center(half[k], ctr);
    tab.xi[k] = ctr[0];
    double r2 = 0.0;
    double sg = 1.0;
    for (int a = 0; a < d; ++a) {
      const double e = ctr[1 + a];
      tab.eta[a][k] = e;
      r2 += e * e;
      if (e < 0.0) sg = -sg;
    }
    tab.rnorm[k] = std::sqrt(r2);
    tab.sgn[k] = sg;
    tab.amp[k] = std::sqrt(lat.cell_weight(half[k]));
    tab.addr[k] = lat.address(half[k]);
  }
  return tab;
}

std::vector<cplx> materialize_draws(const CellTable& cells, const NoiseKey& key) {
  const std::size_t nc = cells.size();
  std::vector<cplx> z(nc);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nc); ++i) {
    z[i] = cell_draw(key, cells.addr[i]);
  }
  return z;
}

std::vector<cplx> time_table(const CellTable& cells,
                             const std::vector<double>& times, FieldKind kind) {
  if (kind != FieldKind::LinearPsi && kind != FieldKind::NoiseB) {
    fail_domain("KindMismatch: only NOISE_B and LINEAR_PSI can be synthesized");
  }
  check_times(times);
  const std::size_t nc = cells.size();
  const std::size_t nt = times.size();
  std::vector<cplx> tab(nt * nc);
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(nt * nc);
  if (kind == FieldKind::LinearPsi) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t f = 0; f < total; ++f) {
      const std::size_t it = static_cast<std::size_t>(f) / nc;
      const std::size_t c = static_cast<std::size_t>(f) % nc;
      const cplx g = gamma_eval(times[it], cells.xi[c], cells.rnorm[c]).value;
      tab[f] = cells.unit * (cells.sgn[c] * cells.amp[c]) * g;
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t f = 0; f < total; ++f) {
      const std::size_t it = static_cast<std::size_t>(f) / nc;
      const std::size_t c = static_cast<std::size_t>(f) % nc;
      tab[f] = (cells.b_norm * cells.amp[c] / cells.xi[c]) *
               expim1(times[it] * cells.xi[c]);
    }
  }
  return tab;
}

Field sample_field_grid(const Lattice& lat, const Grid& grid,
                        const std::vector<double>& times, const NoiseKey& key,
                        FieldKind kind, SampleStats* stats) {
  if (grid.d != lat.dim_space()) {
    fail_domain("DimensionUnsupported: grid and lattice dimension differ");
  }
  // every lattice center must bin strictly inside the Nyquist index
  if (std::lround(lat.radius() * grid.half_width / M_PI) >= grid.m / 2) {
    fail_domain(
        "GridAliasing: lattice frequencies exceed grid Nyquist; increase grid "
        "points or shrink the box");
  }
  check_times(times);

  const CellTable cells = build_cell_table(lat);
  const std::vector<cplx> z = materialize_draws(cells, key);
  const std::vector<cplx> tt = time_table(cells, times, kind);

  const int d = grid.d;
  const std::size_t total = grid.total();
  const std::size_t nc = cells.size();
  const std::size_t nt = times.size();

  std::array<std::size_t, 4> stride{};
  {
    std::size_t s = 1;
    for (int a = d - 1; a >= 0; --a) {
      stride[a] = s;
      s *= static_cast<std::size_t>(grid.m);
    }
  }

  // binned storage indices, cell frequency and its mirror
  std::vector<int> sp(nc * d), sm(nc * d);
  std::vector<double> inv(kind == FieldKind::NoiseB ? nc : 0, 1.0);
  for (std::size_t c = 0; c < nc; ++c) {
    double invf = 1.0;
    for (int a = 0; a < d; ++a) {
      const int ci = static_cast<int>(
          std::lround(cells.eta[a][c] * grid.half_width / M_PI));
      sp[c * d + a] = grid.kstorage(ci);
      sm[c * d + a] = grid.kstorage(-ci);
      if (kind == FieldKind::NoiseB) invf /= std::abs(cells.eta[a][c]);
    }
    if (!inv.empty()) inv[c] = invf;
  }

  Field out(grid, times);
  out.kind = kind;
  out.n_level = lat.n_level();
  out.seed = key.seed;
  out.stream = key.stream;
  std::vector<double> slice_max_im(nt, 0.0), slice_sumsq(nt, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t it = 0; it < static_cast<std::ptrdiff_t>(nt); ++it) {
    std::vector<cplx> spec(total, cplx(0.0, 0.0));
    const cplx* trow = tt.data() + static_cast<std::size_t>(it) * nc;
    if (kind == FieldKind::LinearPsi) {
      for (std::size_t c = 0; c < nc; ++c) {
        const cplx w = z[c] * trow[c];
        std::size_t fp = 0, fm = 0;
        for (int a = 0; a < d; ++a) {
          fp += static_cast<std::size_t>(sp[c * d + a]) * stride[a];
          fm += static_cast<std::size_t>(sm[c * d + a]) * stride[a];
        }
        spec[fp] += w;
        spec[fm] += std::conj(w);
      }
    } else {
      // prod_i (e^{i x_i eta_i} - 1) expands over axis subsets; each term
      // is a plain phase and bins like a cell at the masked frequency
      for (std::size_t c = 0; c < nc; ++c) {
        const cplx base = z[c] * trow[c] * inv[c];
        for (unsigned sub = 0; sub < (1u << d); ++sub) {
          const int pc = __builtin_popcount(sub);
          const cplx w = ((d - pc) & 1) ? -base : base;
          std::size_t fp = 0, fm = 0;
          for (int a = 0; a < d; ++a) {
            if (sub >> a & 1u) {
              fp += static_cast<std::size_t>(sp[c * d + a]) * stride[a];
              fm += static_cast<std::size_t>(sm[c * d + a]) * stride[a];
            }
          }
          spec[fp] += w;
          spec[fm] += std::conj(w);
        }
      }
    }
    from_spectrum(grid, spec.data(), spec.data());
    double* dst = out.slice(static_cast<std::size_t>(it));
    double mx = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      const double re = spec[i].real();
      const double im = std::abs(spec[i].imag());
      dst[i] = re;
      if (im > mx) mx = im;
      ss += re * re;
    }
    slice_max_im[it] = mx;
    slice_sumsq[it] = ss;
  }

  if (stats) {
    double mx = 0.0, ss = 0.0;
    for (std::size_t it = 0; it < nt; ++it) {
      if (slice_max_im[it] > mx) mx = slice_max_im[it];
      ss += slice_sumsq[it];
    }
    const double rms = std::sqrt(ss / static_cast<double>(nt * total));
    stats->max_imag_residual = mx == 0.0 ? 0.0 : mx / std::max(rms, 1e-300);
  }
  return out;
}

PointSampler::PointSampler(const Lattice& lat, std::vector<double> times,
                           std::vector<std::array<double, 4>> points,
                           FieldKind kind)
    : cells_(build_cell_table(lat)),
      times_(std::move(times)),
      points_(std::move(points)),
      kind_(kind) {
  check_times(times_);
  ttab_ = time_table(cells_, times_, kind_);

  const std::size_t nc = cells_.size();
  const std::size_t np = points_.size();
  const int d = cells_.d;
  stab_.resize(np * nc);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(np); ++p) {
    cplx* row = stab_.data() + static_cast<std::size_t>(p) * nc;
    const auto& x = points_[static_cast<std::size_t>(p)];
    for (std::size_t c = 0; c < nc; ++c) {
      if (kind_ == FieldKind::LinearPsi) {
        double ph = 0.0;
        for (int a = 0; a < d; ++a) ph += cells_.eta[a][c] * x[a];
        row[c] = cis(ph);
      } else {
        cplx f(1.0, 0.0);
        for (int a = 0; a < d; ++a) {
          f *= expim1(cells_.eta[a][c] * x[a]) / std::abs(cells_.eta[a][c]);
        }
        row[c] = f;
      }
    }
  }
}

std::vector<double> PointSampler::sample(const NoiseKey& key) const {
  const std::size_t nc = cells_.size();
  const std::size_t np = points_.size();
  const std::size_t nt = times_.size();
  const std::vector<cplx> z = materialize_draws(cells_, key);

  std::vector<double> out(nt * np, 0.0);
  std::vector<cplx> zt(nc);
  for (std::size_t it = 0; it < nt; ++it) {
    const cplx* trow = ttab_.data() + it * nc;
    for (std::size_t c = 0; c < nc; ++c) zt[c] = z[c] * trow[c];
    for (std::size_t p = 0; p < np; ++p) {
      const cplx* srow = stab_.data() + p * nc;
      double acc = 0.0;
      for (std::size_t c = 0; c < nc; ++c) {
        acc += zt[c].real() * srow[c].real() - zt[c].imag() * srow[c].imag();
      }
      out[it * np + p] = 2.0 * acc;
    }
  }
  return out;
}

std::vector<double> sample_field_points(
    const Lattice& lat, const std::vector<double>& times,
    const std::vector<std::array<double, 4>>& points, const NoiseKey& key,
    FieldKind kind) {
  return PointSampler(lat, times, points, kind).sample(key);
}

}  // namespace fwave
