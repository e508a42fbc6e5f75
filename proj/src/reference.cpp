#include "fwave/reference.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "fwave/error.hpp"

namespace fwave {
namespace reference {
namespace {

cplx phase(double a) { return {std::cos(a), std::sin(a)}; }

// independent reimplementation of the synthesis coefficient binning;
// kept deliberately plain
std::vector<cplx> bin_spectrum(const Grid& grid, const CellTable& cells,
                               const std::vector<cplx>& z, const cplx* trow,
                               FieldKind kind) {
  const int d = grid.d;
  std::vector<cplx> spec(grid.total(), cplx(0.0, 0.0));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (kind == FieldKind::LinearPsi) {
      const cplx w = z[c] * trow[c];
      std::size_t fp = 0, fm = 0;
      for (int a = 0; a < d; ++a) {
        const int ci = static_cast<int>(
            std::lround(cells.eta[a][c] * grid.half_width / M_PI));
        fp = fp * grid.m + static_cast<std::size_t>(grid.kstorage(ci));
        fm = fm * grid.m + static_cast<std::size_t>(grid.kstorage(-ci));
      }
      spec[fp] += w;
      spec[fm] += std::conj(w);
    } else {
      cplx base = z[c] * trow[c];
      for (int a = 0; a < d; ++a) base /= std::abs(cells.eta[a][c]);
      for (unsigned sub = 0; sub < (1u << d); ++sub) {
        cplx w = base;
        for (int a = 0; a < d; ++a) {
          if (!(sub >> a & 1u)) w = -w;
        }
        std::size_t fp = 0, fm = 0;
        for (int a = 0; a < d; ++a) {
          int ci = 0;
          if (sub >> a & 1u) {
            ci = static_cast<int>(
                std::lround(cells.eta[a][c] * grid.half_width / M_PI));
          }
          fp = fp * grid.m + static_cast<std::size_t>(grid.kstorage(ci));
          fm = fm * grid.m + static_cast<std::size_t>(grid.kstorage(-ci));
        }
        spec[fp] += w;
        spec[fm] += std::conj(w);
      }
    }
  }
  return spec;
}

}  // namespace

void naive_from_spectrum(const Grid& g, const cplx* spec, cplx* out) {
  const std::size_t n = g.total();
  std::vector<int> sidx(g.d);
  std::vector<int> jidx(g.d);
  for (std::size_t j = 0; j < n; ++j) {
    g.unravel(j, jidx.data());
    cplx acc(0.0, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      g.unravel(s, sidx.data());
      double ph = 0.0;
      for (int a = 0; a < g.d; ++a) {
        ph += g.freq_of_storage(sidx[a]) * g.point(jidx[a]);
      }
      acc += spec[s] * phase(ph);
    }
    out[j] = acc;
  }
}

Field direct_field_grid(const Lattice& lat, const Grid& grid,
                        const std::vector<double>& times, const NoiseKey& key,
                        FieldKind kind) {
  if (grid.d != lat.dim_space()) {
    fail_domain("DimensionUnsupported: grid and lattice dimension differ");
  }
  const CellTable cells = build_cell_table(lat);
  const std::vector<cplx> z = materialize_draws(cells, key);
  const std::vector<cplx> tt = time_table(cells, times, kind);

  Field out(grid, times);
  const std::size_t total = grid.total();
  double x[4];
  for (std::size_t it = 0; it < times.size(); ++it) {
    const cplx* trow = tt.data() + it * cells.size();
    double* dst = out.slice(it);
    for (std::size_t j = 0; j < total; ++j) {
      grid.coords(j, x);
      double acc = 0.0;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        cplx sfac;
        if (kind == FieldKind::LinearPsi) {
          double ph = 0.0;
          for (int a = 0; a < grid.d; ++a) ph += cells.eta[a][c] * x[a];
          sfac = phase(ph);
        } else {
          sfac = cplx(1.0, 0.0);
          for (int a = 0; a < grid.d; ++a) {
            const double e = cells.eta[a][c];
            sfac *= (phase(e * x[a]) - cplx(1.0, 0.0)) / std::abs(e);
          }
        }
        const cplx term = z[c] * trow[c] * sfac;
        acc += 2.0 * term.real();
      }
      dst[j] = acc;
    }
  }
  return out;
}

Field binned_field_grid(const Lattice& lat, const Grid& grid,
                        const std::vector<double>& times, const NoiseKey& key,
                        FieldKind kind) {
  if (grid.d != lat.dim_space()) {
    fail_domain("DimensionUnsupported: grid and lattice dimension differ");
  }
  if (std::lround(lat.radius() * grid.half_width / M_PI) >= grid.m / 2) {
    fail_domain("GridAliasing: lattice frequencies exceed grid Nyquist");
  }
  const CellTable cells = build_cell_table(lat);
  const std::vector<cplx> z = materialize_draws(cells, key);
  const std::vector<cplx> tt = time_table(cells, times, kind);

  Field out(grid, times);
  const std::size_t total = grid.total();
  std::vector<cplx> vals(total);
  for (std::size_t it = 0; it < times.size(); ++it) {
    const std::vector<cplx> spec =
        bin_spectrum(grid, cells, z, tt.data() + it * cells.size(), kind);
    naive_from_spectrum(grid, spec.data(), vals.data());
    double* dst = out.slice(it);
    for (std::size_t i = 0; i < total; ++i) dst[i] = vals[i].real();
  }
  return out;
}

Field direct_duhamel(const Field& source) {
  const Grid& g = source.grid;
  const std::size_t n = g.total();
  const std::size_t nt = source.times.size();
  if (nt < 2 || source.times.front() != 0.0) {
    fail_domain("InvalidWindow: time grid must start at 0 with >= 2 points");
  }

  std::vector<std::vector<cplx>> spec(nt, std::vector<cplx>(n));
  for (std::size_t it = 0; it < nt; ++it) {
    to_spectrum(g, source.slice(it), spec[it].data());
  }

  Field out(g, source.times);
  std::vector<cplx> mode(n);
  for (std::size_t j = 1; j < nt; ++j) {
    const double t = source.times[j];
    std::fill(mode.begin(), mode.end(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const double k = g.knorm(i);
      for (std::size_t s = 0; s + 1 <= j; ++s) {
        const double s0 = source.times[s];
        const double s1 = source.times[s + 1];
        const double hdt = 0.5 * (s1 - s0);
        const double w0 = k == 0.0 ? t - s0 : std::sin((t - s0) * k) / k;
        const double w1 = k == 0.0 ? t - s1 : std::sin((t - s1) * k) / k;
        mode[i] += hdt * (w0 * spec[s][i] + w1 * spec[s + 1][i]);
      }
    }
    from_spectrum(g, mode.data(), mode.data());
    double* dst = out.slice(j);
    for (std::size_t i = 0; i < n; ++i) dst[i] = mode[i].real();
  }
  return out;
}

}  // namespace reference
}  // namespace fwave
