#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fwave/grid.hpp"
#include "fwave/lattice.hpp"
#include "fwave/noise.hpp"

namespace fwave {

enum class FieldKind {
  NoiseB,     // truncated fractional noise B_n
  LinearPsi,  // linear wave solution Psi_n driven by that noise
  WickPsi2,   // renormalized square of the linear solution
  SolutionV,  // remainder solved by fixed point
  SolutionU,  // full solution Psi + v
};

const char* field_kind_name(FieldKind k);

// Real scalar field tabulated on time slices over a spatial grid,
// time-major storage, carrying its provenance.
struct Field {
  Grid grid;
  std::vector<double> times;
  std::vector<double> v;

  FieldKind kind = FieldKind::LinearPsi;
  int n_level = -1;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  Field() = default;
  Field(const Grid& g, std::vector<double> ts)
      : grid(g), times(std::move(ts)), v(times.size() * g.total(), 0.0) {}

  std::size_t slice_size() const { return grid.total(); }
  double* slice(std::size_t it) { return v.data() + it * slice_size(); }
  const double* slice(std::size_t it) const {
    return v.data() + it * slice_size();
  }
};

inline std::vector<double> uniform_times(double t_end, int steps) {
  if (!(t_end > 0.0) || steps < 1) fail_domain("InvalidWindow: bad time grid");
  std::vector<double> ts(steps + 1);
  for (int i = 0; i <= steps; ++i) ts[i] = t_end * i / steps;
  return ts;
}

// Synthesis-ready view of the canonical half lattice, structure-of-arrays.
struct CellTable {
  int d = 0;
  cplx unit{1.0, 0.0};  // i^(d+1); makes the Psi synthesis real
  double b_norm = 1.0;  // per-axis fBm normalization for NoiseB
  std::vector<double> xi;     // time-frequency center, > 0
  std::vector<double> rnorm;  // |spatial center|
  std::vector<double> sgn;    // product of spatial side signs
  std::vector<double> amp;    // sqrt(cell weight)
  std::array<std::vector<double>, 4> eta;  // spatial center components
  std::vector<std::uint64_t> addr;

  std::size_t size() const { return xi.size(); }
};

CellTable build_cell_table(const Lattice& lat);

// One draw per canonical cell, in half_cells() order.
std::vector<cplx> materialize_draws(const CellTable& cells, const NoiseKey& key);

// Time-dependent per-cell synthesis factor, row-major [times][cells]:
//   LinearPsi: i^(d+1) * sgn * amp * gamma_t(xi, rnorm)
//   NoiseB:    b_norm * amp * (e^{i t xi} - 1) / xi
std::vector<cplx> time_table(const CellTable& cells,
                             const std::vector<double>& times, FieldKind kind);

struct SampleStats {
  // max |Im| of the synthesis relative to the RMS of the field
  double max_imag_residual = 0.0;
};

// FFT synthesis on the torus grid: cells are binned to the nearest grid
// frequency, each slice is one inverse transform. Errors with GridAliasing
// if the lattice reaches past the grid Nyquist.
Field sample_field_grid(const Lattice& lat, const Grid& grid,
                        const std::vector<double>& times, const NoiseKey& key,
                        FieldKind kind, SampleStats* stats = nullptr);

// Exact-phase synthesis at scattered points (no frequency binning). Build
// once, then sample many realizations cheaply; values are [times][points]
// row-major.
class PointSampler {
 public:
  PointSampler(const Lattice& lat, std::vector<double> times,
               std::vector<std::array<double, 4>> points, FieldKind kind);

  std::vector<double> sample(const NoiseKey& key) const;

  const CellTable& cells() const { return cells_; }
  std::size_t n_times() const { return times_.size(); }
  std::size_t n_points() const { return points_.size(); }

 private:
  CellTable cells_;
  std::vector<double> times_;
  std::vector<std::array<double, 4>> points_;
  FieldKind kind_;
  std::vector<cplx> ttab_;  // [times][cells]
  std::vector<cplx> stab_;  // [points][cells] spatial factors
};

// convenience wrapper for a single realization
std::vector<double> sample_field_points(
    const Lattice& lat, const std::vector<double>& times,
    const std::vector<std::array<double, 4>>& points, const NoiseKey& key,
    FieldKind kind);

}  // namespace fwave
