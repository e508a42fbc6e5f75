#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fwave/hurst.hpp"

namespace fwave {

// Max axes = 1 (time-frequency) + 4 (space).
inline constexpr int kMaxAxes = 5;

// One frequency interval on a signed axis. Cells never straddle zero:
// 0 <= lo < hi on the positive side, lo < hi <= 0 on the negative side.
struct AxisCell {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

// integral of |x|^p over [lo, hi], the interval on one side of zero; p > -1.
double cell_power_measure(double lo, double hi, double p);

// Positive-side ladder boundaries: {0} then 2^(k/cpo) for
// k = -(cpo-1) .. n*cpo. Geometric toward zero so the power-law weight is
// resolved; boundaries for shared k coincide across levels, which is what
// makes lattices of different levels nest.
std::vector<double> ladder_boundaries(int n_level, int cells_per_octave);

enum class DomainMode {
  BallSpatial,  // keep a cell iff its spatial center lies in the Euclidean
                // ball of radius 2^n (the time-frequency axis stays a box)
  Box,          // pure product box
};

// Reference to one product cell: per-axis ladder index (0 = innermost) and
// side. Ladder indices do not depend on the truncation level, so the same
// CellRef denotes the same frequency box in every lattice that contains it.
struct CellRef {
  std::array<std::int16_t, kMaxAxes> idx{};
  std::array<std::int8_t, kMaxAxes> side{};
};

// Product-box frequency lattice over (1+d) axes; axis 0 is the
// time-frequency axis (xi), axes 1..d are spatial (eta). Only the canonical
// half with xi > 0 is enumerated; the other half is the Hermitian mirror.
class Lattice {
 public:
  Lattice(Hurst hurst, int n_level, int cells_per_octave,
          DomainMode mode = DomainMode::BallSpatial);

  const Hurst& hurst() const { return hurst_; }
  int n_level() const { return n_level_; }
  int cells_per_octave() const { return cpo_; }
  DomainMode mode() const { return mode_; }
  int dim_space() const { return hurst_.dim_space(); }
  int n_axes() const { return dim_space() + 1; }
  double radius() const { return radius_; }  // 2^n
  int ladder_size() const { return static_cast<int>(ladder_.size()) - 1; }

  const std::vector<double>& boundaries() const { return ladder_; }
  const std::vector<CellRef>& half_cells() const { return half_; }
  // total kept cells, both halves
  std::size_t cell_count() const { return 2 * half_.size(); }

  AxisCell axis_cell(int axis, const CellRef& c) const;
  // center frequency vector [xi, eta_1, ..., eta_d]
  void center(const CellRef& c, double* out) const;
  double spatial_center_norm(const CellRef& c) const;

  // Product measure of prod_axes |x_axis|^(1-2h_axis) over the cell.
  double cell_weight(const CellRef& c) const;

  // The reflected cell (all axes mirrored); its own mirror is the input.
  CellRef mirrored(const CellRef& c) const;

  // Stable 64-bit address of a canonical-half cell, equal across levels.
  // Packing: 12 bits xi ladder index, then 13 bits per spatial axis
  // (12 index + 1 sign). Rejects non-canonical cells.
  std::uint64_t address(const CellRef& c) const;

  // Would this cell be kept by the lattice of the given coarser/finer level
  // (same cells_per_octave and mode)? Monotone in level, which gives the
  // nesting kept(n) subset-of kept(m) for n <= m.
  bool cell_in_level(const CellRef& c, int level) const;

 private:
  Hurst hurst_;
  int n_level_;
  int cpo_;
  DomainMode mode_;
  double radius_;
  std::vector<double> ladder_;
  std::vector<CellRef> half_;
};

}  // namespace fwave
