#pragma once

#include <vector>

#include "fwave/field.hpp"
#include "fwave/grid.hpp"

namespace fwave {
namespace reference {

// Serial reference kernels. Quadratic or per-point cost, no OpenMP, no FFT:
// these are the independent implementations the fast paths are tested and
// benchmarked against.

// out[j] = sum_storage spec[s] * e^{i k_s x_j}, evaluated directly
void naive_from_spectrum(const Grid& g, const cplx* spec, cplx* out);

// exact-phase grid synthesis: per grid point trigonometric sums, no
// frequency binning
Field direct_field_grid(const Lattice& lat, const Grid& grid,
                        const std::vector<double>& times, const NoiseKey& key,
                        FieldKind kind);

// binned-frequency grid synthesis evaluated without the FFT; matches
// sample_field_grid to rounding
Field binned_field_grid(const Lattice& lat, const Grid& grid,
                        const std::vector<double>& times, const NoiseKey& key,
                        FieldKind kind);

// O(nt^2) wave Duhamel integral: per output time a fresh trapezoid sum of
// sin((t-s)|k|)/|k| over the source history, mode by mode
Field direct_duhamel(const Field& source);

}  // namespace reference
}  // namespace fwave
