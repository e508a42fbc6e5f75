#pragma once

#include <complex>
#include <cstdint>

#include "fwave/rng.hpp"

namespace fwave {

// Identifies one noise realization. Draws are keyed by
// (seed, stream, cell address), never by enumeration order, so a cell
// shared by two truncation levels receives the same draw in both.
struct NoiseKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// standard complex Gaussian (E|z|^2 = 1) for one canonical-half cell
inline std::complex<double> cell_draw(const NoiseKey& key, std::uint64_t address) {
  CounterRng rng(mix_key(mix_key(key.seed, key.stream), address));
  return rng.next_std_complex_gaussian();
}

}  // namespace fwave
