#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fwave {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform of length n = 2^k, unnormalized:
//   sign = -1:  X_c = sum_j x_j e^{-2 pi i c j / n}   (forward)
//   sign = +1:  x_j = sum_c X_c e^{+2 pi i c j / n}   (inverse, times n)
void fft_1d(cplx* data, std::size_t n, int sign);

// Same transform along every axis of a row-major array with the given
// extents (each a power of two).
void fft_nd(cplx* data, const std::vector<std::size_t>& dims, int sign);

}  // namespace fwave
