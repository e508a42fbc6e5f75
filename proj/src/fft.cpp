#include "fwave/fft.hpp"

#include <cmath>

#include "fwave/error.hpp"

namespace fwave {

void fft_1d(cplx* data, std::size_t n, int sign) {
  if (!is_pow2(n)) fail_domain("GridAliasing: transform length must be a power of two");
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = data[i + j];
        const cplx v = data[i + j + len / 2] * w;
        data[i + j] = u + v;
        data[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

void fft_nd(cplx* data, const std::vector<std::size_t>& dims, int sign) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  std::vector<cplx> line;
  std::size_t stride = 1;
  for (std::size_t ax = dims.size(); ax-- > 0;) {
    const std::size_t n = dims[ax];
    line.resize(n);
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        cplx* p = data + base + off;
        for (std::size_t j = 0; j < n; ++j) line[j] = p[j * stride];
        fft_1d(line.data(), n, sign);
        for (std::size_t j = 0; j < n; ++j) p[j * stride] = line[j];
      }
    }
    stride *= n;
  }
}

}  // namespace fwave
