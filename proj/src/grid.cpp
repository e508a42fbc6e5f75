#include "fwave/grid.hpp"

namespace fwave {

// With x_j = -L + j h and k_c = (pi/L) c,
//   e^{i k_c x_j} = (-1)^c omega^{c j},  omega = e^{2 pi i / m},
// so synthesis is an unnormalized inverse DFT of the parity-twiddled
// coefficients.  m is even, so parity by storage index equals parity
// by signed index.

int spectrum_parity(const Grid& g, std::size_t flat) {
  int acc = 0;
  for (int a = 0; a < g.d; ++a) {
    acc += static_cast<int>(flat % g.m);
    flat /= static_cast<std::size_t>(g.m);
  }
  return (acc & 1) ? -1 : 1;
}

void from_spectrum(const Grid& g, const cplx* spec, cplx* f) {
  const std::size_t n = g.total();
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = spec[i] * static_cast<double>(spectrum_parity(g, i));
  }
  fft_nd(f, g.dims(), +1);
}

void to_spectrum_complex(const Grid& g, const cplx* fin, cplx* spec) {
  const std::size_t n = g.total();
  for (std::size_t i = 0; i < n; ++i) spec[i] = fin[i];
  fft_nd(spec, g.dims(), -1);
  const double norm = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    spec[i] *= norm * static_cast<double>(spectrum_parity(g, i));
  }
}

void to_spectrum(const Grid& g, const double* f, cplx* spec) {
  const std::size_t n = g.total();
  std::vector<cplx> tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = cplx(f[i], 0.0);
  to_spectrum_complex(g, tmp.data(), spec);
}

}  // namespace fwave
