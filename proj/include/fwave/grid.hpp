#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fwave/error.hpp"
#include "fwave/fft.hpp"

namespace fwave {

// Uniform periodic grid on the torus [-L, L)^d with m points per axis
// (m a power of two). Grid frequencies are k = (pi/L) * c for integer
// c in [-m/2, m/2); storage order follows the FFT convention
// (c mod m along each axis).
struct Grid {
  int d = 1;
  int m = 64;
  double half_width = 1.0;

  Grid() = default;
  Grid(int d_, int m_, double half_width_) : d(d_), m(m_), half_width(half_width_) {
    if (d < 1 || d > 4) fail_domain("DimensionUnsupported: need 1 <= d <= 4");
    if (!is_pow2(static_cast<std::size_t>(m))) {
      fail_domain("GridAliasing: points per axis must be a power of two");
    }
    if (!(half_width > 0.0)) fail_domain("InvalidWindow: torus half width must be > 0");
  }

  std::size_t total() const {
    std::size_t t = 1;
    for (int a = 0; a < d; ++a) t *= static_cast<std::size_t>(m);
    return t;
  }
  double spacing() const { return 2.0 * half_width / m; }
  double point(int j) const { return -half_width + j * spacing(); }
  double cell_volume() const { return std::pow(spacing(), d); }
  double volume() const { return std::pow(2.0 * half_width, d); }

  int kindex(int s) const { return s < m / 2 ? s : s - m; }
  int kstorage(int c) const { return c >= 0 ? c : c + m; }
  double fundamental() const { return M_PI / half_width; }
  double freq_of_storage(int s) const { return fundamental() * kindex(s); }
  double nyquist() const { return fundamental() * (m / 2); }

  std::vector<std::size_t> dims() const {
    return std::vector<std::size_t>(d, static_cast<std::size_t>(m));
  }

  // decompose flat storage index into per-axis storage indices
  void unravel(std::size_t flat, int* s) const {
    for (int a = d - 1; a >= 0; --a) {
      s[a] = static_cast<int>(flat % m);
      flat /= m;
    }
  }
  // Euclidean |k| of a flat storage index
  double knorm(std::size_t flat) const {
    double acc = 0.0;
    for (int a = d - 1; a >= 0; --a) {
      const int s = static_cast<int>(flat % m);
      flat /= m;
      const double k = freq_of_storage(s);
      acc += k * k;
    }
    return std::sqrt(acc);
  }
  void coords(std::size_t flat, double* x) const {
    for (int a = d - 1; a >= 0; --a) {
      x[a] = point(static_cast<int>(flat % m));
      flat /= m;
    }
  }

  bool operator==(const Grid& o) const {
    return d == o.d && m == o.m && half_width == o.half_width;
  }
};

// Spectrum F with f(x_j) = sum_c F_c e^{i k_c x_j}. Conversions carry the
// per-axis parity twiddle (-1)^c that comes from the grid origin at -L.

// f -> F (forward, normalized by m^d)
void to_spectrum(const Grid& g, const double* f, cplx* spec);
void to_spectrum_complex(const Grid& g, const cplx* f, cplx* spec);
// F -> f; imaginary parts are returned so callers can check realness
void from_spectrum(const Grid& g, const cplx* spec, cplx* f);

// parity (-1)^{sum_axis c_axis} of a flat storage index
int spectrum_parity(const Grid& g, std::size_t flat);

}  // namespace fwave
