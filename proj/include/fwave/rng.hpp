#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace fwave {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// uniform in (0,1]
inline double bits_to_u01(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Keyed counter stream. Draws depend only on the key, never on call history
// elsewhere, so any keyed object can be rematerialized bit-identically.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double next_u01() { return bits_to_u01(next_u64()); }

  // complex with independent N(0, 1/2) real and imaginary parts, so
  // E|z|^2 = 1
  std::complex<double> next_std_complex_gaussian() {
    const double u1 = next_u01();
    const double u2 = next_u01();
    const double amp = std::sqrt(-std::log(u1));
    return {amp * std::cos(2.0 * M_PI * u2), amp * std::sin(2.0 * M_PI * u2)};
  }

  double next_gaussian() {
    const double u1 = next_u01();
    const double u2 = next_u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
}

}  // namespace fwave
