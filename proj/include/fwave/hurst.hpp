#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "fwave/error.hpp"

namespace fwave {

// Regime of the model at a given Hurst vector, driven by the total index
// sum(h0..hd) against the spatial dimension d:
//   Regular:     sum > d - 1/2   (squares need no renormalization)
//   Wick:        d - 3/4 < sum <= d - 1/2  (renormalized squares required)
//   Unsupported: sum <= d - 3/4
enum class Regime { Regular, Wick, Unsupported };

// Hurst exponents (h0, h1, ..., hd): h0 along time, the rest along the d
// spatial axes. Every component must lie strictly inside (0,1).
struct Hurst {
  double h0 = 0.5;
  std::vector<double> hsp;

  int dim_space() const { return static_cast<int>(hsp.size()); }
  double sum_space() const {
    return std::accumulate(hsp.begin(), hsp.end(), 0.0);
  }
  double sum_total() const { return h0 + sum_space(); }
  double component(std::size_t axis) const {  // axis 0 = time
    return axis == 0 ? h0 : hsp.at(axis - 1);
  }
};

inline Hurst make_hurst(const std::vector<double>& h) {
  if (h.size() < 2) fail_domain("InvalidHurst: need h0 plus at least one spatial component");
  for (double v : h) {
    if (!(v > 0.0 && v < 1.0)) fail_domain("InvalidHurst: components must lie in (0,1)");
  }
  Hurst out;
  out.h0 = h[0];
  out.hsp.assign(h.begin() + 1, h.end());
  return out;
}

inline Regime classify_regime(const Hurst& h) {
  const double d = static_cast<double>(h.dim_space());
  const double s = h.sum_total();
  if (s > d - 0.5) return Regime::Regular;
  if (s > d - 0.75) return Regime::Wick;
  return Regime::Unsupported;
}

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Regular: return "regular";
    case Regime::Wick: return "wick";
    default: return "unsupported";
  }
}

}  // namespace fwave
