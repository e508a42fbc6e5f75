#include "fwave/lattice.hpp"

#include <cmath>
#include <cstdio>

namespace fwave {

double cell_power_measure(double lo, double hi, double p) {
  if (!(p > -1.0)) fail_domain("ExponentNotIntegrable: need p > -1");
  if (!(lo < hi)) fail_domain("StraddlesZero: empty or inverted interval");
  if (lo < 0.0 && hi > 0.0) fail_domain("StraddlesZero: cell crosses zero");
  double a = std::abs(lo), b = std::abs(hi);
  if (a > b) std::swap(a, b);
  const double q = p + 1.0;
  if (a == 0.0) return std::pow(b, q) / q;
  // a^q * ((b/a)^q - 1) / q; expm1 keeps precision for narrow cells
  return std::pow(a, q) * std::expm1(q * std::log(b / a)) / q;
}

std::vector<double> ladder_boundaries(int n_level, int cells_per_octave) {
  if (n_level < 0) fail_domain("InvalidWindow: n_level must be >= 0");
  if (cells_per_octave < 1) fail_domain("InvalidWindow: cells_per_octave must be >= 1");
  const int cpo = cells_per_octave;
  std::vector<double> b;
  b.reserve(static_cast<std::size_t>(cpo * (n_level + 1)) + 1);
  b.push_back(0.0);
  for (int k = -(cpo - 1); k <= n_level * cpo; ++k) {
    b.push_back(std::exp2(static_cast<double>(k) / cpo));
  }
  return b;
}

Lattice::Lattice(Hurst hurst, int n_level, int cells_per_octave, DomainMode mode)
    : hurst_(std::move(hurst)),
      n_level_(n_level),
      cpo_(cells_per_octave),
      mode_(mode),
      radius_(std::exp2(n_level)) {
  const int d = hurst_.dim_space();
  if (d < 1 || d > kMaxAxes - 1) fail_domain("DimensionUnsupported: need 1 <= d <= 4");
  ladder_ = ladder_boundaries(n_level, cells_per_octave);
  const int nc = ladder_size();
  if (nc > 0xfff) fail_domain("InvalidWindow: ladder exceeds address capacity");

  // Size guard before enumeration: nc * (2 nc)^d canonical-half cells.
  double est = nc;
  for (int a = 0; a < d; ++a) est *= 2.0 * nc;
  if (est > 4.0e7) fail_domain("DimensionUnsupported: lattice too large to enumerate");

  std::vector<double> mids(nc);
  for (int j = 0; j < nc; ++j) mids[j] = 0.5 * (ladder_[j] + ladder_[j + 1]);
  const double r2 = radius_ * radius_;

  CellRef c{};
  // axis 0 canonical side is positive
  c.side[0] = 1;
  std::vector<int> sp(d, 0);  // flattened spatial state: idx*2 + (side<0)
  for (int j0 = 0; j0 < nc; ++j0) {
    c.idx[0] = static_cast<std::int16_t>(j0);
    // odometer over spatial axes
    std::fill(sp.begin(), sp.end(), 0);
    while (true) {
      double norm2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const double m = mids[sp[a] >> 1];
        norm2 += m * m;
      }
      if (mode_ == DomainMode::Box || norm2 <= r2) {
        for (int a = 0; a < d; ++a) {
          c.idx[a + 1] = static_cast<std::int16_t>(sp[a] >> 1);
          c.side[a + 1] = (sp[a] & 1) ? -1 : 1;
        }
        half_.push_back(c);
      }
      int a = 0;
      for (; a < d; ++a) {
        if (++sp[a] < 2 * nc) break;
        sp[a] = 0;
      }
      if (a == d) break;
    }
  }
}

AxisCell Lattice::axis_cell(int axis, const CellRef& c) const {
  const int j = c.idx[axis];
  if (c.side[axis] >= 0) return {ladder_[j], ladder_[j + 1]};
  return {-ladder_[j + 1], -ladder_[j]};
}

void Lattice::center(const CellRef& c, double* out) const {
  for (int a = 0; a < n_axes(); ++a) out[a] = axis_cell(a, c).mid();
}

double Lattice::spatial_center_norm(const CellRef& c) const {
  double s = 0.0;
  for (int a = 1; a < n_axes(); ++a) {
    const double m = axis_cell(a, c).mid();
    s += m * m;
  }
  return std::sqrt(s);
}

double Lattice::cell_weight(const CellRef& c) const {
  double w = 1.0;
  for (int a = 0; a < n_axes(); ++a) {
    const AxisCell ac = axis_cell(a, c);
    w *= cell_power_measure(ac.lo, ac.hi, 1.0 - 2.0 * hurst_.component(a));
  }
  return w;
}

CellRef Lattice::mirrored(const CellRef& c) const {
  CellRef m = c;
  for (int a = 0; a < n_axes(); ++a) {
    if (m.side[a] == 0) fail_domain("NotAPairedCell: unset side");
    m.side[a] = static_cast<std::int8_t>(-m.side[a]);
  }
  return m;
}

std::uint64_t Lattice::address(const CellRef& c) const {
  if (c.side[0] <= 0) fail_domain("NotAPairedCell: address is defined on the xi > 0 half");
  std::uint64_t a = static_cast<std::uint64_t>(c.idx[0]) & 0xfffu;
  for (int ax = 1; ax < n_axes(); ++ax) {
    a <<= 13;
    a |= (static_cast<std::uint64_t>(c.idx[ax]) & 0xfffu) << 1;
    a |= (c.side[ax] < 0) ? 1u : 0u;
  }
  return a;
}

bool Lattice::cell_in_level(const CellRef& c, int level) const {
  if (level < 0) return false;
  const int nc = cpo_ * (level + 1);
  for (int a = 0; a < n_axes(); ++a) {
    if (c.idx[a] >= nc) return false;
  }
  if (mode_ == DomainMode::BallSpatial) {
    // same squared-norm expression as the constructor keep rule, so the
    // decision is bit-identical across levels
    double norm2 = 0.0;
    for (int a = 1; a < n_axes(); ++a) {
      const double m = axis_cell(a, c).mid();
      norm2 += m * m;
    }
    const double rl = std::exp2(level);
    return norm2 <= rl * rl;
  }
  return true;
}

}  // namespace fwave
