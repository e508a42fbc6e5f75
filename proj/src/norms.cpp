#include "fwave/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fwave/admiss.hpp"
#include "fwave/error.hpp"

namespace fwave {

namespace {

bool is_linf(double p) { return std::isinf(p) && p > 0.0; }

void validate_p(double p) {
  if (!(p >= 1.0)) {  // rejects NaN too; +inf passes
    fail_domain("InvalidExponent: integrability must be >= 1 or infinity");
  }
}

// discrete L^p over the masked points, h^d cell weights
double lp_of_values(const Grid& g, const double* v,
                    const std::vector<std::uint8_t>& mask, double p) {
  const std::size_t n = g.total();
  const bool full = mask.empty();
  if (is_linf(p)) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (full || mask[i]) mx = std::max(mx, std::abs(v[i]));
    }
    return mx;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (full || mask[i]) acc += v[i] * v[i];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (full || mask[i]) acc += std::pow(std::abs(v[i]), p);
    }
  }
  return std::pow(acc * g.cell_volume(), 1.0 / p);
}

}  // namespace

double sobolev_norm(const Grid& g, const double* slice, double s, double p,
                    const std::vector<std::uint8_t>& mask) {
  validate_p(p);
  if (!mask.empty()) {
    if (mask.size() != g.total()) {
      fail_domain("MaskShape: mask must carry one flag per grid point");
    }
    if (std::find_if(mask.begin(), mask.end(),
                     [](std::uint8_t m) { return m != 0; }) == mask.end()) {
      fail_domain("EmptyMask: domain restriction selects no grid points");
    }
  }

  if (s == 0.0) return lp_of_values(g, slice, mask, p);  // identity multiplier

  const std::size_t n = g.total();
  std::vector<cplx> spec(n);
  to_spectrum(g, slice, spec.data());
  for (std::size_t i = 0; i < n; ++i) {
    const double kn = g.knorm(i);
    spec[i] *= std::pow(1.0 + kn * kn, 0.5 * s);
  }
  from_spectrum(g, spec.data(), spec.data());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = spec[i].real();
  return lp_of_values(g, out.data(), mask, p);
}

double bochner_norm(const Field& f, const NormSpec& spec) {
  const std::size_t nt = f.times.size();
  if (nt == 0) fail_domain("InvalidWindow: field has no time slices");
  if (spec.time_norm == TimeNorm::LQ) {
    if (nt < 2) {
      fail_domain("InvalidWindow: time L^q norm needs at least two time points");
    }
    if (!(spec.time_q >= 1.0)) {
      fail_domain("InvalidExponent: time exponent must be >= 1");
    }
    for (std::size_t i = 0; i + 1 < nt; ++i) {
      if (!(f.times[i + 1] > f.times[i])) {
        fail_domain("InvalidWindow: time grid must be strictly increasing");
      }
    }
  }

  std::vector<double> ns(nt);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t it = 0; it < static_cast<std::ptrdiff_t>(nt); ++it) {
    ns[it] = sobolev_norm(f.grid, f.slice(it), spec.sobolev_order,
                          spec.integrability, spec.mask);
  }

  if (spec.time_norm == TimeNorm::LInf) {
    return *std::max_element(ns.begin(), ns.end());
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    double w = 0.0;
    if (i > 0) w += 0.5 * (f.times[i] - f.times[i - 1]);
    if (i + 1 < nt) w += 0.5 * (f.times[i + 1] - f.times[i]);
    acc += w * std::pow(ns[i], spec.time_q);
  }
  return std::pow(acc, 1.0 / spec.time_q);
}

double x_s_norm(const Field& f, Rat s, Rat q, Rat r, double T, bool strict) {
  if (f.times.empty() ||
      std::abs(f.times.back() - T) > 1e-9 * std::max(1.0, std::abs(T))) {
    fail_domain("InvalidWindow: field time grid does not end at T");
  }
  if (strict) {
    const AdmissiblePair p =
        check_admissible(q, r, f.grid.d, s, PairKind::Admissible);
    if (!p.ok()) {
      std::string what = "NotAdmissible: (q,r)=(" + q.str() + "," + r.str() +
                         ") fails";
      for (const std::string& v : p.violations()) what += " " + v;
      fail_domain(what);
    }
  }

  NormSpec sup_sobolev;
  sup_sobolev.sobolev_order = s.value();
  sup_sobolev.integrability = 2.0;
  sup_sobolev.time_norm = TimeNorm::LInf;

  NormSpec mixed;
  mixed.sobolev_order = 0.0;
  mixed.integrability =
      r.is_inf() ? std::numeric_limits<double>::infinity() : r.value();
  if (q.is_inf()) {
    mixed.time_norm = TimeNorm::LInf;
  } else {
    mixed.time_norm = TimeNorm::LQ;
    mixed.time_q = q.value();
  }

  return std::max(bochner_norm(f, sup_sobolev), bochner_norm(f, mixed));
}

}  // namespace fwave
