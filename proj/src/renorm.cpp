#include "fwave/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "fwave/error.hpp"
#include "fwave/gamma.hpp"
#include "fwave/quadrature.hpp"

namespace fwave {
namespace {

// surface mass of prod |omega_i|^{1-2Hi} over S^{d-1}
double angular_mass(const Hurst& h) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < h.dim_space(); ++i) {
    const double a = 1.0 - h.hsp[i];  // (p_i + 1)/2
    num += std::lgamma(a);
    den += a;
  }
  return 2.0 * std::exp(num - std::lgamma(den));
}

struct LsqFit {
  double slope = 0.0, intercept = 0.0;
};

LsqFit lsq(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LsqFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace

double sigma_quadrature(const Hurst& hurst, int n_level, double t, double tol) {
  if (!(tol > 0.0)) fail_domain("InvalidTolerance: tol must be > 0");
  if (!(t >= 0.0)) fail_domain("InvalidWindow: t must be >= 0");
  if (n_level < 0) fail_domain("InvalidWindow: n_level must be >= 0");
  if (t == 0.0) return 0.0;

  const double R = std::ldexp(1.0, n_level);
  const double p0 = 1.0 - 2.0 * hurst.h0;
  const double q = 2.0 * hurst.dim_space() - 1.0 - 2.0 * hurst.sum_space();

  bool ok = true;
  auto xi_moment = [&](double r) {
    // 2 int_0^R xi^{p0} |gamma_t(xi,r)|^2, split at the resonance ridge
    auto f = [&](double xi) { return std::norm(gamma_eval(t, xi, r).value); };
    double acc = 0.0;
    const double mid = std::min(r, R);
    if (mid > 0.0) {
      QuadResult a = integrate_power(f, 0.0, mid, p0, 0.0, 0.2 * tol, 20000);
      ok = ok && a.converged;
      acc += a.value;
    }
    if (mid < R) {
      QuadResult b = integrate_power(f, mid, R, p0, 0.0, 0.2 * tol, 20000);
      ok = ok && b.converged;
      acc += b.value;
    }
    return 2.0 * acc;
  };

  QuadResult outer = integrate_power(xi_moment, 0.0, R, q, 0.0, 0.4 * tol, 4000);
  if (!outer.converged || !ok) {
    fail_numerical("ToleranceNotReached: sigma quadrature did not converge");
  }
  return angular_mass(hurst) * outer.value;
}

double second_moment_cells(const Lattice& lat, double t) {
  const auto& half = lat.half_cells();
  const std::size_t nc = half.size();
  std::vector<double> terms(nc);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nc); ++i) {
    double ctr[kMaxAxes];
    lat.center(half[i], ctr);
    double r2 = 0.0;
    for (int a = 1; a < lat.n_axes(); ++a) r2 += ctr[a] * ctr[a];
    const cplx g = gamma_eval(t, ctr[0], std::sqrt(r2)).value;
    terms[i] = 2.0 * lat.cell_weight(half[i]) * std::norm(g);
  }
  double acc = 0.0;
  for (double v : terms) acc += v;
  return acc;
}

SigmaCurve sigma_curve(const Hurst& hurst, const std::vector<int>& n_values,
                       const std::vector<double>& t_values, double tol) {
  SigmaCurve curve;
  curve.hurst = hurst;
  curve.n_values = n_values;
  curve.t_values = t_values;
  curve.quadrature_tol = tol;
  curve.sigma.assign(n_values.size() * t_values.size(), 0.0);
  const std::ptrdiff_t total =
      static_cast<std::ptrdiff_t>(curve.sigma.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t f = 0; f < total; ++f) {
    const std::size_t i_n = static_cast<std::size_t>(f) / t_values.size();
    const std::size_t i_t = static_cast<std::size_t>(f) % t_values.size();
    curve.sigma[f] =
        sigma_quadrature(hurst, n_values[i_n], t_values[i_t], tol);
  }
  return curve;
}

const char* sigma_regime_name(SigmaRegime r) {
  switch (r) {
    case SigmaRegime::Geometric: return "GEOMETRIC";
    case SigmaRegime::Linear: return "LINEAR";
    default: return "CONVERGENT";
  }
}

SigmaFit sigma_asymptotic_fit(const SigmaCurve& curve) {
  const std::size_t nn = curve.n_values.size();
  const std::size_t nt = curve.t_values.size();
  if (nn < 4 || nt < 3) {
    fail_domain("InsufficientData: need >= 4 levels and >= 3 times");
  }
  const int dn = curve.n_values[1] - curve.n_values[0];
  for (std::size_t j = 1; j < nn; ++j) {
    if (curve.n_values[j] - curve.n_values[j - 1] != dn || dn <= 0) {
      fail_domain("InsufficientData: levels must be uniformly increasing");
    }
  }

  // successive differences remove the O(1) offset of the growth law;
  // their log2 slope in n is the divergence exponent
  std::vector<double> slopes, amps, ts;
  for (std::size_t it = 0; it < nt; ++it) {
    const double t = curve.t_values[it];
    if (!(t > 0.0)) continue;
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j + 1 < nn; ++j) {
      const double diff = curve.at(j + 1, it) - curve.at(j, it);
      if (diff > 0.0) {
        xs.push_back(static_cast<double>(curve.n_values[j]));
        ys.push_back(std::log2(diff));
      }
    }
    if (xs.size() < 2) {
      fail_domain("InsufficientData: too few positive sigma increments");
    }
    const LsqFit f = lsq(xs, ys);
    slopes.push_back(f.slope);
    // per-t amplitude is recovered below once the pooled rate is known
    amps.push_back(f.intercept);
    ts.push_back(t);
  }

  SigmaFit fit;
  double kappa = 0.0;
  for (double s : slopes) kappa += s;
  kappa /= static_cast<double>(slopes.size());
  fit.fitted_rate = kappa;
  if (kappa > 0.05) {
    fit.regime = SigmaRegime::Geometric;
  } else if (kappa < -0.05) {
    fit.regime = SigmaRegime::Convergent;
  } else {
    fit.regime = SigmaRegime::Linear;
  }

  // leading amplitude a_t per time, by regime
  std::vector<double> a(ts.size(), 0.0);
  std::size_t row = 0;
  for (std::size_t it = 0; it < nt; ++it) {
    const double t = curve.t_values[it];
    if (!(t > 0.0)) continue;
    switch (fit.regime) {
      case SigmaRegime::Geometric: {
        // diff_j = a_t 2^{kappa n_j} (2^{kappa dn} - 1)
        const double denom = std::exp2(kappa * dn) - 1.0;
        a[row] = std::exp2(amps[row]) / denom;
        break;
      }
      case SigmaRegime::Linear: {
        double mean_diff = 0.0;
        for (std::size_t j = 0; j + 1 < nn; ++j) {
          mean_diff += curve.at(j + 1, it) - curve.at(j, it);
        }
        mean_diff /= static_cast<double>(nn - 1);
        a[row] = mean_diff / dn;
        break;
      }
      case SigmaRegime::Convergent:
        a[row] = curve.at(nn - 1, it);
        break;
    }
    ++row;
  }

  double st2 = 0.0, sat = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st2 += ts[i] * ts[i];
    sat += a[i] * ts[i];
  }
  fit.fitted_c = sat / st2;
  double resid = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double pred = fit.fitted_c * ts[i];
    resid = std::max(resid, std::abs(a[i] - pred) /
                                std::max(std::abs(pred), 1e-300));
  }
  fit.linear_in_t_residual = resid;
  return fit;
}

Field wick_square(const Field& psi, int sigma_n_level,
                  const std::vector<double>& sigma_at_times) {
  if (psi.kind != FieldKind::LinearPsi) {
    fail_domain("KindMismatch: wick square needs a LINEAR_PSI field");
  }
  if (psi.n_level != sigma_n_level) {
    fail_domain("LevelMismatch: sigma values computed at a different level");
  }
  if (sigma_at_times.size() != psi.times.size()) {
    fail_domain("TimeGridMismatch: sigma values do not align with the field");
  }
  Field out = psi;
  out.kind = FieldKind::WickPsi2;
  for (std::size_t it = 0; it < psi.times.size(); ++it) {
    const double s = sigma_at_times[it];
    const double* src = psi.slice(it);
    double* dst = out.slice(it);
    for (std::size_t i = 0; i < psi.slice_size(); ++i) {
      dst[i] = src[i] * src[i] - s;
    }
  }
  return out;
}

WickReport wick_covariance_check(const Hurst& hurst, int n_level, int m_level,
                                 int cells_per_octave,
                                 const std::vector<WickCheckPoint>& points,
                                 int realizations, std::uint64_t seed) {
  if (m_level < n_level) fail_domain("InvalidWindow: need m_level >= n_level");
  const Lattice lat_n(hurst, n_level, cells_per_octave);
  const Lattice lat_m(hurst, m_level, cells_per_octave);

  WickReport report;
  for (const WickCheckPoint& pt : points) {
    const PointSampler ps_m(lat_m, {pt.t}, {pt.y}, FieldKind::LinearPsi);
    const PointSampler ps_n(lat_n, {pt.s}, {pt.ytil}, FieldKind::LinearPsi);
    const double sig_m = second_moment_cells(lat_m, pt.t);
    const double sig_n = second_moment_cells(lat_n, pt.s);

    std::vector<double> lhs(realizations), cross(realizations);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < realizations; ++r) {
      const NoiseKey key{seed, static_cast<std::uint64_t>(r)};
      const double a = ps_m.sample(key)[0];
      const double b = ps_n.sample(key)[0];
      lhs[r] = (a * a - sig_m) * (b * b - sig_n);
      cross[r] = a * b;
    }

    const double R = static_cast<double>(realizations);
    double lm = 0.0, cm = 0.0;
    for (int r = 0; r < realizations; ++r) {
      lm += lhs[r];
      cm += cross[r];
    }
    lm /= R;
    cm /= R;
    double lv = 0.0, cv = 0.0;
    for (int r = 0; r < realizations; ++r) {
      lv += (lhs[r] - lm) * (lhs[r] - lm);
      cv += (cross[r] - cm) * (cross[r] - cm);
    }
    lv /= R - 1.0;
    cv /= R - 1.0;

    WickCheckRow row;
    row.lhs = lm;
    row.lhs_se = std::sqrt(lv / R);
    row.rhs = 2.0 * cm * cm;
    row.rhs_se = 4.0 * std::abs(cm) * std::sqrt(cv / R);
    // <= so that exactly degenerate rows (both sides identically zero,
    // e.g. s=0) count as a pass
    row.pass = std::abs(row.lhs - row.rhs) <=
               3.0 * std::hypot(row.lhs_se, row.rhs_se);
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace fwave
