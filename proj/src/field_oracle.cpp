#include "fwave/field_oracle.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "fwave/error.hpp"
#include "fwave/gamma.hpp"
#include "fwave/quadrature.hpp"

namespace fwave {
namespace {

struct CellBox {
  // positive-side ranges after folding signs out; sign[] restores the
  // signed frequency inside the cosine
  double xi_lo, xi_hi;
  double lo[2], hi[2], sign[2];
};

struct CellOut {
  double value = 0.0;
  double err = 0.0;
  bool converged = true;
};

// innermost: int_{xi cell} xi^{1-2H0} |gamma_{s,t}(xi, r)|^2 dxi
double xi_integral(const CellBox& box, double p0, double s, double t, double r,
                   double abs_tol, CellOut* out) {
  auto f = [&](double xi) { return std::norm(gamma_increment(s, t, xi, r)); };
  QuadResult q = integrate_power(f, box.xi_lo, box.xi_hi, p0, abs_tol, 1e-8,
                                 60000);
  if (!q.converged) out->converged = false;
  return q.value;
}

CellOut cell_integral(const CellBox& box, int d, const double* p,
                      const double* delta, double s, double t,
                      double abs_tol) {
  CellOut out;
  if (d == 1) {
    auto f = [&](double u) {
      const double v = xi_integral(box, p[0], s, t, u, abs_tol * 1e-3, &out);
      return std::cos(box.sign[0] * u * delta[0]) * v;
    };
    QuadResult q =
        integrate_power(f, box.lo[0], box.hi[0], p[1], abs_tol, 1e-7, 4000);
    out.value = q.value;
    out.err = q.abs_err;
    if (!q.converged) out.converged = false;
  } else {
    auto f2 = [&](double u2) {
      auto f1 = [&](double u1) {
        const double r = std::hypot(u1, u2);
        const double v = xi_integral(box, p[0], s, t, r, abs_tol * 1e-4, &out);
        const double ph =
            box.sign[0] * u1 * delta[0] + box.sign[1] * u2 * delta[1];
        return std::cos(ph) * v;
      };
      QuadResult q1 = integrate_power(f1, box.lo[0], box.hi[0], p[1],
                                      abs_tol * 0.3, 1e-7, 2000);
      if (!q1.converged) out.converged = false;
      return q1.value;
    };
    QuadResult q2 =
        integrate_power(f2, box.lo[1], box.hi[1], p[2], abs_tol, 3e-7, 2000);
    out.value = q2.value;
    out.err = q2.abs_err;
    if (!q2.converged) out.converged = false;
  }
  return out;
}

}  // namespace

double covariance_oracle(const Hurst& hurst, int inner_level, int outer_level,
                         int cells_per_octave, DomainMode mode, double s,
                         double t, const double* y, const double* ytil,
                         double tol) {
  const int d = hurst.dim_space();
  if (d > 2) fail_domain("DimensionUnsupported: covariance quadrature needs d <= 2");
  if (!(tol > 0.0)) fail_domain("InvalidTolerance: tol must be > 0");
  if (inner_level < -1 || outer_level < inner_level || outer_level < 0) {
    fail_domain("InvalidWindow: need -1 <= inner_level <= outer_level");
  }
  if (!(s >= 0.0) || !(t >= s)) fail_domain("InvalidWindow: need 0 <= s <= t");
  if (s == t) return 0.0;

  const Lattice outer(hurst, outer_level, cells_per_octave, mode);
  double delta[2] = {0.0, 0.0};
  for (int a = 0; a < d; ++a) delta[a] = y[a] - ytil[a];
  double p[3] = {1.0 - 2.0 * hurst.h0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) p[1 + a] = 1.0 - 2.0 * hurst.hsp[a];

  // shell = kept by outer, not kept by inner
  std::vector<CellBox> boxes;
  for (const CellRef& c : outer.half_cells()) {
    if (inner_level >= 0 && outer.cell_in_level(c, inner_level)) continue;
    CellBox b{};
    const AxisCell xc = outer.axis_cell(0, c);
    b.xi_lo = xc.lo;
    b.xi_hi = xc.hi;
    for (int a = 0; a < d; ++a) {
      const AxisCell ec = outer.axis_cell(1 + a, c);
      if (ec.hi <= 0.0) {
        b.lo[a] = -ec.hi;
        b.hi[a] = -ec.lo;
        b.sign[a] = -1.0;
      } else {
        b.lo[a] = ec.lo;
        b.hi[a] = ec.hi;
        b.sign[a] = 1.0;
      }
    }
    boxes.push_back(b);
  }
  if (boxes.empty()) return 0.0;

  const double cell_tol = 0.5 * tol / static_cast<double>(2 * boxes.size());
  std::vector<CellOut> outs(boxes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(boxes.size());
       ++i) {
    outs[i] = cell_integral(boxes[i], d, p, delta, s, t, cell_tol);
  }

  double value = 0.0, err = 0.0;
  bool ok = true;
  for (const CellOut& o : outs) {
    value += o.value;
    err += o.err;
    ok = ok && o.converged;
  }
  if (!ok || 2.0 * err > tol) {
    fail_numerical("ToleranceNotReached: covariance quadrature error above tol");
  }
  return 2.0 * value;
}

}  // namespace fwave
