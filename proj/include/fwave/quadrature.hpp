#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace fwave {

using cplx = std::complex<double>;

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  long evals = 0;
  bool converged = false;
};

struct CQuadResult {
  cplx value{0.0, 0.0};
  double abs_err = 0.0;
  long evals = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod 7/15 on [a,b]: repeatedly bisects the segment with
// the largest error estimate until sum(err) <= max(abs_tol, rel_tol*|I|) or
// the evaluation budget runs out. split_hints are interior points used as
// initial segment boundaries (known kinks/ridges).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, long max_evals = 400000,
                     const std::vector<double>& split_hints = {});

CQuadResult integrate_complex(const std::function<cplx(double)>& f, double a,
                              double b, double abs_tol, double rel_tol,
                              long max_evals = 400000,
                              const std::vector<double>& split_hints = {});

// ∫_a^b x^p f(x) dx with 0 <= a < b and p > -1. The power factor is absorbed
// exactly by u = x^(p+1), so integrable singularities at x = 0 cost nothing.
QuadResult integrate_power(const std::function<double(double)>& f, double a,
                           double b, double p, double abs_tol, double rel_tol,
                           long max_evals = 400000);

}  // namespace fwave
