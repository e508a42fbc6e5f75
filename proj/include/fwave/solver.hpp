#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "fwave/field.hpp"
#include "fwave/grid.hpp"
#include "fwave/hurst.hpp"
#include "fwave/rational.hpp"

namespace fwave {

// Wave dynamics on the torus, spectral in space. The periodic computation
// stands in for free space as long as the torus is wide enough that no
// wrap-around image can reach the cutoff domain within the time horizon
// (finite propagation speed); solve_full enforces that margin.

struct InitialData {
  std::vector<double> phi0;  // value at t=0, one entry per grid point
  std::vector<double> phi1;  // velocity at t=0
};

// Smooth compactly supported bump: exp(1 - 1/(1-(|x|/radius)^2)) inside
// |x| < radius, identically zero outside.
std::vector<double> bump_cutoff(const Grid& g, double radius);

// Free evolution at a single time: per mode k != 0
//   w_hat = cos(t|k|) phi0_hat + sin(t|k|)/|k| phi1_hat
// and w_hat = phi0_hat + t phi1_hat on the zero mode; wt is the exact time
// derivative. Either output may be null.
void propagate_linear(const Grid& g, const InitialData& data, double t,
                      double* w, double* wt);

// Free evolution tabulated on a whole time grid.
Field linear_evolution(const Grid& g, const InitialData& data,
                       const std::vector<double>& times,
                       Field* velocity = nullptr);

// Cumulative wave Duhamel integral of the source:
//   w(t_j) = int_0^{t_j} ds sin((t_j - s)|k|)/|k| source_hat(s, k),
// trapezoid in s via prefix sums (one pass over slices, O(nt) transforms).
// Times must start at 0 and increase; w(0) = 0.
Field duhamel(const Field& source, Field* velocity = nullptr);

struct PiPair {
  Field pi1;  // first-order companion field (2 Psi in the full model)
  Field pi2;  // zeroth-order forcing (Psi^2 or its Wick square)
  double alpha = 0.0;  // declared negative Sobolev order of pi2 (reporting)

  bool empty() const { return pi1.v.empty() && pi2.v.empty(); }
};

// One application of the fixed-point map:
//   Gamma(v) = linear(phi0, phi1) - Duhamel[(rho v)^2 + (rho pi1)(rho v)
//                                           + rho^2 pi2]
// with all products formed pointwise on the grid.
Field gamma_map(const Field& v, const InitialData& data, const PiPair& pi,
                const std::vector<double>& rho);

struct PicardOptions {
  Rat s{1, 2};
  Rat q{6};
  Rat r{6};
  double tol = 1e-8;
  int max_iter = 64;
  int max_halvings = 6;  // T_min = T_max / 2^6
  bool strict_admissible = true;
  bool uniqueness_probe = false;  // rerun from v0 = 0 and compare
};

struct PicardTrace {
  std::vector<double> iterate_norms;  // X^s(T) of each iterate
  std::vector<double> diff_norms;     // X^s of successive differences
  std::vector<double> contraction;    // ratios of consecutive differences
  double t_used = 0.0;
  int iterations = 0;
  int halvings = 0;
  bool converged = false;
  // X^s distance between the fixed points reached from v0 = linear and
  // v0 = 0; NaN when the probe is off
  double uniqueness_gap = std::numeric_limits<double>::quiet_NaN();
};

// Picard iteration v <- Gamma(v) from v0 = linear evolution, monitored in
// X^s(T). If the map fails to contract on [0, T] the horizon is halved
// (time grid prefix) and the iteration restarts, down to T / 2^max_halvings.
// Returns v on the final [0, T_used] prefix of the time grid.
Field picard_solve(const Grid& g, const std::vector<double>& times,
                   const InitialData& data, const PiPair& pi,
                   const std::vector<double>& rho, const PicardOptions& opt,
                   PicardTrace* trace = nullptr);

enum class SolveMode { Regular, Wick };

struct SolveSpec {
  Grid grid;
  double t_max = 1.0;
  int steps = 128;
  int cells_per_octave = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  PicardOptions picard;
  // Wick subtraction switch; turning it off in Wick mode is the ablation
  // that demonstrates why the renormalization is needed
  bool renormalize = true;
};

struct SolveResult {
  Field u;    // Psi + v on [0, T_used]
  Field v;    // fixed-point remainder
  Field psi;  // sampled linear field, truncated to the same window
  double alpha = 0.0;
  PicardTrace trace;
};

// Full pipeline: sample Psi_n, form Pi = (2 Psi, Psi^2) in Regular mode or
// (2 Psi, Psi^2 - sigma_n) in Wick mode, run the fixed point, return
// u = Psi + v. The mode must match the Hurst regime.
SolveResult solve_full(const Hurst& hurst, int n_level, const InitialData& data,
                       const std::vector<double>& rho, const SolveSpec& spec,
                       SolveMode mode);

struct ConvergenceRow {
  int n_coarse = 0;
  int n_fine = 0;
  double diff = 0.0;  // sup over common times of the spatial norm of u_m - u_n
};

struct ConvergenceReport {
  std::vector<int> n_levels;
  std::vector<double> t0;  // horizon found at each level
  double t_common = 0.0;
  double alpha = 0.0;          // 0 in Regular mode
  std::vector<ConvergenceRow> rows;

  bool decreasing(int allowed_inversions = 1) const;
};

// Solves at each level with the same noise draws (coherent nesting) and
// reports ||u_m - u_n|| over consecutive levels, measured in L^inf in time
// of L^2(D) (Regular) or W^{-alpha,2}(D) (Wick), D = supp rho.
ConvergenceReport convergence_study(const Hurst& hurst,
                                    const std::vector<int>& n_levels,
                                    const InitialData& data,
                                    const std::vector<double>& rho,
                                    const SolveSpec& spec, SolveMode mode);

}  // namespace fwave
