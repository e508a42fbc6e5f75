#pragma once

#include <cstdint>
#include <vector>

#include "fwave/field.hpp"
#include "fwave/grid.hpp"
#include "fwave/rational.hpp"
#include "fwave/solver.hpp"

namespace fwave {

// Empirical witnesses for the two dispersive estimates the fixed-point
// argument leans on: the free evolution bound
//
//   N[w; L^q W^{s,r}] + N[dw/dt; L^q W^{s-1,r}]
//       <= C (|phi0|_{W^{mu,2}} + |phi1|_{W^{mu-1,2}}),
//   mu = s + d/2 - (1/q + d/r),
//
// and the source-to-solution bound
//
//   N[w; L^q W^{s1,r}] + N[dw/dt; L^q W^{s1-1,r}]
//       <= C N[f; L^qt W^{-s2,rt}].
//
// The constants are not asserted against thresholds; a witness fits the
// empirical constant (sup of lhs/rhs over random band-limited trials) and
// PASSes iff it grows by less than 2x under one simultaneous refinement of
// the space grid and the time grid. Trial data are trig polynomials pinned
// by integer frequency, so both resolutions see the same continuum input.

// exponent hypotheses, checked exactly; throw HypothesisViolated otherwise
void check_homogeneous_hypotheses(int d, Rat q, Rat r);
void check_inhomogeneous_hypotheses(int d, Rat s1, Rat s2, Rat q, Rat r,
                                    Rat qt, Rat rt);

// data-side Sobolev order of the free estimate
double strichartz_mu(int d, Rat s, Rat q, Rat r);

// random real trig polynomial with integer frequencies in [-band, band]^d;
// deterministic in (seed, trial) and independent of the grid resolution
std::vector<double> random_band_field(const Grid& g, int band,
                                      std::uint64_t seed, std::uint64_t trial,
                                      std::uint64_t tag);
InitialData random_band_data(const Grid& g, int band, std::uint64_t seed,
                             std::uint64_t trial);
// band-limited source with per-mode harmonic time modulation
Field random_band_source(const Grid& g, const std::vector<double>& times,
                         int band, std::uint64_t seed, std::uint64_t trial);

struct WitnessTerms {
  double lhs = 0.0;
  double rhs = 0.0;
};

// both sides of the free-evolution bound for explicit data
WitnessTerms homogeneous_terms(const Grid& g, const InitialData& data, Rat s,
                               Rat q, Rat r, double t_max, int steps);
// both sides of the source bound for an explicit source field
WitnessTerms inhomogeneous_terms(const Field& f, Rat s1, Rat s2, Rat q, Rat r,
                                 Rat qt, Rat rt);

struct WitnessRow {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool skipped = false;  // rhs == 0 (zero data): excluded from the fit
};

struct WitnessSpec {
  Grid grid;                       // coarse resolution; refined doubles m
  double t_max = 1.0;
  int steps = 32;                  // coarse time steps; refined doubles
  int trials = 20;
  int band = 3;                    // integer frequency band of trial data
  std::uint64_t seed = 1;
  std::vector<double> amplitudes;  // per-trial scale; empty = all ones
};

struct FittedConstantReport {
  double constant_coarse = 0.0;  // sup lhs/rhs over kept trials
  double constant_fine = 0.0;    // same trials, refined grids
  double growth = 0.0;           // fine / coarse
  bool pass = false;             // kept > 0 and growth < 2
  int kept = 0;
  int skipped = 0;
  std::vector<WitnessRow> rows;  // coarse-grid rows, one per trial
};

FittedConstantReport homogeneous_witness(Rat s, Rat q, Rat r,
                                         const WitnessSpec& spec);
FittedConstantReport inhomogeneous_witness(Rat s1, Rat s2, Rat q, Rat r,
                                           Rat qt, Rat rt,
                                           const WitnessSpec& spec);

}  // namespace fwave
