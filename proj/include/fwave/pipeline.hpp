#pragma once

#include <cstdint>
#include <vector>

#include "fwave/field.hpp"
#include "fwave/grid.hpp"
#include "fwave/hurst.hpp"

namespace fwave {

// Cauchy-sequence diagnostics for the truncation ladder: how fast does
// E | Psi_{n+1} - Psi_n |^2 in W^{-alpha,2}(D) decay as the cutoff level
// grows, and the same for the Wick squares in W^{-2alpha,2}(D)?
//
// With coherent (address-keyed) draws the shared cells of two nested
// levels cancel exactly, so the difference field is the annulus sum and
// its expected squared norm has a closed per-mode form:
//
//   E | M_alpha (Psi_m - Psi_n) |^2_{L^2(D)}
//     = vol(D) * sum_k (1+|k|^2)^{-alpha} [S_m - S_n](k),
//
// where S_n(k,t) is the per-grid-mode variance mass of level n (cell
// weights times |gamma_t|^2, binned like the sampler bins cells). For the
// Wick squares, E[:Psi_m^2:(x) :Psi_n^2:(y)] = 2 C_{m^n}(x-y)^2 with
// C_{m^n} the covariance of the coarser level, so the difference density
// is the transform of 2(c_m^2 - c_n^2); both factors of
// c_m^2 - c_n^2 = (c_m - c_n)(c_m + c_n) are positive definite, hence so
// is the density (Schur product). The grid transform of the pointwise
// square matches the circular aliasing of the squared grid field, so the
// closed form is exact for the discrete object at any resolution.
//
// replicas = 0 evaluates these closed forms (deterministic); replicas > 0
// estimates the same quantities by Monte Carlo over independent noise
// streams, reporting standard errors. The two paths agree within MC error,
// which is the cross-validation the tests pin down.

struct CauchySpec {
  Grid grid;
  std::vector<int> levels;         // strictly increasing cutoff levels
  std::vector<double> times;       // probe times; rows take the max over them
  int cells_per_octave = 1;
  double alpha = 0.0;              // field order -alpha; squares use -2alpha
  std::vector<std::uint8_t> mask;  // domain D; empty = whole torus
  int replicas = 0;                // 0 = closed form, > 0 = Monte Carlo
  std::uint64_t seed = 1;
  bool squares = true;
};

struct CauchyRow {
  int n_coarse = 0;
  int n_fine = 0;
  double value = 0.0;  // max over probe times of E |difference|^2
  double se = 0.0;     // 0 on the closed-form path
};

struct CauchyStudy {
  double alpha = 0.0;
  double domain_volume = 0.0;
  std::vector<double> times;
  std::vector<CauchyRow> field_rows;   // W^{-alpha,2}(D)
  std::vector<CauchyRow> square_rows;  // W^{-2alpha,2}(D), empty if !squares
};

CauchyStudy cauchy_decay(const Hurst& hurst, const CauchySpec& spec);

// Continuum counterpart of cauchy_decay for d = 1, evaluated by adaptive
// quadrature instead of lattice cells. The midpoint rule behind the cell
// sampler assigns each cell the kernel value at its center; on the wave
// resonance xi = |eta| that value is ~ t/(2|eta|) across a band of width
// ~ 1/t, so cells much wider than the band overweight the resonance by
// roughly (cell width)/(band width). In d = 1 the diagonal octave cells
// are centered exactly on the resonance and the overweight grows with the
// level, fast enough to swamp the W^{-alpha,2} decay of the truncation
// tail. The remedy at fixed cells_per_octave is not more cells but no
// cells: integrate the spectral tail directly.
//
// For the stationary field the expected squared norm over a domain D is
// |D| times a spectral integral, so the study reduces to the radial
// density
//
//   rho_n(k, t) = |k|^{1-2H_1} * 2 * int_0^{2^n} xi^{1-2H_0}
//                 |gamma_t(xi, |k|)|^2 dxi,        |k| <= 2^n,
//
// tabulated on a uniform |k| grid (adaptive in xi, where the resonance
// lives; the k profile is smooth on scale ~ 1/t). Field rows integrate
// (1+k^2)^{-alpha} against rho_m - rho_n; square rows integrate
// (1+k^2)^{-2alpha} against 2(rho_m * rho_m - rho_n * rho_n), with * the
// line convolution, evaluated by FFT on the same grid. Rows carry se = 0.
struct QuadCauchySpec {
  std::vector<int> levels;       // strictly increasing cutoff levels
  std::vector<double> times;     // probe times; rows take the max over them
  double alpha = 0.0;            // field order -alpha; squares use -2alpha
  double domain_volume = 1.0;    // |D| prefactor
  double k_step = 0.02;          // spatial-frequency grid pitch
  double tol = 1e-7;             // relative tolerance per xi integral
  bool squares = true;
};

CauchyStudy cauchy_decay_quadrature(const Hurst& hurst,
                                    const QuadCauchySpec& spec);

// strictly decreasing values, tolerating a limited number of inversions
bool decaying(const std::vector<CauchyRow>& rows, int allowed_inversions = 1);

// indicator of the centered Euclidean ball, as a norm mask
std::vector<std::uint8_t> ball_mask(const Grid& g, double radius);

}  // namespace fwave
