#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fwave/config.hpp"
#include "fwave/rational.hpp"

namespace fwave {

inline constexpr const char* kFwaveVersion = "0.1.0";

// What a subcommand produced: every file written (manifest last) plus the
// process exit code the CLI should return. Commands throw Error on config
// or numerical problems; exit_code is only nonzero for failed verification
// reports, which are results rather than exceptions.
struct CommandResult {
  std::vector<std::string> files;
  int exit_code = 0;
};

// Samples noise and linear-field realizations at the finest configured
// level onto the torus grid; one CSV per (kind, realization), a JSON
// sidecar with the shared metadata, and the run manifest.
CommandResult cmd_sample(const RunConfig& cfg);

// Renormalization curve sigma_n(t) over the configured levels and the
// uniform time grid, plus the divergence-law fit when the grid is rich
// enough (>= 4 levels, >= 3 positive times).
CommandResult cmd_sigma(const RunConfig& cfg);

// Cauchy ladders of the linear field and its (Wick) square in negative
// Sobolev norms, plus the solution-level convergence study. A single
// configured level yields a header-only table.
CommandResult cmd_converge(const RunConfig& cfg);

// One full solve at the finest level: u, v, psi snapshots and the Picard
// trace. The mode (regular/wick) must match the Hurst regime.
CommandResult cmd_solve(const RunConfig& cfg);

// Exact-rational admissibility scan over dimensions and Strichartz orders.
// Empty inputs produce a header-only CSV.
CommandResult cmd_admiss(const RunConfig& cfg, const std::vector<int>& dims,
                         const std::vector<Rat>& s_grid);

// Runs the acceptance suite (all criteria, or `only` when non-empty),
// writes the report, and returns exit code 4 if anything failed.
CommandResult cmd_verify(const RunConfig& cfg, std::ostream* progress,
                         const std::vector<int>& only = {});

}  // namespace fwave
