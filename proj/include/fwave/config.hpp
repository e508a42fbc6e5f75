#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fwave/rational.hpp"

namespace fwave {

// Declarative run configuration: one flat TOML-like file per experiment,
// sections [model] [lattice] [grid] [time] [mc] [solver] [output]. Every
// field has a default, so an empty file is a valid run. CLI overrides are
// "section.key=value" strings applied on top of the file before typing.
struct RunConfig {
  // [model]
  int d = 1;
  std::vector<double> hurst;  // H_0..H_d; defaults to 0.8 everywhere
  std::string mode = "auto";  // auto | regular | wick
  double rho = 1.0;           // nonlinearity amplitude; 0 = linear equation
  bool renormalize = true;    // Wick subtraction; false = ablation run

  // [lattice]
  std::vector<int> n_levels = {2, 3, 4};
  int cells_per_octave = 1;

  // [grid]
  int points_per_axis = 64;
  double half_width = 3.14159265358979323846;  // torus [-L, L)^d
  double domain_half_width = 0.0;  // rho / norm-domain radius; 0 = none

  // [time]
  double t_max = 1.0;
  int steps = 32;

  // [mc]
  int realizations = 100;
  std::uint64_t seed = 1;

  // [solver]
  Rat s{1, 2};
  Rat q{6, 1};
  Rat r{6, 1};
  double tol = 1e-8;
  int max_iter = 64;

  // [output]
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv", "json"};
};

// Raw "section.key" -> value text, before typing. Insertion-ordered input
// is not needed; the map keeps lookups and duplicate detection simple.
using ConfigMap = std::map<std::string, std::string>;

// Parses TOML-ish text: [section] headers, key = value lines, # comments.
// Values are kept verbatim (arrays included); quotes around strings are
// optional. Throws ConfigParse errors on syntax problems and duplicates.
ConfigMap parse_config_text(const std::string& text);

// Reads and parses a config file; missing file is a ConfigParse error.
ConfigMap parse_config_file(const std::string& path);

// Applies one "section.key=value" override (the CLI --set form).
void apply_override(ConfigMap& map, const std::string& spec);

// Types and validates the raw map. Unknown keys are ConfigParse errors so
// typos cannot silently fall back to defaults.
RunConfig build_run_config(const ConfigMap& map);

// Canonical serialization: every field, fixed order, 17 significant
// digits. Equal configs give equal text, which is what gets hashed.
std::string canonical_config(const RunConfig& cfg);

// FNV-1a over the canonical text, as fixed-width hex. Recorded in every
// output file so results can be traced back to their exact inputs.
std::string config_hash(const RunConfig& cfg);

// "p", "p/q", or "inf" as an exact rational; ConfigParse error otherwise.
Rat parse_rat_text(const std::string& text);

}  // namespace fwave
