#include "fwave/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>

#include "json.hpp"

#include "fwave/accept.hpp"
#include "fwave/admiss.hpp"
#include "fwave/csvio.hpp"
#include "fwave/error.hpp"
#include "fwave/field.hpp"
#include "fwave/hurst.hpp"
#include "fwave/pipeline.hpp"
#include "fwave/renorm.hpp"
#include "fwave/solver.hpp"

namespace fwave {

namespace {

using nlohmann::json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool wants(const RunConfig& cfg, const char* fmt) {
  for (const std::string& f : cfg.formats) {
    if (f == fmt) return true;
  }
  return false;
}

// Shared per-command state: output paths, the manifest under construction,
// and the file index. Data files first, manifest.json always last.
struct Run {
  const RunConfig& cfg;
  std::string hash;
  json manifest;
  CommandResult result;

  Run(const RunConfig& c, const char* command) : cfg(c), hash(config_hash(c)) {
    manifest["command"] = command;
    manifest["config_hash"] = hash;
    manifest["code_version"] = kFwaveVersion;
    manifest["created_utc"] = utc_now();
    manifest["config"] = canonical_config(cfg);
    manifest["tasks"] = json::array();
    manifest["files"] = json::array();
  }

  std::string path(const std::string& name) const {
    return (std::filesystem::path(cfg.out_dir) / name).string();
  }

  void emit(const std::string& name, const std::string& text) {
    const std::string p = path(name);
    write_text_file(p, text);
    manifest["files"].push_back(name);
    result.files.push_back(p);
  }

  void task(const std::string& name, const std::string& status) {
    manifest["tasks"].push_back(json{{"name", name}, {"status", status}});
  }

  CommandResult finish() {
    manifest["files"].push_back("manifest.json");
    const std::string p = path("manifest.json");
    write_text_file(p, manifest.dump(2) + "\n");
    result.files.push_back(p);
    return std::move(result);
  }
};

Hurst hurst_of(const RunConfig& cfg) { return make_hurst(cfg.hurst); }

Grid grid_of(const RunConfig& cfg) {
  return Grid(cfg.d, cfg.points_per_axis, cfg.half_width);
}

// radius of the bump/mask domain D; defaults to half the torus half-width
// so supp rho keeps a finite-speed margin to the boundary
double domain_radius(const RunConfig& cfg) {
  return cfg.domain_half_width > 0.0 ? cfg.domain_half_width : 0.5 * cfg.half_width;
}

SolveMode mode_of(const RunConfig& cfg, const Hurst& h) {
  if (cfg.mode == "regular") return SolveMode::Regular;
  if (cfg.mode == "wick") return SolveMode::Wick;
  switch (classify_regime(h)) {
    case Regime::Regular: return SolveMode::Regular;
    case Regime::Wick: return SolveMode::Wick;
    default:
      fail_domain("RegimeMismatch: total Hurst index supports neither regime");
  }
}

// negative Sobolev order for Wick-regime studies, with a 0.05 margin past
// the critical exponent d - 1/2 - sum(H)
double wick_alpha(const Hurst& h) {
  return (h.dim_space() - 0.5 - h.sum_total()) + 0.05;
}

const char* file_tag(FieldKind k) {
  switch (k) {
    case FieldKind::NoiseB: return "b";
    case FieldKind::LinearPsi: return "psi";
    case FieldKind::SolutionV: return "v";
    case FieldKind::SolutionU: return "u";
    default: return "field";
  }
}

// Long-format dump: one row per (time, grid point), time-major.
std::string field_csv(const Field& f, const std::string& hash) {
  Csv csv;
  char meta[128];
  std::snprintf(meta, sizeof meta, "kind=%s n=%d seed=%llu stream=%llu",
                field_kind_name(f.kind), f.n_level,
                static_cast<unsigned long long>(f.seed),
                static_cast<unsigned long long>(f.stream));
  csv.comments = {"config=" + hash, meta};
  csv.header = {"t"};
  for (int a = 0; a < f.grid.d; ++a) csv.header.push_back("x" + std::to_string(a));
  csv.header.push_back("value");
  std::array<double, 4> x{};
  for (std::size_t it = 0; it < f.times.size(); ++it) {
    const double* s = f.slice(it);
    for (std::size_t j = 0; j < f.slice_size(); ++j) {
      std::vector<std::string> row;
      row.reserve(csv.header.size());
      row.push_back(fmt_g17(f.times[it]));
      f.grid.coords(j, x.data());
      for (int a = 0; a < f.grid.d; ++a) row.push_back(fmt_g17(x[a]));
      row.push_back(fmt_g17(s[j]));
      csv.row(std::move(row));
    }
  }
  return csv.str();
}

// rho and initial data shared by solve/converge: rho is the configured
// amplitude on a bump over D, phi0 a small bump, phi1 zero
void model_inputs(const RunConfig& cfg, const Grid& g, std::vector<double>* rho,
                  InitialData* data) {
  const double r = domain_radius(cfg);
  *rho = bump_cutoff(g, r);
  for (double& v : *rho) v *= cfg.rho;
  data->phi0 = bump_cutoff(g, r);
  for (double& v : data->phi0) v *= 0.1;
  data->phi1.assign(g.total(), 0.0);
}

SolveSpec solve_spec_of(const RunConfig& cfg, const Grid& g) {
  SolveSpec ss;
  ss.grid = g;
  ss.t_max = cfg.t_max;
  ss.steps = cfg.steps;
  ss.cells_per_octave = cfg.cells_per_octave;
  ss.seed = cfg.seed;
  ss.stream = 0;
  ss.picard.s = cfg.s;
  ss.picard.q = cfg.q;
  ss.picard.r = cfg.r;
  ss.picard.tol = cfg.tol;
  ss.picard.max_iter = cfg.max_iter;
  ss.renormalize = cfg.renormalize;
  return ss;
}

}  // namespace

CommandResult cmd_sample(const RunConfig& cfg) {
  const Hurst h = hurst_of(cfg);
  const Grid g = grid_of(cfg);
  const int level = cfg.n_levels.back();
  const Lattice lat(h, level, cfg.cells_per_octave);
  const std::vector<double> times = uniform_times(cfg.t_max, cfg.steps);

  Run run(cfg, "sample");
  json meta;
  meta["config_hash"] = run.hash;
  meta["grid"] = {{"d", g.d}, {"points_per_axis", g.m}, {"half_width", g.half_width}};
  meta["n_level"] = level;
  meta["cells_per_octave"] = cfg.cells_per_octave;
  meta["seed"] = cfg.seed;
  meta["times"] = times;
  json files_meta = json::array();

  const FieldKind kinds[2] = {FieldKind::NoiseB, FieldKind::LinearPsi};
  if (wants(cfg, "csv")) {
    for (FieldKind kind : kinds) {
      for (int r = 0; r < cfg.realizations; ++r) {
        const NoiseKey key{cfg.seed, static_cast<std::uint64_t>(r)};
        const Field f = sample_field_grid(lat, g, times, key, kind);
        char name[64];
        std::snprintf(name, sizeof name, "%s_r%04d.csv", file_tag(kind), r);
        run.emit(name, field_csv(f, run.hash));
        files_meta.push_back(json{{"file", name},
                                  {"kind", field_kind_name(kind)},
                                  {"stream", r}});
      }
    }
    run.task("sample", cfg.realizations > 0 ? "ok" : "ok (no realizations requested)");
  } else {
    run.task("sample", "skipped: csv not in output.formats");
  }
  meta["fields"] = files_meta;
  if (cfg.realizations > 0 && wants(cfg, "csv") && wants(cfg, "json")) {
    run.emit("fields.json", meta.dump(2) + "\n");
  }
  return run.finish();
}

CommandResult cmd_sigma(const RunConfig& cfg) {
  const Hurst h = hurst_of(cfg);
  const std::vector<double> times = uniform_times(cfg.t_max, cfg.steps);
  const double quad_tol = 1e-9;
  const SigmaCurve curve = sigma_curve(h, cfg.n_levels, times, quad_tol);

  Run run(cfg, "sigma");
  if (wants(cfg, "csv")) {
    Csv csv;
    csv.comments = {"config=" + run.hash,
                    "second moment sigma_n(t) of the truncated linear field, quadrature tol " +
                        fmt_g17(quad_tol)};
    csv.header = {"n", "t", "sigma"};
    for (std::size_t i = 0; i < cfg.n_levels.size(); ++i) {
      for (std::size_t j = 0; j < times.size(); ++j) {
        csv.row({std::to_string(cfg.n_levels[i]), fmt_g17(times[j]), fmt_g17(curve.at(i, j))});
      }
    }
    run.emit("sigma.csv", csv.str());
  }
  run.task("sigma", "ok");

  int positive_times = 0;
  for (double t : times) {
    if (t > 0.0) ++positive_times;
  }
  bool uniform = cfg.n_levels.size() >= 2;
  for (std::size_t i = 2; i < cfg.n_levels.size(); ++i) {
    uniform = uniform && (cfg.n_levels[i] - cfg.n_levels[i - 1] ==
                          cfg.n_levels[1] - cfg.n_levels[0]);
  }
  if (cfg.n_levels.size() >= 4 && uniform && positive_times >= 3) {
    const SigmaFit fit = sigma_asymptotic_fit(curve);
    json jf;
    jf["config_hash"] = run.hash;
    jf["regime"] = sigma_regime_name(fit.regime);
    jf["fitted_rate"] = fit.fitted_rate;
    jf["fitted_c"] = fit.fitted_c;
    jf["linear_in_t_residual"] = fit.linear_in_t_residual;
    // divergence exponent implied by the Hurst vector; negative means the
    // curve should converge instead
    jf["predicted_rate"] = 2.0 * (h.dim_space() - 0.5 - h.sum_total());
    if (wants(cfg, "json")) run.emit("sigma_fit.json", jf.dump(2) + "\n");
    run.task("fit", "ok");
  } else {
    run.task("fit", "skipped: needs >= 4 uniformly spaced levels and >= 3 positive times");
  }
  return run.finish();
}

CommandResult cmd_converge(const RunConfig& cfg) {
  const Hurst h = hurst_of(cfg);
  const SolveMode mode = mode_of(cfg, h);
  const double alpha = mode == SolveMode::Wick ? wick_alpha(h) : 0.0;
  const bool squares = mode == SolveMode::Wick;

  Run run(cfg, "converge");
  Csv csv;
  csv.comments = {"config=" + run.hash,
                  std::string("regime=") + (mode == SolveMode::Wick ? "wick" : "regular") +
                      " alpha=" + fmt_g17(alpha)};
  csv.header = {"study", "sobolev_order", "n_coarse", "n_fine", "value", "se"};

  if (cfg.n_levels.size() < 2) {
    run.task("field_ladder", "skipped: need >= 2 levels for differences");
    run.task("solution_ladder", "skipped: need >= 2 levels for differences");
    if (wants(cfg, "csv")) run.emit("rates.csv", csv.str());
    return run.finish();
  }

  // two probe times; ladder rows take the max over them
  const std::vector<double> probes = {0.5 * cfg.t_max, cfg.t_max};

  CauchyStudy study;
  if (cfg.d == 1) {
    QuadCauchySpec qs;
    qs.levels = cfg.n_levels;
    qs.times = probes;
    qs.alpha = alpha;
    qs.domain_volume =
        2.0 * (cfg.domain_half_width > 0.0 ? cfg.domain_half_width : cfg.half_width);
    qs.squares = squares;
    study = cauchy_decay_quadrature(h, qs);
  } else {
    CauchySpec ms;
    ms.grid = grid_of(cfg);
    ms.levels = cfg.n_levels;
    ms.times = probes;
    ms.cells_per_octave = cfg.cells_per_octave;
    ms.alpha = alpha;
    if (cfg.domain_half_width > 0.0) ms.mask = ball_mask(ms.grid, cfg.domain_half_width);
    ms.replicas = cfg.realizations;  // 0 selects the closed-form path
    ms.seed = cfg.seed;
    ms.squares = squares;
    study = cauchy_decay(h, ms);
  }
  for (const CauchyRow& r : study.field_rows) {
    csv.row({"field", fmt_g17(0.0 - alpha), std::to_string(r.n_coarse), std::to_string(r.n_fine),
             fmt_g17(r.value), fmt_g17(r.se)});
  }
  for (const CauchyRow& r : study.square_rows) {
    csv.row({"square", fmt_g17(0.0 - 2.0 * alpha), std::to_string(r.n_coarse),
             std::to_string(r.n_fine), fmt_g17(r.value), fmt_g17(r.se)});
  }
  run.task("field_ladder", "ok");

  if (cfg.d >= 2) {
    const Grid g = grid_of(cfg);
    std::vector<double> rho;
    InitialData data;
    model_inputs(cfg, g, &rho, &data);
    const ConvergenceReport rep =
        convergence_study(h, cfg.n_levels, data, rho, solve_spec_of(cfg, g), mode);
    for (const ConvergenceRow& r : rep.rows) {
      csv.row({"solution", fmt_g17(0.0 - rep.alpha), std::to_string(r.n_coarse),
               std::to_string(r.n_fine), fmt_g17(r.diff), "0"});
    }
    run.task("solution_ladder", "ok");
  } else {
    run.task("solution_ladder", "skipped: solver pipeline needs d >= 2");
  }

  if (wants(cfg, "csv")) run.emit("rates.csv", csv.str());
  return run.finish();
}

CommandResult cmd_solve(const RunConfig& cfg) {
  const Hurst h = hurst_of(cfg);
  const SolveMode mode = mode_of(cfg, h);
  const Grid g = grid_of(cfg);
  std::vector<double> rho;
  InitialData data;
  model_inputs(cfg, g, &rho, &data);
  const int level = cfg.n_levels.back();
  const SolveResult res = solve_full(h, level, data, rho, solve_spec_of(cfg, g), mode);

  Run run(cfg, "solve");
  if (wants(cfg, "csv")) {
    run.emit("solution_u.csv", field_csv(res.u, run.hash));
    run.emit("solution_v.csv", field_csv(res.v, run.hash));
    run.emit("solution_psi.csv", field_csv(res.psi, run.hash));
  }
  json tr;
  tr["config_hash"] = run.hash;
  tr["code_version"] = kFwaveVersion;
  tr["mode"] = mode == SolveMode::Wick ? "wick" : "regular";
  tr["n_level"] = level;
  tr["seed"] = cfg.seed;
  tr["alpha"] = res.alpha;
  tr["t_used"] = res.trace.t_used;
  tr["iterations"] = res.trace.iterations;
  tr["halvings"] = res.trace.halvings;
  tr["converged"] = res.trace.converged;
  tr["iterate_norms"] = res.trace.iterate_norms;
  tr["diff_norms"] = res.trace.diff_norms;
  tr["contraction"] = res.trace.contraction;
  if (wants(cfg, "json")) run.emit("trace.json", tr.dump(2) + "\n");
  run.task("solve", res.trace.converged ? "ok" : "FAIL: not converged");
  if (!res.trace.converged) run.result.exit_code = 3;
  return run.finish();
}

CommandResult cmd_admiss(const RunConfig& cfg, const std::vector<int>& dims,
                         const std::vector<Rat>& s_grid) {
  Run run(cfg, "admiss");
  Csv csv;
  csv.comments = {"config=" + run.hash,
                  "exact rational scan of the explicit Strichartz pair family; booleans 0/1"};
  csv.header = {"d", "s", "q", "r", "qt", "rt", "ratio", "feasible_scaling",
                "adm_q_bounds", "adm_r_bounds", "adm_dispersion", "adm_scaling",
                "dual_q_bounds", "dual_r_bounds", "dual_dispersion", "dual_scaling",
                "q_ratio", "r_ratio", "all_ok"};
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  auto check_of = [](const AdmissiblePair& p, const char* name) {
    for (const PairCheck& c : p.checks) {
      if (std::string(c.name) == name) return std::string(c.pass ? "1" : "0");
    }
    fail_domain(std::string("CheckMissing: no condition named ") + name);
  };
  for (int d : dims) {
    for (const Rat& s : s_grid) {
      const PairFamily fam = construct_pairs(d, s);
      const Rat ratio = fam.admissible.r / fam.dual.r;  // r_max over rt_min
      const bool feasible = Rat(4) * s >= Rat(d - 3);
      csv.row({std::to_string(d), s.str(), fam.admissible.q.str(), fam.admissible.r.str(),
               fam.dual.q.str(), fam.dual.r.str(), ratio.str(), flag(feasible),
               check_of(fam.admissible, "q_bounds"), check_of(fam.admissible, "r_bounds"),
               check_of(fam.admissible, "dispersion"), check_of(fam.admissible, "scaling"),
               check_of(fam.dual, "q_bounds"), check_of(fam.dual, "r_bounds"),
               check_of(fam.dual, "dispersion"), check_of(fam.dual, "scaling"),
               flag(fam.q_ratio), flag(fam.r_ratio), flag(fam.ok())});
    }
  }
  if (wants(cfg, "csv")) run.emit("admiss.csv", csv.str());
  run.task("admiss", "ok");
  return run.finish();
}

CommandResult cmd_verify(const RunConfig& cfg, std::ostream* progress,
                         const std::vector<int>& only) {
  const AcceptanceReport rep = run_acceptance(progress, only);

  Run run(cfg, "verify");
  json jr;
  jr["config_hash"] = run.hash;
  jr["code_version"] = kFwaveVersion;
  jr["all_pass"] = rep.all_pass();
  json arr = json::array();
  for (const CriterionResult& r : rep.results) {
    arr.push_back(json{{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
    run.task("criterion " + std::to_string(r.id) + " " + r.name, r.pass ? "pass" : "FAIL");
  }
  jr["criteria"] = arr;
  if (wants(cfg, "json")) run.emit("verify.json", jr.dump(2) + "\n");
  run.result.exit_code = rep.all_pass() ? 0 : 4;
  return run.finish();
}

}  // namespace fwave
