#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fwave/cli.hpp"
#include "fwave/error.hpp"

// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 failed verification report.
int main(int argc, char** argv) {
  CLI::App app{"fractional-noise wave equation experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("-c,--config", config_path, "run configuration file");
  app.add_option("--set", overrides, "config override section.key=value (repeatable)");

  CLI::App* sample = app.add_subcommand("sample", "draw noise and linear-field realizations");
  CLI::App* sigma = app.add_subcommand("sigma", "renormalization curve and divergence fit");
  CLI::App* converge = app.add_subcommand("converge", "Cauchy ladders and solution convergence");
  CLI::App* solve = app.add_subcommand("solve", "one full solve with Picard trace");

  CLI::App* admiss = app.add_subcommand("admiss", "exact admissible-pair scan");
  std::vector<int> dims = {2, 3, 4, 5, 6, 7};
  int s_points = 20;
  std::vector<std::string> s_values;
  admiss->add_option("--dims", dims, "dimensions to scan")->delimiter(',');
  admiss->add_option("--s-points", s_points, "uniform rational s samples in (1/4, 1/2]");
  admiss->add_option("--s", s_values, "explicit rational s values (overrides --s-points)")
      ->delimiter(',');

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::vector<int> only;
  verify->add_option("--only", only, "criterion ids to run (default: all)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    fwave::ConfigMap map;
    if (!config_path.empty()) map = fwave::parse_config_file(config_path);
    for (const std::string& o : overrides) fwave::apply_override(map, o);
    const fwave::RunConfig cfg = fwave::build_run_config(map);

    fwave::CommandResult res;
    if (sample->parsed()) {
      res = fwave::cmd_sample(cfg);
    } else if (sigma->parsed()) {
      res = fwave::cmd_sigma(cfg);
    } else if (converge->parsed()) {
      res = fwave::cmd_converge(cfg);
    } else if (solve->parsed()) {
      res = fwave::cmd_solve(cfg);
    } else if (admiss->parsed()) {
      std::vector<fwave::Rat> s_grid;
      if (!s_values.empty()) {
        for (const std::string& s : s_values) s_grid.push_back(fwave::parse_rat_text(s));
      } else {
        // s_j = 1/4 + j/(4p), j = 1..p: uniform over (1/4, 1/2]
        for (int j = 1; j <= s_points; ++j) {
          s_grid.push_back(fwave::Rat(s_points + j, 4 * static_cast<std::int64_t>(s_points)));
        }
      }
      res = fwave::cmd_admiss(cfg, dims, s_grid);
    } else if (verify->parsed()) {
      res = fwave::cmd_verify(cfg, &std::cout, only);
    }

    for (const std::string& f : res.files) std::cout << "wrote " << f << "\n";
    return res.exit_code;
  } catch (const fwave::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == fwave::ErrKind::Config ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
