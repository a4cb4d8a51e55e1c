#include <CLI11.hpp>

#include "bubble_collapse/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Collapse time of a gas bubble in a gerotor pump vane"};
  app.require_subcommand(1);

  bubble::cli::RunOptions run_opt;
  double allowable_angle = 0.0;
  auto* run = app.add_subcommand("run", "integrate, evaluate the analytic model, write report and tables");
  run->add_option("--config", run_opt.config_path, "scenario file")->required();
  run->add_option("--out", run_opt.out_dir, "output directory")->capture_default_str();
  run->add_option("--samples", run_opt.samples, "trajectory rows")->capture_default_str();
  auto* angle_opt = run->add_option("--allowable-angle-deg", allowable_angle,
                                    "allowable pignon rotation during collapse (overrides [pump])");

  bubble::cli::SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "collapse times over a grid of one parameter");
  sweep->add_option("--config", sweep_opt.config_path, "scenario file")->required();
  sweep->add_option("--out", sweep_opt.out_dir, "output directory")->capture_default_str();
  sweep->add_option("--param", sweep_opt.parameter, "rho, mu, p_m or R0")->required();
  sweep->add_option("--values", sweep_opt.values, "comma-separated grid")->required()->delimiter(',');

  std::string check_config;
  auto* check = app.add_subcommand("check", "validate the config and print the effective a");
  check->add_option("--config", check_config, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bubble::cli::exit_validation;
  }

  if (*run) {
    if (*angle_opt) run_opt.allowable_angle_deg = allowable_angle;
    return bubble::cli::run(run_opt);
  }
  if (*sweep) return bubble::cli::sweep(sweep_opt);
  return bubble::cli::check(check_config);
}
