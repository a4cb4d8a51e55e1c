#pragma once

// Subcommand bodies for the command-line tool. Each returns a process exit
// code; diagnostics go to the error stream.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "config.hpp"
#include "integrator.hpp"
#include "report.hpp"
#include "scenario.hpp"

namespace bubble::cli {

enum ExitCode : int {
  exit_collapse = 0,
  exit_no_collapse = 2,
  exit_validation = 3,
  exit_integration = 4,
  exit_io = 5,
};

struct RunOptions {
  std::string config_path;
  std::string out_dir = "out";
  int samples = 500;
  std::optional<double> allowable_angle_deg;
};

struct SweepOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::string parameter;
  std::vector<double> values;
};

namespace detail {

// Loads and validates; on failure prints diagnostics and sets the exit code.
inline std::optional<ValidatedScenario> load_scenario(const std::string& path,
                                                      const std::optional<double>& allowable_angle,
                                                      std::ostream& err, int& code) {
  try {
    ScenarioConfig config = load_config(path);
    if (allowable_angle) config.pump.allowable_angle_deg = *allowable_angle;
    return validate(config);
  } catch (const ConfigIoError& e) {
    err << "error: " << e.what() << "\n";
    code = exit_io;
  } catch (const ConfigError& e) {
    err << "error: malformed config: " << e.what() << "\n";
    code = exit_validation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    code = exit_validation;
  }
  return std::nullopt;
}

inline int exit_code_for(Termination t) noexcept {
  if (t == Termination::collapsed) return exit_collapse;
  return is_no_collapse(t) ? exit_no_collapse : exit_integration;
}

// Writes every file or none: content is rendered in memory first.
inline bool write_files(const std::filesystem::path& dir,
                        const std::vector<std::pair<std::string, std::string>>& files, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create output directory '" << dir.string() << "': " << ec.message() << "\n";
    return false;
  }
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) {
      err << "error: cannot write '" << (dir / name).string() << "'\n";
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Full pipeline: report.txt, report.json, trajectory.csv, comparison.csv.
inline int run(const RunOptions& opt, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  if (opt.samples < 2) {
    err << "error: --samples must be at least 2\n";
    return exit_validation;
  }
  int code = exit_collapse;
  const auto scenario = detail::load_scenario(opt.config_path, opt.allowable_angle_deg, err, code);
  if (!scenario) return code;

  const CollapseResult result = integrate(*scenario);
  const CollapseReport report = build_report(*scenario, result);

  std::ostringstream text, json, trajectory, comparison;
  write_text_report(text, report);
  json << to_json(report).dump(2) << "\n";
  write_comparison_csv(comparison, report);
  if (result.trajectory.intervals().empty()) {
    trajectory << "t_s,R_numerical_cm,Rdot_cm_per_s,R_closed_form_cm,R_taylor2_cm\n";
  } else {
    write_trajectory_csv(trajectory, *scenario, result, opt.samples);
  }

  if (!detail::write_files(opt.out_dir,
                           {{"report.txt", text.str()},
                            {"report.json", json.str()},
                            {"trajectory.csv", trajectory.str()},
                            {"comparison.csv", comparison.str()}},
                           err)) {
    return exit_io;
  }
  out << text.str();
  return detail::exit_code_for(result.termination());
}

/// Writes sweep.csv; exit 0 unless the inputs are bad.
inline int sweep(const SweepOptions& opt, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  int code = exit_collapse;
  const auto scenario = detail::load_scenario(opt.config_path, std::nullopt, err, code);
  if (!scenario) return code;

  SweepResult result;
  try {
    result = bubble::sweep(scenario->config(), parse_sweep_parameter(opt.parameter), opt.values);
  } catch (const ValidationError& e) {
    err << "error: sweep grid leaves the scenario invalid: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  }

  std::ostringstream csv;
  write_sweep_csv(csv, result);
  if (!detail::write_files(opt.out_dir, {{"sweep.csv", csv.str()}}, err)) return exit_io;
  out << csv.str();
  out << "numerical t_c trend: " << to_string(result.numerical_trend) << "\n"
      << "analytic t_c trend:  " << to_string(result.analytic_trend) << "\n";
  return exit_collapse;
}

/// Validates the config and prints the effective a without integrating.
inline int check(const std::string& config_path, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  int code = exit_collapse;
  const auto scenario = detail::load_scenario(config_path, std::nullopt, err, code);
  if (!scenario) return code;
  const auto& inv = scenario->inventory();
  out << "a = " << bubble::detail::sci(scenario->a(), 9) << " dyne/cm^4 ("
      << to_string(scenario->coefficient().provenance) << ")\n"
      << "gas-law a = " << bubble::detail::sci(scenario->computed_coefficient().a, 9) << " dyne/cm^4\n"
      << "n0 = " << bubble::detail::sci(inv.n0, 9) << " mol, p_g0 = " << bubble::detail::sci(inv.p_g0, 9)
      << " dyne/cm^2\n";
  return exit_collapse;
}

}  // namespace bubble::cli
