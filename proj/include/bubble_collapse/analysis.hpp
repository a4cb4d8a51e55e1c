#pragma once

// Pump-side consequences of a collapse time, and one-parameter sweeps.

#include <algorithm>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "integrator.hpp"
#include "linear_model.hpp"
#include "scenario.hpp"

namespace bubble {

// 1 rpm = 6 deg/s.
inline double rotation_angle(double rpm, double t_c) noexcept { return rpm * 6.0 * t_c; }

inline double max_safe_rpm(double t_c, double allowable_angle_deg) {
  if (!(t_c > 0.0) || !(allowable_angle_deg > 0.0)) {
    throw std::invalid_argument("max_safe_rpm needs t_c > 0 and allowable angle > 0");
  }
  return allowable_angle_deg / (6.0 * t_c);
}

struct PumpKinematics {
  double rpm = 0.0;
  double angle_during_collapse = 0.0;  // degrees
  double max_safe_rpm = 0.0;
};

inline PumpKinematics pump_kinematics(double rpm, double t_c, double allowable_angle_deg) {
  return {rpm, rotation_angle(rpm, t_c), max_safe_rpm(t_c, allowable_angle_deg)};
}

enum class SweepParameter { rho, mu, p_m, R0 };

constexpr std::string_view to_string(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::rho: return "rho";
    case SweepParameter::mu: return "mu";
    case SweepParameter::p_m: return "p_m";
    case SweepParameter::R0: return "R0";
  }
  return "?";
}

inline SweepParameter parse_sweep_parameter(std::string_view name) {
  for (auto p : {SweepParameter::rho, SweepParameter::mu, SweepParameter::p_m, SweepParameter::R0}) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) + "' (rho, mu, p_m, R0)");
}

enum class Trend { increasing, decreasing, constant, mixed, insufficient };

constexpr std::string_view to_string(Trend t) noexcept {
  switch (t) {
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::constant: return "constant";
    case Trend::mixed: return "mixed";
    case Trend::insufficient: return "insufficient";
  }
  return "?";
}

struct SweepPoint {
  double value = 0.0;
  PressureCoefficient coefficient;
  std::optional<double> t_c_numerical;
  std::optional<double> t_c_analytic;
  Termination termination = Termination::max_time;

  bool collapsed() const noexcept { return t_c_numerical.has_value(); }
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::rho;
  std::vector<SweepPoint> points;  // grid order
  Trend numerical_trend = Trend::insufficient;
  Trend analytic_trend = Trend::insufficient;
};

namespace detail {

inline ScenarioConfig with_parameter(ScenarioConfig c, SweepParameter p, double value) {
  switch (p) {
    case SweepParameter::rho: c.fluid.rho = value; break;
    case SweepParameter::mu: c.fluid.mu = value; break;
    case SweepParameter::p_m: c.fluid.p_m = value; break;
    case SweepParameter::R0: c.geometry.R0 = value; break;
  }
  return c;
}

// Relative change below which neighbouring values count as equal.
inline constexpr double trend_tolerance = 1e-12;

inline Trend classify(const std::vector<std::optional<double>>& series) {
  std::vector<double> v;
  for (const auto& x : series) {
    if (x) v.push_back(*x);
  }
  if (v.size() < 2) return Trend::insufficient;
  bool up = false, down = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    const double scale = std::max(std::abs(v[i]), std::abs(v[i - 1]));
    if (std::abs(d) <= trend_tolerance * scale) continue;
    (d > 0.0 ? up : down) = true;
  }
  if (up && down) return Trend::mixed;
  if (up) return Trend::increasing;
  if (down) return Trend::decreasing;
  return Trend::constant;
}

}  // namespace detail

/// Re-runs both collapse estimates for each grid value. a is recomputed from
/// the gas law unless the base config pins it. Points run concurrently;
/// results stay in grid order. Throws if the grid is not strictly monotone or
/// any value makes the scenario invalid.
inline SweepResult sweep(const ScenarioConfig& base, SweepParameter parameter, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  const bool ascending = grid.size() < 2 || grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (ascending ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
      throw std::invalid_argument("sweep grid must be strictly monotone");
    }
  }

  std::vector<ValidatedScenario> scenarios;
  scenarios.reserve(grid.size());
  for (double value : grid) scenarios.push_back(validate(detail::with_parameter(base, parameter, value)));

  std::vector<std::future<SweepPoint>> pending;
  pending.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pending.push_back(std::async(std::launch::async, [&scenarios, &grid, i] {
      const ValidatedScenario& s = scenarios[i];
      SweepPoint point;
      point.value = grid[i];
      point.coefficient = s.coefficient();
      point.t_c_analytic = t_c_analytic(s);
      const CollapseResult r = integrate(s);
      point.t_c_numerical = r.t_c;
      point.termination = r.termination();
      return point;
    }));
  }

  SweepResult result;
  result.parameter = parameter;
  for (auto& f : pending) result.points.push_back(f.get());

  std::vector<std::optional<double>> numerical, analytic;
  for (const auto& p : result.points) {
    numerical.push_back(p.t_c_numerical);
    analytic.push_back(p.t_c_analytic);
  }
  result.numerical_trend = detail::classify(numerical);
  result.analytic_trend = detail::classify(analytic);
  return result;
}

}  // namespace bubble
