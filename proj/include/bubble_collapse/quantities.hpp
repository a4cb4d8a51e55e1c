#pragma once

// Parameter bundle for a single collapsing-bubble scenario.
// All values are raw CGS numbers: cm, g, s, dyne/cm^2, poise, erg.

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bubble {

struct FluidProperties {
  double rho = 0.0;  // g/cm^3
  double mu = 0.0;   // dynamic viscosity, poise
  double p_m = 0.0;  // mean vane pressure, dyne/cm^2

  bool operator==(const FluidProperties&) const = default;
};

// Defaults describe dry air at atmospheric density and 300 K.
struct GasSpec {
  double rho_gas = 0.01177;  // g/cm^3
  double W = 28.97;          // g/mol
  double T = 300.0;          // K
  double R_univ = 8.314e7;   // erg/(mol K)

  bool operator==(const GasSpec&) const = default;
};

struct BubbleGeometry {
  double R0 = 0.0;  // cm

  bool operator==(const BubbleGeometry&) const = default;
};

struct IntegratorSettings {
  double rel_tol = 1e-9;
  double abs_tol_R = 1e-12;     // cm
  double abs_tol_Rdot = 1e-9;   // cm/s
  double max_step = 1e-5;       // s
  double collapse_epsilon = 1e-3;
  double max_time = 1.0;        // s
  double singularity_floor = 1e-12;  // cm
  // Growth past escape_factor * R0 ends the run as a no-collapse outcome.
  double escape_factor = 1e6;

  bool operator==(const IntegratorSettings&) const = default;
};

struct PumpSettings {
  double rpm = 2000.0;
  double allowable_angle_deg = 17.0;

  bool operator==(const PumpSettings&) const = default;
};

struct ScenarioConfig {
  FluidProperties fluid;
  GasSpec gas;
  BubbleGeometry geometry;
  std::optional<double> a_override;  // dyne/cm^4
  IntegratorSettings integrator;
  PumpSettings pump;

  bool operator==(const ScenarioConfig&) const = default;
};

struct ValidationIssue {
  std::string field;
  double value = 0.0;
  std::string requirement;

  bool operator==(const ValidationIssue&) const = default;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues)
      : std::runtime_error(describe(issues)), issues_(std::move(issues)) {}

  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string describe(const std::vector<ValidationIssue>& issues) {
    std::ostringstream os;
    os << "invalid scenario:";
    for (const auto& issue : issues) {
      os << "\n  " << issue.field << " = " << issue.value << " (" << issue.requirement << ")";
    }
    return os.str();
  }

  std::vector<ValidationIssue> issues_;
};

namespace detail {

// Collects invariant violations so all of them are reported at once.
class IssueCollector {
 public:
  void require(bool ok, const char* field, double value, const char* requirement) {
    if (!std::isfinite(value)) {
      issues_.push_back({field, value, "must be finite"});
    } else if (!ok) {
      issues_.push_back({field, value, requirement});
    }
  }
  void positive(const char* field, double value) { require(value > 0.0, field, value, "must be > 0"); }
  void non_negative(const char* field, double value) {
    require(value >= 0.0, field, value, "must be >= 0");
  }

  void throw_if_any() {
    if (!issues_.empty()) throw ValidationError(std::move(issues_));
  }

 private:
  std::vector<ValidationIssue> issues_;
};

inline void check_fluid(IssueCollector& c, const FluidProperties& f) {
  c.positive("fluid.rho", f.rho);
  c.non_negative("fluid.mu", f.mu);
  c.positive("fluid.p_m", f.p_m);
}

inline void check_gas(IssueCollector& c, const GasSpec& g) {
  c.positive("gas.rho_gas", g.rho_gas);
  c.positive("gas.W", g.W);
  c.positive("gas.T", g.T);
  c.positive("gas.R_univ", g.R_univ);
}

inline void check_geometry(IssueCollector& c, const BubbleGeometry& g) { c.positive("geometry.R0", g.R0); }

inline void check_integrator(IssueCollector& c, const IntegratorSettings& s) {
  c.positive("integrator.rel_tol", s.rel_tol);
  c.positive("integrator.abs_tol_R", s.abs_tol_R);
  c.positive("integrator.abs_tol_Rdot", s.abs_tol_Rdot);
  c.positive("integrator.max_step", s.max_step);
  c.require(s.collapse_epsilon > 0.0 && s.collapse_epsilon < 1.0, "integrator.collapse_epsilon",
            s.collapse_epsilon, "must be in (0, 1)");
  c.positive("integrator.max_time", s.max_time);
  c.positive("integrator.singularity_floor", s.singularity_floor);
  c.require(s.escape_factor > 1.0, "integrator.escape_factor", s.escape_factor, "must be > 1");
}

inline void check_pump(IssueCollector& c, const PumpSettings& p) {
  c.non_negative("pump.rpm", p.rpm);
  c.positive("pump.allowable_angle_deg", p.allowable_angle_deg);
}

}  // namespace detail

inline void validate_settings(const IntegratorSettings& s) {
  detail::IssueCollector c;
  detail::check_integrator(c, s);
  c.throw_if_any();
}

}  // namespace bubble
