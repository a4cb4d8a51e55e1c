#pragma once

#include "gas_model.hpp"
#include "quantities.hpp"

namespace bubble {

// A config whose invariants all hold, with the effective coefficient a resolved.
class ValidatedScenario {
 public:
  const ScenarioConfig& config() const noexcept { return config_; }
  const FluidProperties& fluid() const noexcept { return config_.fluid; }
  const GasSpec& gas() const noexcept { return config_.gas; }
  const BubbleGeometry& geometry() const noexcept { return config_.geometry; }
  const IntegratorSettings& integrator() const noexcept { return config_.integrator; }
  const PumpSettings& pump() const noexcept { return config_.pump; }

  const GasInventory& inventory() const noexcept { return inventory_; }
  // Effective coefficient used by every downstream computation.
  const PressureCoefficient& coefficient() const noexcept { return coefficient_; }
  // What the gas law gives, whether or not it was overridden.
  const PressureCoefficient& computed_coefficient() const noexcept { return computed_; }

  double rho() const noexcept { return config_.fluid.rho; }
  double mu() const noexcept { return config_.fluid.mu; }
  double p_m() const noexcept { return config_.fluid.p_m; }
  double R0() const noexcept { return config_.geometry.R0; }
  double a() const noexcept { return coefficient_.a; }

  bool operator==(const ValidatedScenario&) const = default;

 private:
  friend ValidatedScenario validate(const ScenarioConfig& config);

  ScenarioConfig config_;
  GasInventory inventory_;
  PressureCoefficient computed_;
  PressureCoefficient coefficient_;
};

/// Checks every invariant and resolves a. Throws ValidationError listing all
/// offending fields.
inline ValidatedScenario validate(const ScenarioConfig& config) {
  detail::IssueCollector c;
  detail::check_fluid(c, config.fluid);
  detail::check_gas(c, config.gas);
  detail::check_geometry(c, config.geometry);
  detail::check_integrator(c, config.integrator);
  detail::check_pump(c, config.pump);
  if (config.a_override) {
    c.require(true, "a_override", *config.a_override, "");
  }
  c.throw_if_any();

  ValidatedScenario s;
  s.config_ = config;
  s.inventory_ = gas_inventory(config.gas, config.geometry);
  s.computed_ = pressure_coefficient(config.fluid, config.gas, s.inventory_, config.geometry);
  s.coefficient_ = config.a_override
                       ? PressureCoefficient{*config.a_override, CoefficientProvenance::overridden}
                       : s.computed_;
  return s;
}

// Scenario used throughout for the gerotor pump: light oil, 0.5 mm bubble,
// a pinned at 1e7 dyne/cm^4.
inline ScenarioConfig reference_config() {
  ScenarioConfig c;
  c.fluid = {8.2, 0.0287, 1e7};
  c.geometry = {0.05};
  c.a_override = 1e7;
  return c;
}

// Same inputs with a left to the gas law.
inline ScenarioConfig literal_gas_config() {
  ScenarioConfig c = reference_config();
  c.a_override.reset();
  return c;
}

}  // namespace bubble
