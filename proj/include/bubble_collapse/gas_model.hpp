#pragma once

// Perfect-gas inventory of the bubble and the pressure coefficient a that
// drives the radius equation.

#include <numbers>
#include <string_view>

#include "quantities.hpp"

namespace bubble {

struct GasInventory {
  double V0 = 0.0;   // cm^3
  double M = 0.0;    // g
  double n0 = 0.0;   // mol
  double p_g0 = 0.0; // dyne/cm^2

  bool operator==(const GasInventory&) const = default;
};

enum class CoefficientProvenance { computed, overridden };

constexpr std::string_view to_string(CoefficientProvenance p) noexcept {
  return p == CoefficientProvenance::computed ? "computed" : "overridden";
}

struct PressureCoefficient {
  double a = 0.0;  // dyne/cm^4
  CoefficientProvenance provenance = CoefficientProvenance::computed;

  bool operator==(const PressureCoefficient&) const = default;
};

inline double sphere_volume(double radius) noexcept {
  return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
}

inline GasInventory gas_inventory(const GasSpec& gas, const BubbleGeometry& geom) noexcept {
  GasInventory inv;
  inv.V0 = sphere_volume(geom.R0);
  inv.M = gas.rho_gas * inv.V0;
  inv.n0 = inv.M / gas.W;
  const double R0 = geom.R0;
  inv.p_g0 = 3.0 * inv.n0 * gas.R_univ * gas.T / (4.0 * std::numbers::pi * R0 * R0 * R0);
  return inv;
}

/// a = p_m/R0^2 - 3 n0 R T / (4 pi R0^5).
///
/// Positive a means the vane pressure exceeds the gas pressure and the bubble
/// is pushed inwards. Nothing here forces a > 0: with air at atmospheric
/// density and p_m = 1e7 the gas term wins and a comes out negative.
inline PressureCoefficient pressure_coefficient(const FluidProperties& fluid, const GasSpec& gas,
                                                const GasInventory& inv,
                                                const BubbleGeometry& geom) noexcept {
  const double R0 = geom.R0;
  const double R0_sq = R0 * R0;
  const double gas_term = 3.0 * inv.n0 * gas.R_univ * gas.T / (4.0 * std::numbers::pi * R0_sq * R0_sq * R0);
  return {fluid.p_m / R0_sq - gas_term, CoefficientProvenance::computed};
}

// Same coefficient through the internal gas pressure.
inline double pressure_coefficient_from_gas_pressure(double p_m, double p_g0, double R0) noexcept {
  return (p_m - p_g0) / (R0 * R0);
}

}  // namespace bubble
