#pragma once

// Radial fields of the oil around the bubble and the terms of the momentum
// balance they produce. All vector quantities are radial components.

#include "collapse_ode.hpp"
#include "gas_model.hpp"

namespace bubble {

struct RadialPoint {
  double r = 0.0;  // cm, > 0
  double t = 0.0;  // s
};

struct RadialSample {
  double R = 0.0;      // cm
  double Rdot = 0.0;   // cm/s
  double Rddot = 0.0;  // cm/s^2
};

// Linear-in-r pressure: equals p_m once the bubble is gone and p_m - p_g0 at
// r = R = R0 when a comes from the gas law.
inline double pressure(const RadialPoint& point, double R, double a, const FluidProperties& fluid,
                       const BubbleGeometry& geom) noexcept {
  return a * R * point.r + (geom.R0 - R) / geom.R0 * fluid.p_m;
}

// Incompressible radial flow matching the wall velocity at r = R.
inline double velocity(const RadialPoint& point, const RadialSample& s) noexcept {
  return s.R * s.R * s.Rdot / (point.r * point.r);
}

inline double velocity_time_derivative(const RadialPoint& point, const RadialSample& s) noexcept {
  return (s.R * s.R * s.Rddot + 2.0 * s.R * s.Rdot * s.Rdot) / (point.r * point.r);
}

inline double convective_term(const RadialPoint& point, const RadialSample& s) noexcept {
  const double r = point.r;
  const double R2 = s.R * s.R;
  return -2.0 * R2 * R2 * s.Rdot * s.Rdot / (r * r * r * r * r);
}

inline double laplacian_term(const RadialPoint& point, const RadialSample& s) noexcept {
  const double r2 = point.r * point.r;
  return 2.0 * s.R * s.R * s.Rdot / (r2 * r2);
}

// Independent of r.
inline double pressure_gradient(const RadialSample& s, double a) noexcept { return a * s.R; }

/// rho (dv/dt + v dv/dr) + dp/dr - mu lap(v). Vanishes at r = R exactly when
/// (R, R', R'') satisfies the radius equation.
inline double ns_residual(const RadialPoint& point, const RadialSample& s, const FluidProperties& fluid,
                          double a) noexcept {
  return fluid.rho * (velocity_time_derivative(point, s) + convective_term(point, s)) +
         pressure_gradient(s, a) - fluid.mu * laplacian_term(point, s);
}

}  // namespace bubble
