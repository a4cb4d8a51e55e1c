#pragma once

// Radius equation  rho R'' R^2 - 2 mu R' + a R^3 = 0  with R(0) = R0, R'(0) = 0.

#include <stdexcept>
#include <string>

#include "scenario.hpp"

namespace bubble {

struct BubbleState {
  double t = 0.0;     // s
  double R = 0.0;     // cm
  double Rdot = 0.0;  // cm/s

  bool operator==(const BubbleState&) const = default;
};

struct OdeParams {
  double rho = 0.0;  // g/cm^3
  double mu = 0.0;   // poise
  double a = 0.0;    // dyne/cm^4
};

inline OdeParams ode_params(const ValidatedScenario& s) noexcept { return {s.rho(), s.mu(), s.a()}; }

inline constexpr double default_singularity_floor = 1e-12;  // cm

class SingularityError : public std::domain_error {
 public:
  explicit SingularityError(double R)
      : std::domain_error("radius " + std::to_string(R) + " cm is at or below the singularity floor"),
        radius_(R) {}
  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

inline double acceleration(double R, double Rdot, const OdeParams& p,
                           double floor = default_singularity_floor) {
  if (!(R > floor)) throw SingularityError(R);
  return (2.0 * p.mu * Rdot - p.a * R * R * R) / (p.rho * R * R);
}

inline double acceleration(const BubbleState& s, const OdeParams& p,
                           double floor = default_singularity_floor) {
  return acceleration(s.R, s.Rdot, p, floor);
}

// F(t, R, R', R'') with all arguments treated as independent variables.
inline double residual_F(double /*t*/, double R, double Rdot, double Rddot, const OdeParams& p) noexcept {
  return p.rho * Rddot * R * R - 2.0 * p.mu * Rdot + p.a * R * R * R;
}

struct FPartials {
  double dt = 0.0;
  double dR = 0.0;
  double dRdot = 0.0;
  double dRddot = 0.0;
};

struct ExpansionPoint {
  double t = 0.0;
  double R = 0.0;
  double Rdot = 0.0;
  double Rddot = 0.0;
};

// Point where the initial conditions satisfy F = 0.
inline ExpansionPoint initial_expansion_point(double R0, const OdeParams& p) noexcept {
  return {0.0, R0, 0.0, -p.a * R0 / p.rho};
}

/// Gradient of F at an arbitrary point. At the initial expansion point it
/// reduces to (0, a R0^2, -2 mu, rho R0^2).
inline FPartials partials_F(const ExpansionPoint& at, const OdeParams& p) noexcept {
  const double R = at.R;
  return {0.0,
          2.0 * p.rho * at.Rddot * R + 3.0 * p.a * R * R,
          -2.0 * p.mu,
          p.rho * R * R};
}

inline BubbleState initial_state(const BubbleGeometry& geom) noexcept { return {0.0, geom.R0, 0.0}; }

}  // namespace bubble
