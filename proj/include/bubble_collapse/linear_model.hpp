#pragma once

// Linearization of the radius equation about its initial point and the
// analytic collapse estimates that follow from it.
//
// Tangent plane of F at (0, R0, 0, -a R0/rho):
//   rho R0^2 R'' - 2 mu R' + a R0^2 R = 0,   R(0) = R0, R'(0) = 0.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "scenario.hpp"

namespace bubble {

enum class RootKind { complex_pair, real_distinct, repeated };

struct LinearizedOde {
  double c2 = 0.0;  // rho R0^2
  double c1 = 0.0;  // -2 mu
  double c0 = 0.0;  // a R0^2
  double R0 = 0.0;
  RootKind kind = RootKind::complex_pair;
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  // mu^2 - a rho R0^4: sign decides oscillatory vs monotone.
  double discriminant = 0.0;
  // mu^2 - a rho R0^3, the radicand as it is usually quoted with the closed form.
  double quoted_discriminant = 0.0;

  std::complex<double> characteristic_value(std::complex<double> lambda) const {
    return c2 * lambda * lambda + c1 * lambda + c0;
  }
};

inline LinearizedOde linearize(const ValidatedScenario& s) {
  const double rho = s.rho(), mu = s.mu(), a = s.a(), R0 = s.R0();
  const double R0_sq = R0 * R0;
  LinearizedOde lin;
  lin.c2 = rho * R0_sq;
  lin.c1 = -2.0 * mu;
  lin.c0 = a * R0_sq;
  lin.R0 = R0;
  lin.discriminant = mu * mu - a * rho * R0_sq * R0_sq;
  lin.quoted_discriminant = mu * mu - a * rho * R0_sq * R0;

  const double denom = rho * R0_sq;
  if (lin.discriminant < 0.0) {
    lin.kind = RootKind::complex_pair;
    const double im = std::sqrt(-lin.discriminant) / denom;
    lin.lambda_plus = {mu / denom, im};
    lin.lambda_minus = {mu / denom, -im};
  } else if (lin.discriminant > 0.0) {
    lin.kind = RootKind::real_distinct;
    const double root = std::sqrt(lin.discriminant);
    lin.lambda_plus = (mu + root) / denom;
    lin.lambda_minus = (mu - root) / denom;
  } else {
    lin.kind = RootKind::repeated;
    lin.lambda_plus = lin.lambda_minus = mu / denom;
  }
  return lin;
}

/// Solution of the linear initial value problem, with its first two
/// derivatives. Always real: complex roots use e^(alpha t)(A cos + B sin).
class ClosedFormSolution {
 public:
  explicit ClosedFormSolution(const LinearizedOde& lin) : lin_(lin) {
    const double R0 = lin.R0;
    switch (lin.kind) {
      case RootKind::complex_pair:
        alpha_ = lin.lambda_plus.real();
        beta_ = lin.lambda_plus.imag();
        A_ = R0;
        B_ = -alpha_ * R0 / beta_;
        break;
      case RootKind::real_distinct: {
        const double l1 = lin.lambda_plus.real(), l2 = lin.lambda_minus.real();
        A_ = -l2 * R0 / (l1 - l2);
        B_ = l1 * R0 / (l1 - l2);
        break;
      }
      case RootKind::repeated:
        alpha_ = lin.lambda_plus.real();
        A_ = R0;
        B_ = -alpha_ * R0;
        break;
    }
  }

  double value(double t) const noexcept { return derivative(t, 0); }

  // order = 0, 1 or 2.
  double derivative(double t, int order) const noexcept {
    switch (lin_.kind) {
      case RootKind::complex_pair: {
        // d/dt acts on e^(at)(A cos bt + B sin bt) as a rotation-scaling of (A, B).
        double A = A_, B = B_;
        for (int k = 0; k < order; ++k) {
          const double nA = alpha_ * A + beta_ * B;
          const double nB = alpha_ * B - beta_ * A;
          A = nA;
          B = nB;
        }
        return std::exp(alpha_ * t) * (A * std::cos(beta_ * t) + B * std::sin(beta_ * t));
      }
      case RootKind::real_distinct: {
        const double l1 = lin_.lambda_plus.real(), l2 = lin_.lambda_minus.real();
        return A_ * std::pow(l1, order) * std::exp(l1 * t) + B_ * std::pow(l2, order) * std::exp(l2 * t);
      }
      case RootKind::repeated: {
        // (A + B t) e^(l t); k-th derivative is (l^k A + k l^(k-1) B + l^k B t) e^(l t).
        const double l = alpha_;
        const double lk = std::pow(l, order);
        const double lk1 = order == 0 ? 0.0 : order * std::pow(l, order - 1);
        return (lk * A_ + lk1 * B_ + lk * B_ * t) * std::exp(l * t);
      }
    }
    return 0.0;
  }

  // c2 R'' + c1 R' + c0 R at t.
  double ode_residual(double t) const noexcept {
    return lin_.c2 * derivative(t, 2) + lin_.c1 * derivative(t, 1) + lin_.c0 * derivative(t, 0);
  }

  // Sum of the magnitudes of the three residual terms, for relative checks.
  double ode_scale(double t) const noexcept {
    return std::abs(lin_.c2 * derivative(t, 2)) + std::abs(lin_.c1 * derivative(t, 1)) +
           std::abs(lin_.c0 * derivative(t, 0));
  }

  /// First t > 0 with R(t) = 0, if the solution ever reaches zero.
  std::optional<double> first_zero() const noexcept {
    switch (lin_.kind) {
      case RootKind::complex_pair:
        return std::atan2(beta_, alpha_) / beta_;
      case RootKind::real_distinct: {
        const double l1 = lin_.lambda_plus.real(), l2 = lin_.lambda_minus.real();
        if (l2 <= 0.0) return std::nullopt;
        return std::log(l1 / l2) / (l1 - l2);
      }
      case RootKind::repeated:
        if (alpha_ <= 0.0) return std::nullopt;
        return 1.0 / alpha_;
    }
    return std::nullopt;
  }

  const LinearizedOde& ode() const noexcept { return lin_; }

 private:
  LinearizedOde lin_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double A_ = 0.0;
  double B_ = 0.0;
};

inline double closed_form_R(const LinearizedOde& lin, double t) { return ClosedFormSolution(lin).value(t); }

// Second-order Taylor solution  R0 (1 - a t^2 / (2 rho)).
inline double taylor2_R(const ValidatedScenario& s, double t) noexcept {
  return s.R0() * (1.0 - s.a() / (2.0 * s.rho()) * t * t);
}

// Coefficient of t^3 in the linear solution: -a mu / (3 rho^2 R0).
inline double cubic_coefficient(const ValidatedScenario& s) noexcept {
  return -s.a() * s.mu() / (3.0 * s.rho() * s.rho() * s.R0());
}

inline double taylor3_R(const ValidatedScenario& s, double t) noexcept {
  return taylor2_R(s, t) + cubic_coefficient(s) * t * t * t;
}

/// sqrt(2 rho / a), the zero of the quadratic Taylor solution. Empty when
/// a <= 0: the bubble is not pushed inwards and never collapses.
inline std::optional<double> t_c_analytic(const ValidatedScenario& s) noexcept {
  if (!(s.a() > 0.0)) return std::nullopt;
  return std::sqrt(2.0 * s.rho() / s.a());
}

struct AnalyticSolution {
  LinearizedOde ode;
  double taylor2_t2 = 0.0;  // coefficient of t^2
  double a3 = 0.0;          // coefficient of t^3
  std::optional<double> t_c;
  std::optional<double> closed_form_zero;
};

inline AnalyticSolution analytic_solution(const ValidatedScenario& s) {
  AnalyticSolution sol;
  sol.ode = linearize(s);
  sol.taylor2_t2 = -s.a() * s.R0() / (2.0 * s.rho());
  sol.a3 = cubic_coefficient(s);
  sol.t_c = t_c_analytic(s);
  sol.closed_form_zero = ClosedFormSolution(sol.ode).first_zero();
  return sol;
}

}  // namespace bubble
