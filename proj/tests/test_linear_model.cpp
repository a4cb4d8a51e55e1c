#include <gtest/gtest.h>

#include <random>

#include "bubble_collapse/integrator.hpp"
#include "bubble_collapse/linear_model.hpp"
#include "oracles.hpp"

namespace bubble {
namespace {

ValidatedScenario scenario(double rho, double mu, double a, double R0) {
  ScenarioConfig c = reference_config();
  c.fluid.rho = rho;
  c.fluid.mu = mu;
  c.a_override = a;
  c.geometry.R0 = R0;
  return validate(c);
}

ValidatedScenario reference() { return validate(reference_config()); }

void expect_roots_on_characteristic(const LinearizedOde& lin) {
  for (auto lambda : {lin.lambda_plus, lin.lambda_minus}) {
    const double scale = std::abs(lin.c2 * lambda * lambda) + std::abs(lin.c1 * lambda) + std::abs(lin.c0);
    EXPECT_LE(std::abs(lin.characteristic_value(lambda)), 1e-12 * scale);
  }
}

TEST(Linearize, ReferenceIsOscillatory) {
  const LinearizedOde lin = linearize(reference());
  EXPECT_DOUBLE_EQ(lin.c2, 8.2 * 0.0025);
  EXPECT_DOUBLE_EQ(lin.c1, -0.0574);
  EXPECT_DOUBLE_EQ(lin.c0, 1e7 * 0.0025);
  EXPECT_EQ(lin.kind, RootKind::complex_pair);
  EXPECT_NEAR(lin.discriminant, -512.4991763100002, 1e-9);
  EXPECT_NEAR(lin.quoted_discriminant, -10249.999176310002, 1e-8);
  EXPECT_EQ(lin.lambda_plus, std::conj(lin.lambda_minus));
  expect_roots_on_characteristic(lin);
}

TEST(Linearize, InviscidRootsArePureImaginary) {
  const LinearizedOde lin = linearize(scenario(8.2, 0.0, 1e7, 0.05));
  EXPECT_EQ(lin.lambda_plus.real(), 0.0);
  EXPECT_NEAR(lin.lambda_plus.imag(), 1104.3152607484656, 1e-9);
  EXPECT_NEAR(lin.lambda_minus.imag(), -1104.3152607484656, 1e-9);
}

TEST(Linearize, UnforcedRootsFactor) {
  const LinearizedOde lin = linearize(scenario(8.2, 0.0287, 0.0, 0.05));
  EXPECT_EQ(lin.kind, RootKind::real_distinct);
  EXPECT_NEAR(lin.lambda_plus.real(), 2.0 * 0.0287 / (8.2 * 0.0025), 1e-12);
  EXPECT_NEAR(lin.lambda_minus.real(), 0.0, 1e-15);
}

TEST(Linearize, RootsSatisfyCharacteristicEquationEverywhere) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const LinearizedOde lin =
        linearize(scenario(testing::uniform(rng, 0.5, 10.0), testing::log_uniform(rng, 1e-4, 100.0),
                           testing::uniform(rng, -1e8, 1e8), testing::uniform(rng, 0.01, 0.1)));
    expect_roots_on_characteristic(lin);
  }
}

TEST(ClosedForm, InitialConditions) {
  const ClosedFormSolution sol(linearize(reference()));
  EXPECT_NEAR(sol.value(0.0), 0.05, 1e-10 * 0.05);
  EXPECT_NEAR(sol.derivative(0.0, 1), 0.0, 1e-10 * 0.05 * 1104.0);
  EXPECT_NEAR(sol.derivative(0.0, 2), -1e7 * 0.05 / 8.2, 1e-9 * 6.1e4);
  EXPECT_EQ(closed_form_R(linearize(reference()), 0.0), sol.value(0.0));
}

TEST(ClosedForm, InviscidIsCosine) {
  const ClosedFormSolution sol(linearize(scenario(8.2, 0.0, 1e7, 0.05)));
  const testing::Harmonic h{0.05, std::sqrt(1e7 / 8.2)};
  for (double t : {0.0, 3e-4, 9e-4, 1.4e-3, 2.5e-3}) {
    EXPECT_NEAR(sol.value(t), h.radius(t), 1e-14);
  }
}

TEST(ClosedForm, MatchesBruteForceLinearIntegration) {
  const LinearizedOde lin = linearize(reference());
  const double brute = testing::integrate_linear_ode(lin.c2, lin.c1, lin.c0, lin.R0, 1e-3, 20000);
  EXPECT_NEAR(closed_form_R(lin, 1e-3), brute, 1e-8 * std::abs(brute));
  // Independent DOP853 value.
  EXPECT_NEAR(closed_form_R(lin, 1e-3), 0.022462155392013183, 1e-8 * 0.0225);
}

TEST(ClosedForm, OverdampedAndCriticalCasesMatchBruteForce) {
  // Large viscosity makes the characteristic roots real.
  const ValidatedScenario over = scenario(8.2, 50.0, 1e7, 0.05);
  ASSERT_EQ(linearize(over).kind, RootKind::real_distinct);
  const LinearizedOde lo = linearize(over);
  for (double t : {1e-4, 1e-3, 5e-3}) {
    const double brute = testing::integrate_linear_ode(lo.c2, lo.c1, lo.c0, lo.R0, t, 20000);
    EXPECT_NEAR(closed_form_R(lo, t), brute, 1e-8 * std::abs(brute));
  }

  LinearizedOde crit = lo;
  crit.c1 = -2.0 * std::sqrt(crit.c2 * crit.c0);
  crit.kind = RootKind::repeated;
  crit.discriminant = 0.0;
  crit.lambda_plus = crit.lambda_minus = -crit.c1 / (2.0 * crit.c2);
  for (double t : {1e-4, 1e-3}) {
    const double brute = testing::integrate_linear_ode(crit.c2, crit.c1, crit.c0, crit.R0, t, 20000);
    EXPECT_NEAR(closed_form_R(crit, t), brute, 1e-8 * std::abs(brute));
  }
}

TEST(ClosedForm, SatisfiesLinearOde) {
  std::mt19937_64 rng(23);
  std::vector<ValidatedScenario> cases = {reference(), scenario(8.2, 0.0, 1e7, 0.05),
                                          scenario(8.2, 50.0, 1e7, 0.05)};
  for (int i = 0; i < 30; ++i) {
    cases.push_back(scenario(testing::uniform(rng, 0.5, 10.0), testing::uniform(rng, 0.0, 1.0),
                             testing::log_uniform(rng, 1e6, 1e8), testing::uniform(rng, 0.01, 0.1)));
  }
  for (const auto& s : cases) {
    const ClosedFormSolution sol(linearize(s));
    const double horizon = 2.0 * *t_c_analytic(s);
    for (int k = 0; k <= 200; ++k) {
      const double t = horizon * k / 200.0;
      EXPECT_LE(std::abs(sol.ode_residual(t)), 1e-9 * sol.ode_scale(t)) << "t=" << t;
    }
  }
}

TEST(ClosedForm, FirstZero) {
  const ValidatedScenario inv = scenario(8.2, 0.0, 1e7, 0.05);
  const auto zero = ClosedFormSolution(linearize(inv)).first_zero();
  ASSERT_TRUE(zero);
  EXPECT_NEAR(*zero, std::acos(-1.0) / (2.0 * std::sqrt(1e7 / 8.2)), 1e-15);

  const ClosedFormSolution ref(linearize(reference()));
  ASSERT_TRUE(ref.first_zero());
  EXPECT_NEAR(ref.value(*ref.first_zero()), 0.0, 1e-15);

  const ClosedFormSolution over(linearize(scenario(8.2, 50.0, 1e7, 0.05)));
  ASSERT_TRUE(over.first_zero());
  EXPECT_NEAR(over.value(*over.first_zero()), 0.0, 1e-12);

  EXPECT_FALSE(ClosedFormSolution(linearize(scenario(8.2, 0.0287, -5.3e7, 0.05))).first_zero());
  EXPECT_FALSE(ClosedFormSolution(linearize(scenario(8.2, 0.0287, 0.0, 0.05))).first_zero());
}

TEST(Taylor2, VanishesAtAnalyticCollapseTime) {
  const ValidatedScenario s = reference();
  EXPECT_NEAR(taylor2_R(s, std::sqrt(2.0 * 8.2 / 1e7)), 0.0, 1e-17);
  EXPECT_EQ(taylor2_R(s, 0.0), 0.05);
  EXPECT_NEAR(taylor2_R(s, 6e-4), 0.039024390243902446, 1e-15);
}

TEST(TcAnalytic, Values) {
  EXPECT_NEAR(*t_c_analytic(reference()), 0.0012806248474865696, 1e-18);
  EXPECT_NEAR(*t_c_analytic(scenario(8.2, 0.0287, 4e7, 0.05)), 0.5 * *t_c_analytic(reference()), 1e-18);
  EXPECT_NEAR(*t_c_analytic(scenario(0.82, 0.0287, 1e7, 0.05)), 4.049691346263317e-4, 1e-18);
  EXPECT_FALSE(t_c_analytic(scenario(8.2, 0.0287, 0.0, 0.05)));
  EXPECT_FALSE(t_c_analytic(scenario(8.2, 0.0287, -5.3e7, 0.05)));
}

TEST(CubicCoefficient, Values) {
  const ValidatedScenario s = reference();
  EXPECT_NEAR(cubic_coefficient(s), -28455.284552845533, 1e-8);
  const double term = std::abs(cubic_coefficient(s) * std::pow(*t_c_analytic(s), 3));
  EXPECT_NEAR(term, 5.976249288270658e-05, 1e-15);
  EXPECT_LT(term, 1e-4);
  EXPECT_EQ(cubic_coefficient(scenario(8.2, 0.0, 1e7, 0.05)), 0.0);
}

TEST(CubicCoefficient, EqualsSixthOfThirdDerivative) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const ValidatedScenario s = scenario(testing::uniform(rng, 0.5, 10.0), testing::uniform(rng, 0.0, 1.0),
                                         testing::log_uniform(rng, 1e6, 1e8), testing::uniform(rng, 0.01, 0.1));
    // Differentiate the linear ODE once: rho R0^2 R''' = 2 mu R'' - a R0^2 R', at t = 0.
    const double R0 = s.R0();
    const double Rddot0 = -s.a() * R0 / s.rho();
    const double third = 2.0 * s.mu() * Rddot0 / (s.rho() * R0 * R0);
    EXPECT_NEAR(cubic_coefficient(s), third / 6.0, 1e-10 * std::abs(third / 6.0) + 1e-300);
  }
}

TEST(TaylorConsistency, DifferenceOverCubeTendsToA3) {
  // The quartic term is about a3 * (a R0^2 / (8 mu)) t^4, so the plain limit is only
  // visible in double precision when 8 mu / (a R0^2) is not tiny.
  for (const auto& s : {scenario(1.0, 1.0, 1e6, 0.01), scenario(2.0, 5.0, 5e6, 0.02), scenario(0.8, 0.5, 2e5, 0.05)}) {
    const ClosedFormSolution sol(linearize(s));
    const double a3 = cubic_coefficient(s);
    const double tc = *t_c_analytic(s);
    std::vector<double> errors;
    for (double frac : {1e-2, 3e-3, 1e-3}) {
      const double t = frac * tc;
      const double ratio = (sol.value(t) - taylor2_R(s, t)) / (t * t * t);
      errors.push_back(std::abs(ratio - a3));
    }
    EXPECT_LT(errors.back(), errors.front());
    EXPECT_LE(errors.back(), 0.01 * std::abs(a3));
  }
}

TEST(TaylorConsistency, ReferenceLimitByRichardsonStep) {
  // For the reference oil the t^4 term swamps a3 t^3 until t ~ 1e-7 s, below
  // what the difference resolves. Removing the linear-in-t part of the ratio
  // exposes the limit at moderate t.
  const ValidatedScenario s = reference();
  const ClosedFormSolution sol(linearize(s));
  const double a3 = cubic_coefficient(s);
  auto ratio = [&](double t) { return (sol.value(t) - taylor2_R(s, t)) / (t * t * t); };
  // Without the step the ratio is off by more than 100% at these t.
  EXPECT_GT(std::abs(ratio(1e-5) - a3), std::abs(a3));
  for (double t : {4e-5, 2e-5, 1e-5}) {
    EXPECT_LE(std::abs(2.0 * ratio(t / 2.0) - ratio(t) - a3), 0.01 * std::abs(a3)) << "t=" << t;
  }
}

TEST(ViscosityIrrelevance, SecondOrderEstimates) {
  for (double mu : {0.0, 0.0287, 0.5, 5.0}) {
    const ValidatedScenario s = scenario(8.2, mu, 1e7, 0.05);
    EXPECT_EQ(*t_c_analytic(s), *t_c_analytic(reference()));
    EXPECT_EQ(taylor2_R(s, 7e-4), taylor2_R(reference(), 7e-4));
  }
}

TEST(CrossModel, AnalyticAgreesWithNumericalToMilliseconds) {
  const ValidatedScenario s = reference();
  EXPECT_LE(std::abs(*t_c_analytic(s) - *integrate(s).t_c), 2e-4);
}

TEST(AnalyticSolution, Bundle) {
  const AnalyticSolution sol = analytic_solution(reference());
  EXPECT_NEAR(sol.taylor2_t2, -1e7 * 0.05 / (2.0 * 8.2), 1e-9);
  EXPECT_EQ(sol.a3, cubic_coefficient(reference()));
  EXPECT_EQ(sol.t_c, t_c_analytic(reference()));
  ASSERT_TRUE(sol.closed_form_zero);
  EXPECT_GT(*sol.closed_form_zero, *sol.t_c);
}

}  // namespace
}  // namespace bubble
