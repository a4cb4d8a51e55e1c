// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "bubble_collapse/bubble_collapse.hpp"
#include "oracles.hpp"

namespace {

using namespace bubble;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

ValidatedScenario reference() { return validate(reference_config()); }

Outcome numerical_collapse_time() {
  const ValidatedScenario s = reference();
  const auto start = std::chrono::steady_clock::now();
  const CollapseResult r = integrate(s);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!r.t_c) return {false, "no collapse"};
  const bool ok = *r.t_c >= 0.00138 && *r.t_c <= 0.00143 && seconds < 1.0;
  return {ok, fmt("t_c = %.10e s, runtime %.3e s", *r.t_c, seconds)};
}

Outcome analytic_collapse_time() {
  const auto tc = t_c_analytic(reference());
  if (!tc) return {false, "no analytic collapse"};
  const bool ok = std::abs(*tc - 0.00128) <= 1e-6 && std::abs(*tc - std::sqrt(2.0 * 8.2 / 1e7)) <= 1e-15;
  return {ok, fmt("t_c_analytic = %.10e s, |t - 0.00128| = %.3e s", *tc, std::abs(*tc - 0.00128))};
}

Outcome cross_model_agreement() {
  const ValidatedScenario s = reference();
  const auto num = integrate(s).t_c;
  const auto ana = t_c_analytic(s);
  if (!num || !ana) return {false, "missing estimate"};
  const double gap = std::abs(*num - *ana);
  return {gap <= 2e-4, fmt("|t_c_numerical - t_c_analytic| = %.6e s", gap)};
}

Outcome rotation_angle_check() {
  const auto tc = integrate(reference()).t_c;
  if (!tc) return {false, "no collapse"};
  const double angle = rotation_angle(2000.0, *tc);
  return {angle >= 16.5 && angle <= 17.2, fmt("angle = %.6f deg", angle)};
}

Outcome cubic_term_bound() {
  const ValidatedScenario s = reference();
  const double term = std::abs(cubic_coefficient(s) * std::pow(*t_c_analytic(s), 3));
  return {term < 1e-4, fmt("|a3 t_c^3| = %.6e cm (a3 = %.6e cm/s^3)", term, cubic_coefficient(s))};
}

Outcome inviscid_oracle() {
  ScenarioConfig c = reference_config();
  c.fluid.mu = 0.0;
  const ValidatedScenario s = validate(c);
  const CollapseResult r = integrate(s);
  if (!r.t_c) return {false, "no collapse"};
  const testing::Harmonic h{s.R0(), std::sqrt(s.a() / s.rho())};
  const double t_rel = std::abs(*r.t_c - h.quarter_period()) / h.quarter_period();
  std::vector<double> times;
  for (int k = 0; k < 100; ++k) times.push_back(r.trajectory.t_end() * k / 99.0);
  double worst = 0.0;
  for (const BubbleState& b : sample_trajectory(r, times)) {
    worst = std::max(worst, std::abs(b.R - h.radius(b.t)) / h.radius(b.t));
  }
  return {t_rel <= 1e-6 && worst <= 1e-8, fmt("t_c rel err %.3e, worst trajectory rel err %.3e", t_rel, worst)};
}

Outcome oracle_equivalence() {
  std::vector<ValidatedScenario> cases = {reference()};
  std::mt19937_64 rng(20060601);
  for (int i = 0; i < 20; ++i) {
    ScenarioConfig c = reference_config();
    c.a_override = testing::log_uniform(rng, 1e6, 1e8);
    c.fluid.rho = testing::uniform(rng, 0.5, 10.0);
    c.fluid.mu = testing::uniform(rng, 0.0, 1.0);
    c.geometry.R0 = testing::uniform(rng, 0.01, 0.1);
    cases.push_back(validate(c));
  }
  double worst = 0.0;
  for (const auto& s : cases) {
    const auto adaptive = integrate(s).t_c;
    const auto oracle = integrate_fixed_oracle(s, 1e-7).t_c;
    if (!adaptive || !oracle) return {false, "a scenario failed to collapse"};
    worst = std::max(worst, std::abs(*adaptive - *oracle));
  }
  return {worst <= 1e-6, fmt("%.0f scenarios, worst |dt_c| = %.3e s", static_cast<double>(cases.size()), worst)};
}

Outcome field_verification() {
  // Divergence of the radial velocity field on an (r, t) grid along the reference trajectory.
  const ValidatedScenario s = reference();
  const CollapseResult r = integrate(s);
  double worst_div = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double t = r.trajectory.t_end() * i / 20.0;
    const BubbleState b = r.trajectory.at(t);
    const RadialSample sample{b.R, b.Rdot, r.trajectory.rate(t)[1]};
    for (int k = 0; k <= 20; ++k) {
      const double rr = b.R * (1.0 + 9.0 * k / 20.0);
      const double v = velocity({rr, t}, sample);
      if (v == 0.0) continue;
      const double dv = testing::central_difference([&](double x) { return velocity({x, t}, sample); }, rr, 1e-6 * rr);
      worst_div = std::max(worst_div, std::abs(dv + 2.0 / rr * v) / (std::abs(v) / rr));
    }
  }

  double worst_ns = 0.0;
  for (const BubbleState& b : r.trajectory.states()) {
    const double Rddot = r.trajectory.rate(b.t)[1];
    const double res = ns_residual({b.R, b.t}, {b.R, b.Rdot, Rddot}, s.fluid(), s.a());
    worst_ns = std::max(worst_ns, std::abs(res) / (s.rho() * std::abs(Rddot)));
  }

  const ClosedFormSolution closed(linearize(s));
  const double horizon = 2.0 * *t_c_analytic(s);
  double worst_lin = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = horizon * k / 1000.0;
    worst_lin = std::max(worst_lin, std::abs(closed.ode_residual(t)) / closed.ode_scale(t));
  }
  const bool ok = worst_div <= 1e-8 && worst_ns <= 1e-6 && worst_lin <= 1e-9;
  return {ok, fmt("divergence %.3e, wall NS %.3e, linear ODE %.3e (relative)", worst_div, worst_ns, worst_lin)};
}

Outcome gas_model_honesty(const std::string& config_dir) {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "bubble_acceptance_gas_law";
  fs::remove_all(out);
  cli::RunOptions opt;
  opt.config_path = config_dir + "/gas_law.ini";
  opt.out_dir = out.string();
  std::ostringstream o, e;
  const int code = cli::run(opt, o, e);
  std::ifstream in(out / "report.json");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception&) {
    return {false, "report.json unreadable"};
  }
  fs::remove_all(out);
  const double a = j.at("a").get<double>();
  bool cites = false;
  for (const auto& note : j.at("notes")) {
    const std::string n = note.get<std::string>();
    cites = cites || (n.find("-5.3398e+07") != std::string::npos && n.find("no collapse") != std::string::npos);
  }
  const bool ok = a < 0.0 && std::abs(a + 5.3e7) < 0.05e7 && code == cli::exit_no_collapse &&
                  !j.at("collapsed").get<bool>() && cites;
  return {ok, fmt("a = %.6e dyne/cm^4, exit code %.0f, note cites value: %.0f", a, code, cites ? 1.0 : 0.0)};
}

Outcome taylor_overlap() {
  const ValidatedScenario s = reference();
  const CollapseResult r = integrate(s);
  std::ostringstream csv;
  write_trajectory_csv(csv, s, r);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  double worst = 0.0;
  double first_over = -1.0;
  while (std::getline(in, line)) {
    double t, R, Rdot, closed, taylor;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &R, &Rdot, &closed, &taylor) != 5) {
      return {false, "bad trajectory row"};
    }
    if (t > 0.9 * *r.t_c) break;
    worst = std::max(worst, std::abs(R - taylor));
    if (first_over < 0.0 && std::abs(R - taylor) > 2e-3) first_over = t / *r.t_c;
  }
  std::string detail = fmt("max |R_numerical - R_taylor2| on [0, 0.9 t_c] = %.6e cm", worst);
  if (first_over >= 0.0) detail += fmt(" (gap passes 2e-3 cm at %.3f t_c)", first_over);
  return {worst <= 2e-3, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string config_dir = argc > 1 ? argv[1] : BUBBLE_CONFIG_DIR;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"numerical collapse time", numerical_collapse_time},
      {"analytic collapse time", analytic_collapse_time},
      {"cross-model agreement", cross_model_agreement},
      {"rotation angle", rotation_angle_check},
      {"cubic-term bound", cubic_term_bound},
      {"inviscid oracle", inviscid_oracle},
      {"oracle equivalence", oracle_equivalence},
      {"field verification", field_verification},
      {"gas-model honesty", [&] { return gas_model_honesty(config_dir); }},
      {"numerical/taylor overlap", taylor_overlap},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
