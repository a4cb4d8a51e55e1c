#pragma once

// Collapse report: one object, rendered as human text, JSON, and CSV tables.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "analysis.hpp"
#include "integrator.hpp"
#include "linear_model.hpp"
#include "scenario.hpp"

namespace bubble {

struct IntegratorDiagnostics {
  long accepted_steps = 0;
  long rejected_steps = 0;
  long rhs_evaluations = 0;
  std::optional<double> t_event;
  std::optional<double> localization_width;
  std::optional<double> extrapolation_span;
  std::optional<double> linear_estimate_gap;
  std::optional<bool> quadratic_root;

  bool operator==(const IntegratorDiagnostics&) const = default;
};

struct CollapseReport {
  double a = 0.0;
  std::string a_provenance;
  double a_computed = 0.0;
  GasInventory inventory;

  std::optional<double> t_c_numerical;
  std::optional<double> t_c_analytic;
  std::optional<double> t_c_difference;
  std::optional<double> t_c_linear_closed_form;
  double cubic_coefficient = 0.0;
  std::optional<double> cubic_term_at_t_c;  // |a3 t_c_analytic^3|, cm

  double linear_discriminant = 0.0;
  double quoted_discriminant = 0.0;

  double rpm = 0.0;
  std::optional<double> rotation_angle_deg;
  double allowable_angle_deg = 0.0;
  std::optional<double> max_safe_rpm;

  std::string termination;
  IntegratorDiagnostics diagnostics;
  std::vector<std::string> notes;

  bool collapsed() const noexcept { return t_c_numerical.has_value(); }
  bool operator==(const CollapseReport&) const = default;
};

namespace detail {

inline std::string sci(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

}  // namespace detail

inline CollapseReport build_report(const ValidatedScenario& s, const CollapseResult& result) {
  CollapseReport rep;
  rep.a = s.a();
  rep.a_provenance = std::string(to_string(s.coefficient().provenance));
  rep.a_computed = s.computed_coefficient().a;
  rep.inventory = s.inventory();

  const AnalyticSolution analytic = analytic_solution(s);
  rep.t_c_numerical = result.t_c;
  rep.t_c_analytic = analytic.t_c;
  if (rep.t_c_numerical && rep.t_c_analytic) rep.t_c_difference = std::abs(*rep.t_c_numerical - *rep.t_c_analytic);
  rep.t_c_linear_closed_form = analytic.closed_form_zero;
  rep.cubic_coefficient = analytic.a3;
  if (analytic.t_c) rep.cubic_term_at_t_c = std::abs(analytic.a3 * std::pow(*analytic.t_c, 3));
  rep.linear_discriminant = analytic.ode.discriminant;
  rep.quoted_discriminant = analytic.ode.quoted_discriminant;

  rep.rpm = s.pump().rpm;
  rep.allowable_angle_deg = s.pump().allowable_angle_deg;
  if (result.t_c) {
    rep.rotation_angle_deg = rotation_angle(rep.rpm, *result.t_c);
    rep.max_safe_rpm = max_safe_rpm(*result.t_c, rep.allowable_angle_deg);
  }

  rep.termination = std::string(to_string(result.termination()));
  auto& d = rep.diagnostics;
  d.accepted_steps = result.stats.accepted_steps;
  d.rejected_steps = result.stats.rejected_steps;
  d.rhs_evaluations = result.stats.rhs_evaluations;
  if (result.t_c) {
    const EventQuality& q = result.event_quality;
    d.t_event = q.t_event;
    d.localization_width = q.localization_width;
    d.extrapolation_span = q.extrapolation_span;
    d.linear_estimate_gap = q.linear_estimate_gap;
    d.quadratic_root = q.quadratic_root;
  }

  using detail::sci;
  if (s.coefficient().provenance == CoefficientProvenance::overridden) {
    rep.notes.push_back("a pinned by a_override at " + sci(rep.a, 4) + " dyne/cm^4; the gas law gives a = " +
                        sci(rep.a_computed, 4) + " dyne/cm^4 (p_g0 = " + sci(rep.inventory.p_g0, 4) +
                        " dyne/cm^2, p_m = " + sci(s.p_m(), 4) + " dyne/cm^2)");
  }
  if (!(rep.a > 0.0)) {
    rep.notes.push_back("a = " + sci(rep.a, 4) + " dyne/cm^4 is not positive (" + rep.a_provenance +
                        "): gas pressure p_g0 = " + sci(rep.inventory.p_g0, 4) +
                        " dyne/cm^2 against p_m = " + sci(s.p_m(), 4) +
                        " dyne/cm^2, so nothing pushes the bubble inwards; no collapse");
  }
  rep.notes.push_back("quadratic Taylor solution R0 - (a R0/(2 rho)) t^2 uses a negative t^2 coefficient, "
                      "consistent with R''(0) = -a R0/rho and t_c = sqrt(2 rho/a)");
  rep.notes.push_back("linear closed form built from characteristic radicand mu^2 - a rho R0^4 = " +
                      sci(rep.linear_discriminant, 4) + "; the R0^3 variant would give " +
                      sci(rep.quoted_discriminant, 4));
  return rep;
}

// ---- JSON ---------------------------------------------------------------

namespace detail {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> json_opt(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace detail

inline nlohmann::json to_json(const CollapseReport& r) {
  using detail::opt_json;
  const auto& d = r.diagnostics;
  nlohmann::json out = {
      {"a", r.a},
      {"a_provenance", r.a_provenance},
      {"a_computed", r.a_computed},
      {"inventory", {{"V0", r.inventory.V0}, {"M", r.inventory.M}, {"n0", r.inventory.n0}, {"p_g0", r.inventory.p_g0}}},
      {"t_c_numerical", opt_json(r.t_c_numerical)},
      {"t_c_analytic", opt_json(r.t_c_analytic)},
      {"t_c_difference", opt_json(r.t_c_difference)},
      {"t_c_linear_closed_form", opt_json(r.t_c_linear_closed_form)},
      {"cubic_coefficient", r.cubic_coefficient},
      {"cubic_term_at_t_c", opt_json(r.cubic_term_at_t_c)},
      {"linear_discriminant", r.linear_discriminant},
      {"quoted_discriminant", r.quoted_discriminant},
      {"rpm", r.rpm},
      {"rotation_angle_deg", opt_json(r.rotation_angle_deg)},
      {"allowable_angle_deg", r.allowable_angle_deg},
      {"max_safe_rpm", opt_json(r.max_safe_rpm)},
      {"termination", r.termination},
      {"collapsed", r.collapsed()},
      {"diagnostics",
       {{"accepted_steps", d.accepted_steps},
        {"rejected_steps", d.rejected_steps},
        {"rhs_evaluations", d.rhs_evaluations},
        {"t_event", opt_json(d.t_event)},
        {"localization_width", opt_json(d.localization_width)},
        {"extrapolation_span", opt_json(d.extrapolation_span)},
        {"linear_estimate_gap", opt_json(d.linear_estimate_gap)},
        {"quadratic_root", opt_json(d.quadratic_root)}}},
      {"notes", r.notes},
  };
  return out;
}

inline CollapseReport report_from_json(const nlohmann::json& j) {
  using detail::json_opt;
  CollapseReport r;
  r.a = j.at("a").get<double>();
  r.a_provenance = j.at("a_provenance").get<std::string>();
  r.a_computed = j.at("a_computed").get<double>();
  const auto& inv = j.at("inventory");
  r.inventory = {inv.at("V0").get<double>(), inv.at("M").get<double>(), inv.at("n0").get<double>(),
                 inv.at("p_g0").get<double>()};
  r.t_c_numerical = json_opt<double>(j, "t_c_numerical");
  r.t_c_analytic = json_opt<double>(j, "t_c_analytic");
  r.t_c_difference = json_opt<double>(j, "t_c_difference");
  r.t_c_linear_closed_form = json_opt<double>(j, "t_c_linear_closed_form");
  r.cubic_coefficient = j.at("cubic_coefficient").get<double>();
  r.cubic_term_at_t_c = json_opt<double>(j, "cubic_term_at_t_c");
  r.linear_discriminant = j.at("linear_discriminant").get<double>();
  r.quoted_discriminant = j.at("quoted_discriminant").get<double>();
  r.rpm = j.at("rpm").get<double>();
  r.rotation_angle_deg = json_opt<double>(j, "rotation_angle_deg");
  r.allowable_angle_deg = j.at("allowable_angle_deg").get<double>();
  r.max_safe_rpm = json_opt<double>(j, "max_safe_rpm");
  r.termination = j.at("termination").get<std::string>();
  const auto& d = j.at("diagnostics");
  r.diagnostics.accepted_steps = d.at("accepted_steps").get<long>();
  r.diagnostics.rejected_steps = d.at("rejected_steps").get<long>();
  r.diagnostics.rhs_evaluations = d.at("rhs_evaluations").get<long>();
  r.diagnostics.t_event = json_opt<double>(d, "t_event");
  r.diagnostics.localization_width = json_opt<double>(d, "localization_width");
  r.diagnostics.extrapolation_span = json_opt<double>(d, "extrapolation_span");
  r.diagnostics.linear_estimate_gap = json_opt<double>(d, "linear_estimate_gap");
  r.diagnostics.quadratic_root = json_opt<bool>(d, "quadratic_root");
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

// ---- human-readable -----------------------------------------------------

inline void write_text_report(std::ostream& os, const CollapseReport& r) {
  auto num = [](const std::optional<double>& v, int digits = 6) {
    return v ? detail::sci(*v, digits) : std::string("n/a");
  };
  os << "Bubble collapse report\n"
     << "======================\n"
     << "pressure coefficient a   " << detail::sci(r.a) << " dyne/cm^4 (" << r.a_provenance << ")\n"
     << "gas-law a                " << detail::sci(r.a_computed) << " dyne/cm^4\n"
     << "gas moles n0             " << detail::sci(r.inventory.n0) << " mol\n"
     << "gas pressure p_g0        " << detail::sci(r.inventory.p_g0) << " dyne/cm^2\n"
     << "\n"
     << "termination              " << r.termination << "\n"
     << "t_c numerical            " << num(r.t_c_numerical) << " s\n"
     << "t_c analytic             " << num(r.t_c_analytic) << " s\n"
     << "|difference|             " << num(r.t_c_difference) << " s\n"
     << "t_c linear closed form   " << num(r.t_c_linear_closed_form) << " s\n"
     << "cubic coefficient a3     " << detail::sci(r.cubic_coefficient) << " cm/s^3\n"
     << "|a3 t_c^3|               " << num(r.cubic_term_at_t_c) << " cm\n"
     << "\n"
     << "pump speed               " << detail::sci(r.rpm, 4) << " rpm\n"
     << "rotation during collapse " << num(r.rotation_angle_deg, 4) << " deg\n"
     << "allowable angle          " << detail::sci(r.allowable_angle_deg, 4) << " deg\n"
     << "max safe speed           " << num(r.max_safe_rpm, 4) << " rpm\n"
     << "\n"
     << "steps accepted/rejected  " << r.diagnostics.accepted_steps << " / " << r.diagnostics.rejected_steps << "\n"
     << "rhs evaluations          " << r.diagnostics.rhs_evaluations << "\n"
     << "event time               " << num(r.diagnostics.t_event, 9) << " s\n"
     << "extrapolated span        " << num(r.diagnostics.extrapolation_span) << " s\n";
  if (!r.notes.empty()) {
    os << "\nnotes:\n";
    for (const auto& n : r.notes) os << "  - " << n << "\n";
  }
}

// ---- CSV tables ---------------------------------------------------------

namespace detail {

inline std::string csv_num(double v) { return sci(v, 12); }
inline std::string csv_opt(const std::optional<double>& v) { return v ? csv_num(*v) : std::string("NA"); }

}  // namespace detail

/// Uniform samples on [0, t_c] (or over the integrated range when there was
/// no collapse) of the numerical, linear closed-form, and quadratic Taylor
/// radius.
inline void write_trajectory_csv(std::ostream& os, const ValidatedScenario& s, const CollapseResult& result,
                                 int samples = 500) {
  if (samples < 2) throw std::invalid_argument("trajectory needs at least 2 samples");
  const ClosedFormSolution closed(linearize(s));
  const double t_end = result.t_c ? *result.t_c : result.trajectory.t_end();
  os << "t_s,R_numerical_cm,Rdot_cm_per_s,R_closed_form_cm,R_taylor2_cm\n";
  for (int k = 0; k < samples; ++k) {
    const double t = k == samples - 1 ? t_end : t_end * k / (samples - 1);
    const BubbleState b = collapse_profile(result, t);
    os << detail::csv_num(t) << ',' << detail::csv_num(b.R) << ',' << detail::csv_num(b.Rdot) << ','
       << detail::csv_num(closed.value(t)) << ',' << detail::csv_num(taylor2_R(s, t)) << '\n';
  }
}

inline void write_comparison_csv(std::ostream& os, const CollapseReport& r) {
  auto diff = [](const std::optional<double>& x, const std::optional<double>& y) -> std::optional<double> {
    if (x && y) return std::abs(*x - *y);
    return std::nullopt;
  };
  std::optional<double> angle_analytic, rpm_analytic;
  if (r.t_c_analytic) {
    angle_analytic = rotation_angle(r.rpm, *r.t_c_analytic);
    rpm_analytic = max_safe_rpm(*r.t_c_analytic, r.allowable_angle_deg);
  }
  std::optional<double> angle_closed;
  if (r.t_c_linear_closed_form) angle_closed = rotation_angle(r.rpm, *r.t_c_linear_closed_form);

  using detail::csv_opt;
  os << "quantity,numerical,taylor2,linear_closed_form,abs_difference_numerical_taylor2\n";
  os << "t_c_s," << csv_opt(r.t_c_numerical) << ',' << csv_opt(r.t_c_analytic) << ','
     << csv_opt(r.t_c_linear_closed_form) << ',' << csv_opt(r.t_c_difference) << '\n';
  os << "rotation_angle_deg," << csv_opt(r.rotation_angle_deg) << ',' << csv_opt(angle_analytic) << ','
     << csv_opt(angle_closed) << ',' << csv_opt(diff(r.rotation_angle_deg, angle_analytic)) << '\n';
  std::optional<double> rpm_closed;
  if (r.t_c_linear_closed_form) rpm_closed = max_safe_rpm(*r.t_c_linear_closed_form, r.allowable_angle_deg);
  os << "max_safe_rpm," << csv_opt(r.max_safe_rpm) << ',' << csv_opt(rpm_analytic) << ',' << csv_opt(rpm_closed)
     << ',' << csv_opt(diff(r.max_safe_rpm, rpm_analytic)) << '\n';
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << to_string(sweep.parameter) << ",a,t_c_numerical,t_c_analytic,collapsed,a_provenance,termination\n";
  for (const auto& p : sweep.points) {
    os << detail::csv_num(p.value) << ',' << detail::csv_num(p.coefficient.a) << ','
       << detail::csv_opt(p.t_c_numerical) << ',' << detail::csv_opt(p.t_c_analytic) << ','
       << (p.collapsed() ? 1 : 0) << ',' << to_string(p.coefficient.provenance) << ','
       << to_string(p.termination) << '\n';
  }
}

}  // namespace bubble
