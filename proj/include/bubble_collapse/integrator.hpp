#pragma once

// Adaptive integration of the radius equation up to the collapse event, plus
// a fixed-step RK4 integrator used only to cross-check it.
//
// The equation is singular at R = 0, so neither integrator tries to reach it.
// Both stop where R = collapse_epsilon * R0 and extrapolate R(t) to zero with
// a quadratic through three samples just before the event.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "collapse_ode.hpp"
#include "dormand_prince.hpp"
#include "scenario.hpp"

namespace bubble {

enum class Termination {
  collapsed,
  max_time,
  escaped,         // R grew past escape_factor * R0
  singularity,     // steps kept hitting the R -> 0 singularity before the event fired
  step_underflow,  // error control could not be satisfied
};

constexpr std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::collapsed: return "collapsed";
    case Termination::max_time: return "max_time";
    case Termination::escaped: return "escaped";
    case Termination::singularity: return "singularity";
    case Termination::step_underflow: return "step_underflow";
  }
  return "unknown";
}

// No collapse was reached, but the run itself was sound.
constexpr bool is_no_collapse(Termination t) noexcept {
  return t == Termination::max_time || t == Termination::escaped;
}

using State2 = rk::Vec<2>;
using Interval = rk::DensePolynomial<2>;

class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(BubbleState start) { states_.push_back(start); }

  const std::vector<BubbleState>& states() const noexcept { return states_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  double t_begin() const noexcept { return states_.front().t; }
  double t_end() const noexcept { return states_.back().t; }
  Termination termination() const noexcept { return termination_; }

  bool covers(double t) const noexcept { return t >= t_begin() && t <= t_end(); }

  // Dense evaluation; throws std::out_of_range outside [t_begin, t_end].
  BubbleState at(double t) const {
    const Interval& iv = interval_for(t);
    const State2 y = iv.value(t);
    return {t, y[0], y[1]};
  }

  // Time derivative of the interpolant: (R', R'').
  State2 rate(double t) const { return interval_for(t).derivative(t); }

  void append(const Interval& iv, BubbleState end) {
    intervals_.push_back(iv);
    states_.push_back(end);
  }
  void set_termination(Termination t) noexcept { termination_ = t; }

 private:
  const Interval& interval_for(double t) const {
    if (intervals_.empty()) throw std::out_of_range("trajectory has no intervals");
    if (!covers(t)) throw std::out_of_range("time outside trajectory coverage");
    // First node strictly greater than t; the interval ending there holds t.
    auto it = std::upper_bound(states_.begin(), states_.end(), t,
                               [](double value, const BubbleState& s) { return value < s.t; });
    std::size_t idx = static_cast<std::size_t>(it - states_.begin());
    idx = std::clamp<std::size_t>(idx, 1, intervals_.size());
    return intervals_[idx - 1];
  }

  std::vector<BubbleState> states_;
  std::vector<Interval> intervals_;
  Termination termination_ = Termination::max_time;
};

// R(t_event + tau) ~ c0 + c1 tau + c2 tau^2 for tau in [0, t_c - t_event].
struct CollapseTail {
  double t_event = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double radius(double t) const noexcept {
    const double tau = t - t_event;
    return c0 + tau * (c1 + tau * c2);
  }
  double rate(double t) const noexcept { return c1 + 2.0 * c2 * (t - t_event); }
};

struct EventQuality {
  double t_event = 0.0;           // s, where R = collapse_epsilon * R0
  double R_event = 0.0;           // cm
  double Rdot_event = 0.0;        // cm/s
  double localization_width = 0.0;  // s, final root bracket
  double extrapolation_span = 0.0;   // s, t_c - t_event
  double linear_estimate_gap = 0.0;  // s, |t_c - (t_event + R_event/|Rdot_event|)|
  bool quadratic_root = true;        // false if the linear fallback was used
};

struct IntegrationStats {
  long accepted_steps = 0;
  long rejected_steps = 0;
  long rhs_evaluations = 0;
};

struct CollapseResult {
  std::optional<double> t_c;
  Trajectory trajectory;
  std::optional<CollapseTail> tail;
  EventQuality event_quality;
  IntegrationStats stats;

  Termination termination() const noexcept { return trajectory.termination(); }
  bool collapsed() const noexcept { return t_c.has_value(); }
};

namespace detail {

struct RadiusSystem {
  OdeParams params;
  double floor;
  long* evaluations;

  State2 operator()(double /*t*/, const State2& y) const {
    ++*evaluations;
    const double acc = acceleration(y[0], y[1], params, floor);
    if (!std::isfinite(y[1]) || !std::isfinite(acc)) throw SingularityError(y[0]);
    return {y[1], acc};
  }
};

/// Fits the quadratic through R at t_e - 2 delta, t_e - delta, t_e and returns
/// its first root after t_e. delta is a quarter of the linear time-to-go.
template <class RadiusAt>
std::pair<CollapseTail, EventQuality> extrapolate_collapse(RadiusAt&& radius_at, double t_e, double R_e,
                                                           double Rdot_e) {
  EventQuality q;
  q.t_event = t_e;
  q.R_event = R_e;
  q.Rdot_event = Rdot_e;
  const double linear_to_go = R_e / std::max(std::abs(Rdot_e), std::numeric_limits<double>::min());
  const double delta = std::min(0.25 * linear_to_go, 0.25 * t_e);

  const double R1 = radius_at(t_e - delta);
  const double R2 = radius_at(t_e - 2.0 * delta);
  CollapseTail tail;
  tail.t_event = t_e;
  tail.c0 = R_e;
  tail.c1 = (3.0 * R_e - 4.0 * R1 + R2) / (2.0 * delta);
  tail.c2 = (R_e - 2.0 * R1 + R2) / (2.0 * delta * delta);

  double tau = linear_to_go;
  const double disc = tail.c1 * tail.c1 - 4.0 * tail.c2 * tail.c0;
  if (tail.c1 < 0.0 && disc >= 0.0) {
    tau = 2.0 * tail.c0 / (-tail.c1 + std::sqrt(disc));
  } else {
    q.quadratic_root = false;
    tail.c1 = -R_e / linear_to_go;
    tail.c2 = 0.0;
  }
  q.extrapolation_span = tau;
  q.linear_estimate_gap = std::abs(tau - linear_to_go);
  return {tail, q};
}

inline double error_norm(const State2& err, const State2& y0, const State2& y1, const IntegratorSettings& s) {
  const double atol[2] = {s.abs_tol_R, s.abs_tol_Rdot};
  double sum = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const double scale = atol[i] + s.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / scale;
    sum += r * r;
  }
  return std::sqrt(sum / 2.0);
}

inline double min_step(double t) noexcept {
  return 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1e-300);
}

}  // namespace detail

/// Adaptive Dormand-Prince integration from R(0) = R0, R'(0) = 0 until the
/// collapse event, max_time, or escape. Never throws for a validated scenario;
/// the outcome is carried by the result's termination reason.
inline CollapseResult integrate(const ValidatedScenario& scenario, const IntegratorSettings& settings) {
  validate_settings(settings);
  CollapseResult result;
  const double R0 = scenario.R0();
  const double target = settings.collapse_epsilon * R0;
  const double escape = settings.escape_factor * R0;
  const detail::RadiusSystem rhs{ode_params(scenario), settings.singularity_floor, &result.stats.rhs_evaluations};

  BubbleState start = initial_state(scenario.geometry());
  result.trajectory = Trajectory(start);
  double t = start.t;
  State2 y{start.R, start.Rdot};
  State2 f = rhs(t, y);

  // Initial step from the curvature scale of R at t = 0.
  const double curvature = std::abs(f[1]) / R0;
  double h = curvature > 0.0 ? 0.01 / std::sqrt(curvature) : settings.max_step;
  h = std::min(h, settings.max_step);

  constexpr double safety = 0.9;
  bool last_rejection_singular = false;

  while (true) {
    if (t >= settings.max_time) {
      result.trajectory.set_termination(Termination::max_time);
      return result;
    }
    h = std::min(h, settings.max_time - t);
    if (h < detail::min_step(t)) {
      result.trajectory.set_termination(last_rejection_singular ? Termination::singularity
                                                                : Termination::step_underflow);
      return result;
    }

    rk::EmbeddedStep<2> step;
    try {
      step = rk::dormand_prince_step<2>(rhs, t, y, f, h);
    } catch (const SingularityError&) {
      ++result.stats.rejected_steps;
      last_rejection_singular = true;
      h *= 0.25;
      continue;
    }

    const double err = detail::error_norm(step.error, y, step.y, settings);
    if (!(err <= 1.0)) {
      ++result.stats.rejected_steps;
      last_rejection_singular = false;
      h *= std::isfinite(err) ? std::max(0.2, safety * std::pow(err, -0.2)) : 0.2;
      continue;
    }
    ++result.stats.accepted_steps;
    last_rejection_singular = false;

    if (step.y[0] <= target) {
      // Bisect the dense interpolant for R = target inside this step.
      double lo = t, hi = t + h;
      int iterations = 0;
      while (hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        (step.dense.value(mid)[0] > target ? lo : hi) = mid;
        ++iterations;
      }
      const double t_e = lo;
      const State2 y_e = step.dense.value(t_e);
      result.trajectory.append(step.dense, {t_e, y_e[0], y_e[1]});
      result.trajectory.set_termination(Termination::collapsed);

      const Trajectory& traj = result.trajectory;
      auto radius_at = [&traj](double ts) { return traj.at(ts).R; };
      auto [tail, quality] = detail::extrapolate_collapse(radius_at, t_e, y_e[0], y_e[1]);
      quality.localization_width = hi - lo;
      result.tail = tail;
      result.event_quality = quality;
      result.t_c = t_e + quality.extrapolation_span;
      return result;
    }

    t += h;
    y = step.y;
    f = step.f_end;
    result.trajectory.append(step.dense, {t, y[0], y[1]});
    if (y[0] > escape) {
      result.trajectory.set_termination(Termination::escaped);
      return result;
    }

    const double growth = err > 0.0 ? safety * std::pow(err, -0.2) : 5.0;
    h = std::min(h * std::clamp(growth, 0.2, 5.0), settings.max_step);
  }
}

inline CollapseResult integrate(const ValidatedScenario& scenario) {
  return integrate(scenario, scenario.integrator());
}

/// Classical RK4 with a fixed step. Near the event the step is halved
/// repeatedly until the crossing of R = collapse_epsilon * R0 is pinned down.
/// Only tolerances-free settings are used: collapse_epsilon, max_time,
/// singularity_floor and escape_factor.
inline CollapseResult integrate_fixed_oracle(const ValidatedScenario& scenario, double step,
                                             const IntegratorSettings& settings) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("fixed oracle step must be positive and finite");
  }
  validate_settings(settings);
  CollapseResult result;
  const double R0 = scenario.R0();
  const double target = settings.collapse_epsilon * R0;
  const double escape = settings.escape_factor * R0;
  const detail::RadiusSystem rhs{ode_params(scenario), settings.singularity_floor, &result.stats.rhs_evaluations};

  BubbleState start = initial_state(scenario.geometry());
  result.trajectory = Trajectory(start);
  double t = start.t;
  State2 y{start.R, start.Rdot};
  State2 f = rhs(t, y);

  const double finest = step * 0x1p-40;
  double h_cur = step;
  bool failed_last = false;

  while (true) {
    if (t >= settings.max_time) {
      result.trajectory.set_termination(Termination::max_time);
      return result;
    }
    const double h = std::min(h_cur, settings.max_time - t);

    State2 y_new{};
    State2 f_new{};
    bool crossed = false;
    try {
      y_new = rk::rk4_step<2>(rhs, t, y, h);
      if (y_new[0] <= target) {
        crossed = true;
      } else {
        f_new = rhs(t + h, y_new);
      }
    } catch (const SingularityError&) {
      crossed = true;
      failed_last = true;
    }

    if (crossed) {
      ++result.stats.rejected_steps;
      if (h_cur > finest) {
        h_cur *= 0.5;
        continue;
      }
      if (failed_last && y[0] > 2.0 * target) {
        result.trajectory.set_termination(Termination::singularity);
        return result;
      }
      // The crossing lies within one finest step of the current state.
      result.trajectory.set_termination(Termination::collapsed);
      const double t_e = t;
      auto radius_at = [&](double ts) {
        // Integrate back from the event state; moving away from R = 0 is benign.
        constexpr int substeps = 64;
        const double dh = (ts - t_e) / substeps;
        State2 yb = y;
        double tb = t_e;
        for (int i = 0; i < substeps; ++i, tb += dh) yb = rk::rk4_step<2>(rhs, tb, yb, dh);
        return yb[0];
      };
      auto [tail, quality] = detail::extrapolate_collapse(radius_at, t_e, y[0], y[1]);
      quality.localization_width = h_cur;
      result.tail = tail;
      result.event_quality = quality;
      result.t_c = t_e + quality.extrapolation_span;
      return result;
    }
    failed_last = false;

    ++result.stats.accepted_steps;
    result.trajectory.append(Interval::hermite(t, h, y, f, y_new, f_new), {t + h, y_new[0], y_new[1]});
    t += h;
    y = y_new;
    f = f_new;
    if (y[0] > escape) {
      result.trajectory.set_termination(Termination::escaped);
      return result;
    }
  }
}

inline CollapseResult integrate_fixed_oracle(const ValidatedScenario& scenario, double step) {
  return integrate_fixed_oracle(scenario, step, scenario.integrator());
}

// Dense samples of the integrated trajectory; throws std::out_of_range for
// times it does not cover.
inline std::vector<BubbleState> sample_trajectory(const CollapseResult& result, const std::vector<double>& times) {
  std::vector<BubbleState> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(result.trajectory.at(t));
  return out;
}

/// R and R' over [0, t_c]: the trajectory up to the event, the extrapolated
/// tail after it. R is clamped at zero.
inline BubbleState collapse_profile(const CollapseResult& result, double t) {
  if (result.tail && t > result.trajectory.t_end()) {
    if (t > *result.t_c * (1.0 + 1e-12)) throw std::out_of_range("time beyond collapse");
    return {t, std::max(0.0, result.tail->radius(t)), result.tail->rate(t)};
  }
  return result.trajectory.at(t);
}

}  // namespace bubble
