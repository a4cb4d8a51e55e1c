#pragma once

// Dormand-Prince 5(4) embedded pair with its quartic continuous extension,
// and the classical RK4 step. Both are generic over the state dimension and
// the right-hand side callable.

#include <array>
#include <cmath>
#include <cstddef>

namespace bubble::rk {

template <std::size_t N>
using Vec = std::array<double, N>;

// y(t0 + s h) = y0 + h * sum_k q[k] s^(k+1),  s in [0, 1].
template <std::size_t N>
struct DensePolynomial {
  double t0 = 0.0;
  double h = 0.0;
  Vec<N> y0{};
  std::array<Vec<N>, 4> q{};

  Vec<N> value(double t) const noexcept {
    const double s = (t - t0) / h;
    Vec<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = y0[i] + h * s * (q[0][i] + s * (q[1][i] + s * (q[2][i] + s * q[3][i])));
    }
    return y;
  }

  Vec<N> derivative(double t) const noexcept {
    const double s = (t - t0) / h;
    Vec<N> d;
    for (std::size_t i = 0; i < N; ++i) {
      d[i] = q[0][i] + s * (2.0 * q[1][i] + s * (3.0 * q[2][i] + s * 4.0 * q[3][i]));
    }
    return d;
  }

  // Cubic Hermite interpolant through (y0, f0) and (y1, f1) over a step h.
  static DensePolynomial hermite(double t0, double h, const Vec<N>& y0, const Vec<N>& f0, const Vec<N>& y1,
                                 const Vec<N>& f1) noexcept {
    DensePolynomial p;
    p.t0 = t0;
    p.h = h;
    p.y0 = y0;
    for (std::size_t i = 0; i < N; ++i) {
      const double slope = (y1[i] - y0[i]) / h;
      p.q[0][i] = f0[i];
      p.q[1][i] = 3.0 * slope - 2.0 * f0[i] - f1[i];
      p.q[2][i] = f0[i] + f1[i] - 2.0 * slope;
      p.q[3][i] = 0.0;
    }
    return p;
  }
};

template <std::size_t N>
struct EmbeddedStep {
  Vec<N> y{};
  Vec<N> error{};
  Vec<N> f_end{};  // rhs at the new point (first stage of the next step)
  DensePolynomial<N> dense;
};

namespace dp45 {

inline constexpr std::array<double, 6> c{0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0};

inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;

inline constexpr std::array<double, 7> b{35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0,
                                         -2187.0 / 6784.0, 11.0 / 84.0, 0.0};
// Fifth-order minus embedded fourth-order weights.
inline constexpr std::array<double, 7> e{-71.0 / 57600.0, 0.0,           71.0 / 16695.0, -71.0 / 1920.0,
                                         17253.0 / 339200.0, -22.0 / 525.0, 1.0 / 40.0};

// Continuous extension: row = stage, column = power of s.
inline constexpr std::array<std::array<double, 4>, 7> p{{
    {1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0, -12715105075.0 / 11282082432.0},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0,
     87487479700.0 / 32700410799.0},
    {0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0, -10690763975.0 / 1880347072.0},
    {0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0,
     701980252875.0 / 199316789632.0},
    {0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0, -1453857185.0 / 822651844.0},
    {0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0},
}};

}  // namespace dp45

/// One Dormand-Prince step from (t, y) with first stage f0 = rhs(t, y).
/// Exceptions thrown by rhs propagate; the caller treats them as a rejection.
template <std::size_t N, class Rhs>
EmbeddedStep<N> dormand_prince_step(Rhs&& rhs, double t, const Vec<N>& y, const Vec<N>& f0, double h) {
  using namespace dp45;
  std::array<Vec<N>, 7> k;
  k[0] = f0;
  Vec<N> tmp;

  auto stage = [&](auto&& combine) {
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * combine(i);
    return tmp;
  };

  k[1] = rhs(t + c[1] * h, stage([&](std::size_t i) { return a21 * k[0][i]; }));
  k[2] = rhs(t + c[2] * h, stage([&](std::size_t i) { return a31 * k[0][i] + a32 * k[1][i]; }));
  k[3] = rhs(t + c[3] * h,
             stage([&](std::size_t i) { return a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]; }));
  k[4] = rhs(t + c[4] * h, stage([&](std::size_t i) {
               return a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i];
             }));
  k[5] = rhs(t + h, stage([&](std::size_t i) {
               return a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] + a65 * k[4][i];
             }));

  EmbeddedStep<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    double acc = 0.0;
    for (std::size_t s = 0; s < 6; ++s) acc += b[s] * k[s][i];
    out.y[i] = y[i] + h * acc;
  }
  k[6] = rhs(t + h, out.y);
  out.f_end = k[6];

  for (std::size_t i = 0; i < N; ++i) {
    double acc = 0.0;
    for (std::size_t s = 0; s < 7; ++s) acc += e[s] * k[s][i];
    out.error[i] = h * acc;
  }

  out.dense.t0 = t;
  out.dense.h = h;
  out.dense.y0 = y;
  for (std::size_t power = 0; power < 4; ++power) {
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (std::size_t s = 0; s < 7; ++s) acc += k[s][i] * p[s][power];
      out.dense.q[power][i] = acc;
    }
  }
  return out;
}

template <std::size_t N, class Rhs>
Vec<N> rk4_step(Rhs&& rhs, double t, const Vec<N>& y, double h) {
  auto shifted = [&](const Vec<N>& k, double scale) {
    Vec<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + scale * k[i];
    return out;
  };
  const Vec<N> k1 = rhs(t, y);
  const Vec<N> k2 = rhs(t + 0.5 * h, shifted(k1, 0.5 * h));
  const Vec<N> k3 = rhs(t + 0.5 * h, shifted(k2, 0.5 * h));
  const Vec<N> k4 = rhs(t + h, shifted(k3, h));
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace bubble::rk
