#pragma once

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince coefficients) with the
// standard quartic dense-output interpolant.  The right-hand side may veto a
// stage evaluation (state outside its admissible region), which makes the
// step shrink instead of evaluating the model where it is undefined; the
// per-step callback sees the dense interpolant and can stop integration at
// an event it located inside the step.

#include <array>
#include <cmath>
#include <cstddef>

#include "revolve/profile.hpp"

namespace revolve {

template <std::size_t N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<double, N> c1{}, c2{}, c3{}, c4{}, c5{};

  // State at t0 + s*h for s in [0, 1].
  std::array<double, N> eval(double s) const {
    std::array<double, N> y;
    double s1 = 1.0 - s;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = c1[i] + s * (c2[i] + s1 * (c3[i] + s * (c4[i] + s1 * c5[i])));
    }
    return y;
  }
  double eval_component(double s, int i) const {
    double s1 = 1.0 - s;
    return c1[i] + s * (c2[i] + s1 * (c3[i] + s * (c4[i] + s1 * c5[i])));
  }
};

struct OdeOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double h_initial = 1e-3;
  double h_max = 1.0;
  std::size_t max_steps = 4000000;
};

namespace detail {
// Dormand-Prince 5(4) tableau.
inline constexpr double kDpC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kDpA2[] = {1.0 / 5};
inline constexpr double kDpA3[] = {3.0 / 40, 9.0 / 40};
inline constexpr double kDpA4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
inline constexpr double kDpA5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
inline constexpr double kDpA6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656};
inline constexpr double kDpB[] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84};
// Difference between the 5th- and embedded 4th-order weights.
inline constexpr double kDpE[] = {71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
// Dense-output weights.
inline constexpr double kDpD[] = {-12715105075.0 / 11282082432, 0.0, 87487479700.0 / 32700410799, -10690763975.0 / 1880347072, 701980252875.0 / 199316789632, -1453857185.0 / 822651844, 69997945.0 / 29380423};
}  // namespace detail

// rhs(t, y, dydt) -> bool: false vetoes the stage (step is retried smaller).
// on_step(dense, y, t) -> bool: false stops the integration after this step.
// Returns the reached time.
template <std::size_t N, class RHS, class StepCb>
double integrate_dopri5(RHS&& rhs, double t0, std::array<double, N> y,
                        double t_end, const OdeOptions& opt, StepCb&& on_step) {
  using detail::kDpA2;
  using detail::kDpA3;
  using detail::kDpA4;
  using detail::kDpA5;
  using detail::kDpA6;
  using detail::kDpB;
  using detail::kDpC;
  using detail::kDpD;
  using detail::kDpE;

  double t = t0;
  double h = std::min(opt.h_initial, std::max(1e-12, t_end - t0));
  std::array<double, N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;

  if (!rhs(t, y, k1))
    throw NumericError("integrate_dopri5: initial state inadmissible");

  std::size_t steps = 0;
  while (t < t_end) {
    if (++steps > opt.max_steps)
      throw NumericError("integrate_dopri5: step budget exhausted");
    h = std::min(h, t_end - t);
    h = std::min(h, opt.h_max);

    bool ok = true;
    auto stage = [&](const double* a, int na, std::array<double, N>& out,
                     double c) -> bool {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        const std::array<double, N>* ks[] = {&k1, &k2, &k3, &k4, &k5};
        for (int j = 0; j < na; ++j) acc += a[j] * (*ks[j])[i];
        ytmp[i] = y[i] + h * acc;
      }
      return rhs(t + c * h, ytmp, out);
    };

    ok = stage(kDpA2, 1, k2, kDpC[1]) && stage(kDpA3, 2, k3, kDpC[2]) &&
         stage(kDpA4, 3, k4, kDpC[3]) && stage(kDpA5, 4, k5, kDpC[4]) &&
         stage(kDpA6, 5, k6, kDpC[5]);
    if (ok) {
      for (std::size_t i = 0; i < N; ++i) {
        ynew[i] = y[i] + h * (kDpB[0] * k1[i] + kDpB[2] * k3[i] +
                              kDpB[3] * k4[i] + kDpB[4] * k5[i] +
                              kDpB[5] * k6[i]);
      }
      ok = rhs(t + h, ynew, k7);
    }
    if (!ok) {
      h *= 0.5;
      if (h < 1e-14 * std::max(1.0, std::abs(t)))
        throw NumericError("integrate_dopri5: step collapsed at an inadmissible state");
      continue;
    }

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double e = h * (kDpE[0] * k1[i] + kDpE[2] * k3[i] + kDpE[3] * k4[i] +
                      kDpE[4] * k5[i] + kDpE[5] * k6[i] + kDpE[6] * k7[i]);
      double sc = opt.abs_tol +
                  opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    DenseStep<N> dense;
    dense.t0 = t;
    dense.h = h;
    for (std::size_t i = 0; i < N; ++i) {
      double ydiff = ynew[i] - y[i];
      double bspl = h * k1[i] - ydiff;
      dense.c1[i] = y[i];
      dense.c2[i] = ydiff;
      dense.c3[i] = bspl;
      dense.c4[i] = ydiff - h * k7[i] - bspl;
      dense.c5[i] = h * (kDpD[0] * k1[i] + kDpD[2] * k3[i] + kDpD[3] * k4[i] +
                         kDpD[4] * k5[i] + kDpD[5] * k6[i] + kDpD[6] * k7[i]);
    }

    t += h;
    y = ynew;
    k1 = k7;  // first-same-as-last

    if (!on_step(dense, y, t)) return t;

    double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, grow));
  }
  return t;
}

}  // namespace revolve
