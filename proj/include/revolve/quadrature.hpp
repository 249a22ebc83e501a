#pragma once

// Double-exponential quadrature and the Clairaut integrals built on it.
//
// tanh-sinh nodes cluster superexponentially at the interval endpoints, which
// absorbs the inverse-square-root singularity of the angle integrand
// nu / (m sqrt(m^2 - nu^2)) at a turning point without any change of
// variables.  Integrands receive, besides x itself, the distances to both
// endpoints computed in a cancellation-free form, so they can evaluate
// singular factors with full relative accuracy arbitrarily close to the
// endpoint.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "revolve/profile.hpp"

namespace revolve {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;  // magnitude of the last refinement step
  int nodes_used = 0;
  bool converged = false;
};

namespace detail {

// Per-node data of the tanh-sinh map t -> c + R tanh((pi/2) sinh t):
// abscissa, distance to the nearer endpoint, and the weight.
struct DeNode {
  double x;
  double dist_a;
  double dist_b;
  double weight;
  bool usable;
};

inline DeNode tanh_sinh_node(double t, double a, double b) {
  const double half_pi = 1.5707963267948966;
  double R = 0.5 * (b - a);
  double u = half_pi * std::sinh(std::abs(t));
  double e = std::exp(-2.0 * u);
  double q = e / (1.0 + e);  // (1 - tanh u) / 2, no cancellation
  double dnear = 2.0 * R * q;
  DeNode n;
  n.usable = dnear > 0.0;
  n.weight = R * half_pi * std::cosh(t) * 4.0 * q * (1.0 - q);
  if (t >= 0.0) {
    n.x = b - dnear;
    n.dist_b = dnear;
    n.dist_a = (b - a) - dnear;
  } else {
    n.x = a + dnear;
    n.dist_a = dnear;
    n.dist_b = (b - a) - dnear;
  }
  return n;
}

}  // namespace detail

// Integrates f over [a, b].  f is called as f(x, dist_a, dist_b) where
// dist_a = x - a and dist_b = b - x are computed without cancellation, so a
// singular endpoint factor can be evaluated from the distance directly.
// Levels are halved until the refinement step drops below tol or the node
// budget is exhausted.
template <class F>
QuadResult tanh_sinh(F&& f, double a, double b, double tol = 1e-10,
                     int max_nodes = 16384) {
  QuadResult res;
  if (!(a < b)) {
    if (a == b) {
      res.converged = true;
      return res;
    }
    throw std::invalid_argument("tanh_sinh: requires a < b");
  }
  const double t_max = 6.11;  // beyond this the node weight underflows

  auto term = [&](double t) -> double {
    detail::DeNode n = detail::tanh_sinh_node(t, a, b);
    ++res.nodes_used;
    if (!n.usable) return 0.0;
    double v = f(n.x, n.dist_a, n.dist_b);
    if (!std::isfinite(v)) {
      // A singular endpoint limit may round to an infinity at the very last
      // representable node; its weighted contribution is below resolution.
      if (n.dist_a < 1e-14 * (b - a) || n.dist_b < 1e-14 * (b - a)) return 0.0;
      throw NumericError("tanh_sinh: integrand not finite inside interval");
    }
    return n.weight * v;
  };

  double h = 1.0;
  double sum = term(0.0);
  for (int k = 1; k <= static_cast<int>(t_max / h); ++k) {
    sum += term(h * k) + term(-h * k);
  }
  double prev = sum * h;
  for (int level = 1; level * 2 < 64; ++level) {
    h *= 0.5;
    double add = 0.0;
    int kmax = static_cast<int>(t_max / h);
    for (int k = 1; k <= kmax; k += 2) {
      add += term(h * k) + term(-h * k);
    }
    double cur = 0.5 * prev + add * h;
    double step = std::abs(cur - prev);
    prev = cur;
    res.error_estimate = step;
    if (level >= 2 && step <= tol * std::max(1.0, std::abs(cur))) {
      res.converged = true;
      break;
    }
    if (res.nodes_used >= max_nodes) break;
  }
  res.value = prev;
  return res;
}

// Integrates f over (0, inf) via x = exp((pi/2) sinh t).  The integrand must
// be bounded near 0 and decay faster than 1/x at infinity.
template <class F>
QuadResult exp_sinh(F&& f, double tol = 1e-10, int max_nodes = 16384) {
  QuadResult res;
  const double half_pi = 1.5707963267948966;
  const double t_max = 6.11;

  auto term = [&](double t) -> double {
    double x = std::exp(half_pi * std::sinh(t));
    ++res.nodes_used;
    if (x == 0.0 || !std::isfinite(x)) return 0.0;
    double v = f(x);
    if (!std::isfinite(v))
      throw NumericError("exp_sinh: integrand not finite");
    return v * x * half_pi * std::cosh(t);
  };

  double h = 1.0;
  double sum = term(0.0);
  for (int k = 1; k <= static_cast<int>(t_max / h); ++k) {
    sum += term(h * k) + term(-h * k);
  }
  double prev = sum * h;
  for (int level = 1; level * 2 < 64; ++level) {
    h *= 0.5;
    double add = 0.0;
    int kmax = static_cast<int>(t_max / h);
    for (int k = 1; k <= kmax; k += 2) {
      add += term(h * k) + term(-h * k);
    }
    double cur = 0.5 * prev + add * h;
    double step = std::abs(cur - prev);
    prev = cur;
    res.error_estimate = step;
    if (level >= 2 && step <= tol * std::max(1.0, std::abs(cur))) {
      res.converged = true;
      break;
    }
    if (res.nodes_used >= max_nodes) break;
  }
  res.value = prev;
  return res;
}

// The two integrand families of the half-period machinery:
//   geodesic_angle:  f(x, nu)   = nu / (m(x) sqrt(m(x)^2 - nu^2))
//   nu_derivative:   f_nu(x,nu) = m(x) (m(x)^2 - nu^2)^{-3/2}
// Both require m(x) > nu.
struct ClairautIntegrand {
  enum class Kind { geodesic_angle, nu_derivative };

  const Profile* profile = nullptr;
  double nu = 0.0;
  Kind kind = Kind::geodesic_angle;

  double operator()(double x) const {
    double m = profile->eval(x, 0);
    double p = (m - nu) * (m + nu);
    if (!(p > 0.0))
      throw std::domain_error("ClairautIntegrand: m(x) <= nu");
    if (kind == Kind::geodesic_angle) return nu / (m * std::sqrt(p));
    return m / (p * std::sqrt(p));
  }
};

// Angle swept by a unit-speed geodesic with Clairaut constant nu while its
// radius runs from x0 to x1: the integral of f(x, nu) over [x0, x1].
// Endpoints where m = nu (turning points) are admitted; the singular factor
// is evaluated there from a cubic Taylor model anchored at the endpoint,
// with nu snapped to the endpoint value of m so the model's zero sits
// exactly at the endpoint.
double clairaut_angle(const Profile& profile, double nu, double x0, double x1,
                      double tol = 1e-10);

// Integral of f_nu(x, nu) over [x0, x1]; the interval must stay strictly on
// one side of the turning parallel (m > nu throughout).
double fnu_integral(const Profile& profile, double nu, double x0, double x1,
                    double tol = 1e-10);

// Half-period psi(nu) of the decreasing branch, evaluated through the
// arctangent-substituted representation
//   psi(nu) = -2 * integral over tau in (0, inf) of
//             A(m^{-1}(sqrt(u(tau, nu)))) / (a^2 tau^2 + 1),
// where a = m(peak), u(tau, nu) = nu^2 (a^2 tau^2 + 1) / (nu^2 tau^2 + 1)
// and A(x) = sqrt(a^2 - m(x)^2) / m'(x).  The integrand is smooth, which
// makes this an independent cross-check of the direct quadrature.
double half_period_via_transform(const Profile& profile, double nu,
                                 double tol = 1e-10);

}  // namespace revolve
