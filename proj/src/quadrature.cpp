#include "revolve/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace revolve {

namespace {

// Cubic Taylor model of m - nu anchored at one endpoint of the integration
// interval.  `sign` is +1 when the interval extends to the right of the
// anchor and -1 when it extends to the left; d >= 0 is the distance from the
// anchor.  When the endpoint is a turning point the residual is forced to
// zero so that the modeled root sits exactly at d = 0; the quadrature then
// resolves the singularity to full precision instead of inheriting the
// O(sqrt(eps)) uncertainty of the turning point's floating-point location.
struct EndpointModel {
  bool active = false;
  double sign = 1.0;
  double residual = 0.0;
  double d1 = 0.0, d2 = 0.0, d3 = 0.0;
  double switch_dist = 0.0;

  double m_minus_nu(double d) const {
    return residual +
           d * (sign * d1 + d * (0.5 * d2 + d * sign * d3 / 6.0));
  }
};

EndpointModel make_model(const Profile& profile, double x, double sign,
                         double nu_hat, bool turning) {
  EndpointModel m;
  m.active = turning;
  if (!turning) return m;
  m.sign = sign;
  m.residual = 0.0;  // nu_hat equals m(x) by construction
  (void)nu_hat;
  m.d1 = profile.eval(x, 1);
  m.d2 = profile.eval(x, 2);
  m.d3 = profile.eval(x, 3);
  m.switch_dist = 1e-4 * std::max(1.0, std::abs(x));
  return m;
}

}  // namespace

double clairaut_angle(const Profile& profile, double nu, double x0, double x1,
                      double tol) {
  if (!(nu > 0.0)) throw std::domain_error("clairaut_angle: nu must be positive");
  if (!(x0 < x1)) {
    if (x0 == x1) return 0.0;
    throw std::invalid_argument("clairaut_angle: requires x0 < x1");
  }
  double m0 = profile.eval(x0, 0);
  double m1 = profile.eval(x1, 0);
  double turn_tol = 1e-9 * (1.0 + nu);
  bool turn0 = std::abs(m0 - nu) <= turn_tol;
  bool turn1 = std::abs(m1 - nu) <= turn_tol;

  // Snap nu onto the turning endpoint's exact floating-point value of m; the
  // shift is within the turning tolerance and makes the singular model
  // consistent with the endpoint.
  double nu_hat = nu;
  if (turn0)
    nu_hat = m0;
  else if (turn1)
    nu_hat = m1;

  EndpointModel left = make_model(profile, x0, +1.0, nu_hat, turn0);
  EndpointModel right = make_model(profile, x1, -1.0, nu_hat, turn1);
  if (turn0 && turn1) right.residual = m1 - nu_hat;

  auto integrand = [&](double x, double da, double db) -> double {
    double dm;
    if (left.active && da <= left.switch_dist) {
      dm = left.m_minus_nu(da);
    } else if (right.active && db <= right.switch_dist) {
      dm = right.m_minus_nu(db);
    } else {
      dm = profile.eval(x, 0) - nu_hat;
    }
    double p = dm * (dm + 2.0 * nu_hat);
    if (!(p > 0.0)) {
      throw NumericError("clairaut_angle: m <= nu inside the interval");
    }
    double m = dm + nu_hat;
    return nu_hat / (m * std::sqrt(p));
  };

  QuadResult q = tanh_sinh(integrand, x0, x1, tol);
  if (!q.converged)
    throw NumericError("clairaut_angle: quadrature did not converge");
  return q.value;
}

double fnu_integral(const Profile& profile, double nu, double x0, double x1,
                    double tol) {
  if (!(nu > 0.0)) throw std::domain_error("fnu_integral: nu must be positive");
  if (!(x0 < x1)) {
    if (x0 == x1) return 0.0;
    throw std::invalid_argument("fnu_integral: requires x0 < x1");
  }
  auto integrand = [&](double x, double, double) -> double {
    double m = profile.eval(x, 0);
    double p = (m - nu) * (m + nu);
    if (!(p > 0.0))
      throw NumericError("fnu_integral: interval touches the turning parallel");
    return m / (p * std::sqrt(p));
  };
  QuadResult q = tanh_sinh(integrand, x0, x1, tol);
  if (!q.converged)
    throw NumericError("fnu_integral: quadrature did not converge");
  return q.value;
}

double half_period_via_transform(const Profile& profile, double nu,
                                 double tol) {
  auto peak_opt = profile.peak_radius();
  if (!peak_opt)
    throw std::invalid_argument(
        "half_period_via_transform: profile has no critical parallel");
  double peak = *peak_opt;
  double a = profile.eval(peak, 0);
  double m_end = profile.m_end_limit();
  if (!(nu > m_end) || !(nu < a))
    throw std::domain_error(
        "half_period_via_transform: nu outside the decreasing branch range");

  double B = profile.eval(peak, 2);
  if (!(B < 0.0))
    throw NumericError("half_period_via_transform: degenerate peak (m'' >= 0)");
  double C = profile.eval(peak, 3);
  double absB = -B;
  // Limit of A at the peak and its first-order correction:
  //   A(peak + s) = -sqrt(a/|B|) * (1 + C/(3|B|) s) + O(s^2).
  double A_peak = -std::sqrt(a / absB);
  double A_slope = C / (3.0 * absB);

  double a2 = a * a;
  double nu2 = nu * nu;

  auto integrand = [&](double tau) -> double {
    double t2 = tau * tau;
    double denom_u = nu2 * t2 + 1.0;
    double u = nu2 * (a2 * t2 + 1.0) / denom_u;
    // a - sqrt(u) without cancellation: a^2 - u = (a^2 - nu^2) / (nu^2 t^2 + 1).
    double a2_minus_u = (a2 - nu2) / denom_u;
    double root_u = std::sqrt(u);
    double delta = a2_minus_u / (a + root_u);

    double A;
    double s0 = std::sqrt(2.0 * delta / absB);
    if (s0 < 1e-4) {
      double s = s0 * (1.0 + (C / (6.0 * absB)) * s0);
      A = A_peak * (1.0 + A_slope * s);
    } else {
      double x = branch_inverse(profile, Branch::decreasing, root_u);
      double m = profile.eval(x, 0);
      double mp = profile.eval(x, 1);
      A = std::sqrt(std::max(0.0, (a - m) * (a + m))) / mp;
    }
    return A / (a2 * t2 + 1.0);
  };

  QuadResult q = exp_sinh(integrand, tol);
  if (!q.converged)
    throw NumericError("half_period_via_transform: quadrature did not converge");
  return -2.0 * q.value;
}

}  // namespace revolve
