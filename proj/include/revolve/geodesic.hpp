#pragma once

// Geodesics on a surface of revolution, their conjugate points, and the
// half-period functions attached to the Clairaut constant.  A unit-speed
// geodesic with Clairaut constant nu satisfies
//   r'' = nu^2 m'(r) / m(r)^3,   theta' = nu / m(r)^2,
// and the scalar Jacobi equation along it is y'' + G(r(t)) y = 0.

#include <array>
#include <optional>
#include <vector>

#include "revolve/parallel.hpp"
#include "revolve/profile.hpp"

namespace revolve {

struct GeodesicState {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;  // unwrapped
  double rprime = 0.0;
};

struct GeodesicPath {
  SurfaceKind kind = SurfaceKind::plane;
  double nu = 0.0;
  double r0 = 0.0;
  double theta0 = 0.0;
  double angle = 0.0;  // initial angle from the outward meridian direction
  double length = 0.0;  // arc length actually covered
  bool pole_hit = false;
  double pole_time = 0.0;  // meaningful only when pole_hit
  double max_speed_defect = 0.0;
  std::vector<GeodesicState> samples;

  // Geodesics leaving at a right angle or steeper start inward-tangent.
  bool gamma_type() const { return angle >= Profile::pi() / 2.0; }
};

struct ShootOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  // Reaching this distance from a pole counts as arriving there.
  double pole_clip = 1e-9;
  std::size_t max_steps = 4000000;
};

// Integrates the geodesic with initial radius r0, initial longitude theta0,
// and initial angle in [0, pi] measured from the outward meridian, for the
// given arc length (or until a pole is reached).
GeodesicPath shoot(const Profile& profile, double r0, double theta0,
                   double angle, double length, const ShootOptions& opts = {});

// First zero of the Jacobi field y'' + G y = 0, y(0) = 0, y'(0) = 1 along
// the geodesic with the path's initial data, if one occurs before the
// path's end (or before a pole).
struct ConjugatePoint {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
};
std::optional<ConjugatePoint> conjugate_point_jacobi(
    const Profile& profile, const GeodesicPath& path,
    const ShootOptions& opts = {});

// Angle swept by a geodesic between its two consecutive turning radii.
// phi is the sweep across the increasing branch (from the inner turning
// radius up to the peak, doubled); psi the sweep across the decreasing
// branch (peak down to the outer turning radius, doubled).  psi exists only
// when nu exceeds the limit value of m past the peak.
struct HalfPeriods {
  double phi = 0.0;
  std::optional<double> psi;
};
HalfPeriods half_periods(const Profile& profile, double nu, double tol = 1e-10);

enum class HalfPeriodKind { phi, psi };

// d(phi)/d(nu) or d(psi)/d(nu) by fourth-order central differences with one
// Richardson extrapolation; quadrature noise is kept well below the
// truncation error of the stencil.
double half_period_derivative(const Profile& profile, HalfPeriodKind kind,
                              double nu, double step_hint = 0.0,
                              double quad_tol = 1e-11);

struct HalfPeriodSample {
  double nu = 0.0;
  double phi = 0.0;
  std::optional<double> psi;
  std::optional<double> phi_prime;
  std::optional<double> psi_prime;
};

// Batch evaluation over a vector of Clairaut constants; the rows are
// independent, so the loop parallelizes without changing any value.
std::vector<HalfPeriodSample> half_period_table(
    const Profile& profile, const std::vector<double>& nus,
    bool with_derivatives = false, ExecMode mode = ExecMode::openmp,
    double tol = 1e-10);

// Height h = h(t) at which the normal geodesic through radius t is cut by
// the conjugate point of the inward-tangent family with Clairaut constant
// nu0: the unique solution in (xi(nu0), peak] of
//   phi'(nu0) + I(peak, t) - I(h, peak) = 0,
// where I is the integral of the nu-derivative of the angle form.  t must
// lie in [peak, eta(nu0)]; the tangent endpoint t = eta(nu0) returns the
// limit value xi(nu0).
double conjugate_height(const Profile& profile, double nu0, double t,
                        double quad_tol = 1e-11);

// Same height for the outward-tangent family:
//   psi'(nu0) - I(peak, t) + I(h, peak) = 0,
// with signed integrals; t ranges over (xi(nu0), eta(nu0)) and h over the
// same interval, on the side of the peak opposite to t's excess.  The
// tangent endpoints map to the opposite turning radius.
double conjugate_height_beta(const Profile& profile, double nu0, double t,
                             double quad_tol = 1e-11);

// Total angle swept between the conjugate pair (t, h(t)): the geodesic
// sweep from h through the turning radius to t.  phi_at_conjugate uses the
// inward-tangent height, psi_at_conjugate the outward-tangent one; both are
// defined only where the corresponding height equation is.
struct ConjugateSweep {
  double nu0 = 0.0;
  double t = 0.0;
  double phi = 0.0;
  std::optional<double> psi;
  std::optional<double> h_gamma;
  std::optional<double> phi_at_conjugate;
  std::optional<double> h_beta;
  std::optional<double> psi_at_conjugate;
};
ConjugateSweep conjugate_sweep(const Profile& profile, double nu0, double t,
                               double quad_tol = 1e-11);

}  // namespace revolve
