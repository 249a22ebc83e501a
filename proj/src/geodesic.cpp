#include "revolve/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "revolve/ode.hpp"
#include "revolve/quadrature.hpp"

namespace revolve {

namespace {

// State layout {r, r', theta}.  The Clairaut constant makes theta' algebraic,
// so only r carries second-order dynamics.  A vanishing nu short-circuits the
// profile evaluation entirely: meridians have r'' = 0, and that keeps the
// right-hand side defined while a meridian coasts across a pole clip.
struct GeodesicRhs {
  const Profile* prof;
  double nu;
  double r_top;  // pi on a sphere, +inf on a plane

  bool operator()(double, const std::array<double, 3>& y,
                  std::array<double, 3>& dy) const {
    if (nu == 0.0) {
      dy = {y[1], 0.0, 0.0};
      return true;
    }
    double r = y[0];
    if (r <= 0.0 || r >= r_top) return false;
    double m = prof->eval(r, 0);
    double mp = prof->eval(r, 1);
    double m2 = m * m;
    dy = {y[1], nu * nu * mp / (m2 * m), nu / m2};
    return true;
  }
};

// State layout {r, r', theta, y, y'} with y'' + G(r) y = 0.
struct JacobiRhs {
  const Profile* prof;
  double nu;
  double r_top;

  bool operator()(double, const std::array<double, 5>& y,
                  std::array<double, 5>& dy) const {
    double r = y[0];
    if (r <= 0.0 || r >= r_top) return false;
    double curv = gaussian_curvature(*prof, r);
    double rdd = 0.0;
    double thd = 0.0;
    if (nu != 0.0) {
      double m = prof->eval(r, 0);
      double mp = prof->eval(r, 1);
      rdd = nu * nu * mp / (m * m * m);
      thd = nu / (m * m);
    }
    dy = {y[1], rdd, thd, y[4], -curv * y[3]};
    return true;
  }
};

template <std::size_t N>
double bisect_component(const DenseStep<N>& d, int comp, double level,
                        double s_lo, double s_hi) {
  double g_lo = d.eval_component(s_lo, comp) - level;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (s_lo + s_hi);
    double g = d.eval_component(mid, comp) - level;
    if ((g_lo <= 0.0) == (g <= 0.0)) {
      s_lo = mid;
      g_lo = g;
    } else {
      s_hi = mid;
    }
  }
  return 0.5 * (s_lo + s_hi);
}

// Step fraction at which r reaches the clip distance from a pole, if it does.
template <std::size_t N>
std::optional<double> pole_crossing(const DenseStep<N>& d,
                                    const std::array<double, N>& ynew,
                                    double clip, double r_top) {
  if (ynew[0] <= clip) return bisect_component(d, 0, clip, 0.0, 1.0);
  if (std::isfinite(r_top) && ynew[0] >= r_top - clip)
    return bisect_component(d, 0, r_top - clip, 0.0, 1.0);
  return std::nullopt;
}

double top_radius(const Profile& profile) {
  return profile.domain() == ProfileDomain::sphere_interval
             ? Profile::pi()
             : std::numeric_limits<double>::infinity();
}

void validate_base(double r0, double r_top, double pole_clip) {
  if (!(r0 > 10.0 * pole_clip))
    throw std::invalid_argument("shoot: base radius too close to the vertex");
  if (std::isfinite(r_top) && !(r0 < r_top - 10.0 * pole_clip))
    throw std::invalid_argument("shoot: base radius too close to the far pole");
}

double signed_angle_integral(const Profile& profile, double nu, double a,
                             double b, double tol) {
  if (a == b) return 0.0;
  return a < b ? clairaut_angle(profile, nu, a, b, tol)
               : -clairaut_angle(profile, nu, b, a, tol);
}

double signed_fnu_integral(const Profile& profile, double nu, double a,
                           double b, double tol) {
  if (a == b) return 0.0;
  return a < b ? fnu_integral(profile, nu, a, b, tol)
               : -fnu_integral(profile, nu, b, a, tol);
}

// Solves  integral of the nu-derivative form between x and the peak = level
// (level > 0) for x on the given side of the peak.  The integral is zero at
// the peak and grows without bound as x approaches the turning radius of
// that side, so a bracket always exists; the march halves the remaining gap
// to the turning radius until the level is passed.
double solve_fnu_level(const Profile& profile, double nu, double peak,
                       Branch side, double level, double tol) {
  double turn = branch_inverse(profile, side, nu);
  auto accumulated = [&](double x) {
    return side == Branch::increasing ? fnu_integral(profile, nu, x, peak, tol)
                                      : fnu_integral(profile, nu, peak, x, tol);
  };

  double far_x = peak;  // accumulated(far_x) < level
  double near_x = 0.0;  // will satisfy accumulated(near_x) >= level
  bool bracketed = false;
  for (int k = 1; k <= 200; ++k) {
    double x = turn + (peak - turn) * std::ldexp(1.0, -k);
    double val = accumulated(x);
    if (val >= level) {
      near_x = x;
      bracketed = true;
      break;
    }
    far_x = x;
  }
  if (!bracketed)
    throw NumericError("solve_fnu_level: level not reached near the turning radius");

  double x_tol = 1e-11 * std::max(1.0, std::abs(peak));
  for (int it = 0; it < 64 && std::abs(far_x - near_x) > x_tol; ++it) {
    double mid = 0.5 * (far_x + near_x);
    if (accumulated(mid) >= level)
      near_x = mid;
    else
      far_x = mid;
  }
  return 0.5 * (far_x + near_x);
}

double peak_or_throw(const Profile& profile, const char* who) {
  auto peak = profile.peak_radius();
  if (!peak)
    throw std::domain_error(std::string(who) + ": profile has no interior peak");
  return *peak;
}

}  // namespace

GeodesicPath shoot(const Profile& profile, double r0, double theta0,
                   double angle, double length, const ShootOptions& opts) {
  double r_top = top_radius(profile);
  validate_base(r0, r_top, opts.pole_clip);
  if (!(length > 0.0)) throw std::invalid_argument("shoot: length must be positive");
  if (!(angle >= 0.0 && angle <= Profile::pi()))
    throw std::invalid_argument("shoot: initial angle outside [0, pi]");

  GeodesicPath path;
  path.kind = profile.domain() == ProfileDomain::sphere_interval
                  ? SurfaceKind::sphere
                  : SurfaceKind::plane;
  path.r0 = r0;
  path.theta0 = theta0;
  path.angle = angle;
  path.nu = profile.eval(r0, 0) * std::sin(angle);
  if (std::abs(path.nu) < 1e-15) path.nu = 0.0;

  GeodesicRhs rhs{&profile, path.nu, r_top};
  OdeOptions oopt;
  oopt.abs_tol = opts.abs_tol;
  oopt.rel_tol = opts.rel_tol;
  oopt.h_initial = std::min(1e-3, 0.1 * length);
  oopt.h_max = 2.0;
  oopt.max_steps = opts.max_steps;

  // The longitude component starts at zero and is shifted by theta0 only
  // when samples are recorded, so the step sequence (and with it every r
  // sample) is independent of the initial longitude.
  std::array<double, 3> y0 = {r0, std::cos(angle), 0.0};
  path.samples.push_back({0.0, r0, theta0, y0[1]});

  auto record = [&](double t, const std::array<double, 3>& y) {
    path.samples.push_back({t, y[0], theta0 + y[2], y[1]});
    if (y[0] > 0.0 && y[0] < r_top) {
      double m = profile.eval(y[0], 0);
      double defect =
          std::abs(y[1] * y[1] + path.nu * path.nu / (m * m) - 1.0);
      path.max_speed_defect = std::max(path.max_speed_defect, defect);
    }
  };

  double reached = integrate_dopri5<3>(
      rhs, 0.0, y0, length, oopt,
      [&](const DenseStep<3>& dense, const std::array<double, 3>& ynew,
          double t_new) {
        auto s_pole = pole_crossing(dense, ynew, opts.pole_clip, r_top);
        if (s_pole) {
          double t_hit = dense.t0 + *s_pole * dense.h;
          auto y_hit = dense.eval(*s_pole);
          record(t_hit, y_hit);
          path.pole_hit = true;
          path.pole_time = t_hit;
          return false;
        }
        record(t_new, ynew);
        return true;
      });

  path.length = path.pole_hit ? path.pole_time : reached;
  return path;
}

std::optional<ConjugatePoint> conjugate_point_jacobi(const Profile& profile,
                                                     const GeodesicPath& path,
                                                     const ShootOptions& opts) {
  double r_top = top_radius(profile);
  JacobiRhs rhs{&profile, path.nu, r_top};

  OdeOptions oopt;
  oopt.abs_tol = std::min(opts.abs_tol, 1e-11);
  oopt.rel_tol = std::min(opts.rel_tol, 1e-11);
  oopt.h_initial = std::min(1e-3, 0.1 * std::max(path.length, 1e-6));
  oopt.h_max = 2.0;
  oopt.max_steps = opts.max_steps;

  std::array<double, 5> y0 = {path.r0, std::cos(path.angle), path.theta0, 0.0,
                              1.0};
  std::optional<ConjugatePoint> found;

  integrate_dopri5<5>(
      rhs, 0.0, y0, path.length, oopt,
      [&](const DenseStep<5>& dense, const std::array<double, 5>& ynew,
          double) {
        auto s_pole = pole_crossing(dense, ynew, opts.pole_clip, r_top);
        bool zero_here = dense.c1[3] > 0.0 && ynew[3] <= 0.0;
        if (zero_here) {
          double s_zero = bisect_component(dense, 3, 0.0, 0.0, 1.0);
          if (!s_pole || s_zero <= *s_pole) {
            ConjugatePoint cp;
            cp.t = dense.t0 + s_zero * dense.h;
            cp.r = dense.eval_component(s_zero, 0);
            cp.theta = dense.eval_component(s_zero, 2);
            found = cp;
            return false;
          }
        }
        return !s_pole;
      });

  return found;
}

HalfPeriods half_periods(const Profile& profile, double nu, double tol) {
  double peak = peak_or_throw(profile, "half_periods");
  double m_peak = profile.eval(peak, 0);
  if (!(nu > 0.0) || !(nu < m_peak))
    throw std::domain_error("half_periods: nu outside (0, m(peak))");

  double xi = branch_inverse(profile, Branch::increasing, nu);
  HalfPeriods out;
  out.phi = 2.0 * clairaut_angle(profile, nu, xi, peak, tol);
  if (nu > profile.m_end_limit()) {
    double eta = branch_inverse(profile, Branch::decreasing, nu);
    out.psi = 2.0 * clairaut_angle(profile, nu, peak, eta, tol);
  }
  return out;
}

double half_period_derivative(const Profile& profile, HalfPeriodKind kind,
                              double nu, double step_hint, double quad_tol) {
  double peak = peak_or_throw(profile, "half_period_derivative");
  double m_peak = profile.eval(peak, 0);
  double lo = kind == HalfPeriodKind::psi ? profile.m_end_limit() : 0.0;
  if (!(nu > lo) || !(nu < m_peak))
    throw std::domain_error("half_period_derivative: nu outside the branch domain");

  double room = std::min(nu - lo, m_peak - nu) / 2.5;
  double h = step_hint > 0.0 ? std::min(step_hint, room)
                             : std::min(0.01 * (m_peak - lo), room);
  if (!(h > 0.0))
    throw std::domain_error("half_period_derivative: no room for the stencil");

  auto f = [&](double v) {
    HalfPeriods hp = half_periods(profile, v, quad_tol);
    if (kind == HalfPeriodKind::phi) return hp.phi;
    if (!hp.psi)
      throw NumericError("half_period_derivative: psi undefined at a stencil node");
    return *hp.psi;
  };

  double fm2 = f(nu - 2.0 * h);
  double fm1 = f(nu - h);
  double fmh = f(nu - 0.5 * h);
  double fph = f(nu + 0.5 * h);
  double fp1 = f(nu + h);
  double fp2 = f(nu + 2.0 * h);
  double d_full = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  double d_half = (fm1 - 8.0 * fmh + 8.0 * fph - fp1) / (6.0 * h);
  return (16.0 * d_half - d_full) / 15.0;
}

std::vector<HalfPeriodSample> half_period_table(const Profile& profile,
                                                const std::vector<double>& nus,
                                                bool with_derivatives,
                                                ExecMode mode, double tol) {
  std::vector<HalfPeriodSample> rows(nus.size());
  for_each_index(nus.size(), mode, [&](std::size_t i) {
    HalfPeriodSample row;
    row.nu = nus[i];
    HalfPeriods hp = half_periods(profile, nus[i], tol);
    row.phi = hp.phi;
    row.psi = hp.psi;
    if (with_derivatives) {
      double dtol = std::min(tol, 1e-11);
      row.phi_prime =
          half_period_derivative(profile, HalfPeriodKind::phi, nus[i], 0.0, dtol);
      if (hp.psi)
        row.psi_prime = half_period_derivative(profile, HalfPeriodKind::psi,
                                               nus[i], 0.0, dtol);
    }
    rows[i] = row;
  });
  return rows;
}

double conjugate_height(const Profile& profile, double nu0, double t,
                        double quad_tol) {
  double peak = peak_or_throw(profile, "conjugate_height");
  double m_peak = profile.eval(peak, 0);
  if (!(nu0 > 0.0) || !(nu0 < m_peak))
    throw std::domain_error("conjugate_height: nu0 outside (0, m(peak))");
  if (t < peak)
    throw std::domain_error("conjugate_height: t below the peak radius");

  double snap = 1e-9 * (1.0 + nu0);
  double excess = profile.eval(t, 0) - nu0;
  if (excess <= snap) {
    if (excess < -snap)
      throw std::domain_error("conjugate_height: t beyond the outer turning radius");
    // Tangent endpoint: both integrals of the height equation diverge and
    // the height collapses onto the inner turning radius.
    return branch_inverse(profile, Branch::increasing, nu0);
  }

  double phip =
      half_period_derivative(profile, HalfPeriodKind::phi, nu0, 0.0, quad_tol);
  double target = phip + signed_fnu_integral(profile, nu0, peak, t, quad_tol);
  if (!(target > 0.0))
    throw NumericError("conjugate_height: height equation target not positive");
  return solve_fnu_level(profile, nu0, peak, Branch::increasing, target,
                         quad_tol);
}

double conjugate_height_beta(const Profile& profile, double nu0, double t,
                             double quad_tol) {
  double peak = peak_or_throw(profile, "conjugate_height_beta");
  double m_peak = profile.eval(peak, 0);
  double m_end = profile.m_end_limit();
  if (!(nu0 > m_end) || !(nu0 < m_peak))
    throw std::domain_error(
        "conjugate_height_beta: nu0 outside (m_end, m(peak))");

  double snap = 1e-9 * (1.0 + nu0);
  double excess = profile.eval(t, 0) - nu0;
  if (excess <= snap) {
    if (excess < -snap)
      throw std::domain_error(
          "conjugate_height_beta: t outside the band between turning radii");
    // Tangent endpoints map to the opposite turning radius.
    return t >= peak ? branch_inverse(profile, Branch::increasing, nu0)
                     : branch_inverse(profile, Branch::decreasing, nu0);
  }

  double psip =
      half_period_derivative(profile, HalfPeriodKind::psi, nu0, 0.0, quad_tol);
  double target =
      signed_fnu_integral(profile, nu0, peak, t, quad_tol) - psip;
  if (target == 0.0) return peak;
  Branch side = target > 0.0 ? Branch::increasing : Branch::decreasing;
  return solve_fnu_level(profile, nu0, peak, side, std::abs(target), quad_tol);
}

ConjugateSweep conjugate_sweep(const Profile& profile, double nu0, double t,
                               double quad_tol) {
  ConjugateSweep out;
  out.nu0 = nu0;
  out.t = t;

  double peak = peak_or_throw(profile, "conjugate_sweep");
  HalfPeriods hp = half_periods(profile, nu0, quad_tol);
  out.phi = hp.phi;
  out.psi = hp.psi;

  double snap = 1e-9 * (1.0 + nu0);
  double excess = profile.eval(t, 0) - nu0;
  if (excess < -snap)
    throw std::domain_error(
        "conjugate_sweep: t outside the band between turning radii");

  if (t >= peak) {
    double h = conjugate_height(profile, nu0, t, quad_tol);
    out.h_gamma = h;
    out.phi_at_conjugate = hp.phi +
                           signed_angle_integral(profile, nu0, peak, t, quad_tol) -
                           signed_angle_integral(profile, nu0, h, peak, quad_tol);
  }

  if (hp.psi) {
    double h = conjugate_height_beta(profile, nu0, t, quad_tol);
    out.h_beta = h;
    out.psi_at_conjugate = *hp.psi -
                           signed_angle_integral(profile, nu0, peak, t, quad_tol) +
                           signed_angle_integral(profile, nu0, h, peak, quad_tol);
  }
  return out;
}

}  // namespace revolve
