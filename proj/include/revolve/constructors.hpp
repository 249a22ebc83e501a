#pragma once

// Constructive profile families:
//
//   - the model profile m0(x) = x / (1 + x^2), whose curvature ratio -m''/m
//     increases to zero from some radius on,
//   - m_alpha = m0 + alpha * (integrated smooth step), which opens the end of
//     the surface into a cone of slope alpha,
//   - oscillating modifications m(x) = base(x) * (1 + sum f_n(x)) built from
//     compactly supported high-frequency bumps f_n: the C^2 norms of the
//     bumps are small enough to preserve convexity of the end, but their
//     third derivatives are so large that (m''/m)' changes sign inside every
//     support interval [2n-1, 2n+1],
//   - arclength profiles of a deformed-ellipse generating curve producing
//     sphere-like surfaces whose equator splits the meridian asymmetrically,
//   - the bound lambda0 on that deformation below which the curvature ratio
//     stays monotone on both sides of the equator.

#include <cstdint>
#include <memory>
#include <vector>

#include "revolve/jet.hpp"
#include "revolve/profile.hpp"

namespace revolve {

// C-infinity step: 0 for u <= 0, 1 for u >= 1, strictly increasing between,
// built from g(u) = exp(-1/u) as s(u) = g(u) / (g(u) + g(1-u)).  Returns the
// value and first three derivatives at u.
Jet3 smooth_step(double u);

// Integral of smooth_step from 0 to u: exactly 0 for u <= 0 and u - 1/2 for
// u >= 1 (the step is symmetric about u = 1/2); Gauss-Legendre panels in
// between.
double smooth_step_integral(double u);

// Plateau mollifier phi(x) = s(2(x+1)) * s(2(1-x)): C-infinity, supported in
// (-1, 1), identically 1 on [-1/2, 1/2].  Value and derivatives to order 3.
Jet3 plateau(double x);

// m0(x) = x / (1 + x^2) on [0, inf) with closed-form derivatives to order 3.
// Peak at x = 1; m' < 0 on (1, inf) with m -> 0 and m' -> 0 at infinity.
class M0Profile final : public Profile {
 public:
  double eval(double x, int order) const override;
  ProfileDomain domain() const override { return ProfileDomain::half_line; }
  ProfileFamily family() const override { return ProfileFamily::m0; }
  std::optional<double> peak_radius() const override { return 1.0; }
  double second_critical_radius() const override {
    return std::numeric_limits<double>::infinity();
  }
  double m_end_limit() const override { return 0.0; }
  double mprime_end_limit() const override { return 0.0; }
};

ProfileFunction make_m0();

// m_alpha(x) = m0(x) + alpha * integral_0^x s(t - sqrt(7)) dt for alpha > 0,
// where s is smooth_step.  Coincides with m0 on [0, sqrt(7)], has
// m'' >= m0'' everywhere, and m' -> alpha at infinity, so the end opens into
// a cone.  The slope ramps up on [sqrt(7), sqrt(7) + 1]; the decreasing
// branch that starts at the peak x = 1 ends at a finite second critical
// radius for every alpha > 0.
class MAlphaProfile final : public Profile {
 public:
  explicit MAlphaProfile(double alpha);

  double eval(double x, int order) const override;
  ProfileDomain domain() const override { return ProfileDomain::half_line; }
  ProfileFamily family() const override { return ProfileFamily::m_alpha; }
  std::optional<double> peak_radius() const override { return 1.0; }
  double second_critical_radius() const override { return r1_; }
  double m_end_limit() const override { return m_end_; }
  double mprime_end_limit() const override { return alpha_; }

  double alpha() const { return alpha_; }

 private:
  double alpha_ = 0.0;
  double r1_ = 0.0;    // second zero of m'
  double m_end_ = 0.0; // m(r1_)
};

ProfileFunction make_m_alpha(double alpha);

// One compactly supported oscillation
//
//   f(x) = phi(x) cos(K^2 x) / K^5,  K = sqrt((4k+1) pi),
//
// with phi the plateau mollifier.  k is the smallest positive integer making
// K > B / eps, where B is the dense-grid supremum of 3 + 3|phi'| + |phi''|;
// this guarantees |f| + |f'| + |f''| < eps everywhere while the third
// derivative still reaches +K at x = 1/2 and -K at x = -1/2 with
// K > 1/eps.  Support lies in (-1, 1).
class BumpFunction {
 public:
  explicit BumpFunction(double eps);

  // f^(order)(x) for order in 0..3.
  double eval(double x, int order) const;

  double epsilon() const { return eps_; }
  std::int64_t oscillation_count() const { return k_; }
  double frequency() const { return frequency_; }

 private:
  double eps_ = 0.0;
  std::int64_t k_ = 0;
  double frequency_ = 0.0; // K
};

BumpFunction make_bump(double eps);

// Admissible bump amplitude for modifying a profile on the interval
// I_n = [2n-1, 2n+1]:
//
//   C_n = 0.9 * min{ a_n / (2 N2), 1 / (3 (1 + 4 R1 + R2)), 1 / (n^2 N2) }
//
// where a_n = min m'' on I_n, N2 = sup(|m| + |m'| + |m''|),
// R1 = sup(|m'/m| + |(m'/m)'|), R2 = sup(|m''/m| + |(m''/m)'|), all extrema
// estimated on a 4097-point grid; the 0.9 factor keeps the sampled value
// conservative.  Multiplying m by 1 + f with |f| + |f'| + |f''| < C_n then
// preserves positivity of m'' on I_n.  Throws std::invalid_argument when m
// or m'' is not positive on I_n.
double interval_constants(const Profile& base, int n);

// Descriptor of one materialized bump of an oscillating profile.
struct BumpSpec {
  int n = 0;               // interval index; the bump lives on [2n-1, 2n+1]
  double amplitude = 0.0;  // C_n, the bound on |f| + |f'| + |f''|
  std::int64_t count = 0;  // k_n, the oscillation count
  double frequency = 0.0;  // K_n = sqrt((4 k_n + 1) pi)
};

// base(x) * (1 + sum_{n0 <= n <= n_max} f_n(x)) with f_n the bump of
// amplitude interval_constants(base, n) translated to [2n-1, 2n+1].  The
// supports are disjoint, so each evaluation touches at most one bump and the
// profile equals the base outside [2 n0 - 1, 2 n_max + 1].  The convexity of
// the end survives (m'' > 0 where the base is convex) while (m''/m)' changes
// sign inside every bump interval, so the curvature ratio -m''/m is not
// eventually monotone.
//
// Bumps are materialized up to the horizon 2 n_max + 1 at construction;
// evaluation past the horizon throws NumericError rather than silently
// dropping bumps.
class OscillatingProfile final : public Profile {
 public:
  OscillatingProfile(std::shared_ptr<const Profile> base, int n0,
                     double x_max);

  double eval(double x, int order) const override;
  ProfileDomain domain() const override { return ProfileDomain::half_line; }
  ProfileFamily family() const override { return ProfileFamily::oscillating; }
  std::optional<double> peak_radius() const override;
  double second_critical_radius() const override;
  double m_end_limit() const override;
  double mprime_end_limit() const override;
  double eval_horizon() const override { return horizon_; }

  const std::shared_ptr<const Profile>& base() const { return base_; }
  int start_index() const { return n0_; }
  int max_index() const { return n_max_; }
  double horizon() const { return horizon_; }
  const std::vector<BumpSpec>& bumps() const { return specs_; }

 private:
  std::shared_ptr<const Profile> base_;
  int n0_ = 0;
  int n_max_ = 0;
  double horizon_ = 0.0;
  std::vector<BumpSpec> specs_;
  std::vector<BumpFunction> bumps_;
  std::optional<double> r1_;
  double m_end_ = 0.0;
};

// Builds the oscillating modification of `base` with bumps on the intervals
// [2n-1, 2n+1] for n0 <= n <= (x_max - 1) / 2.  The base must be positive
// and convex on [2 n0 - 1, x_max] (checked interval by interval) and must
// have a nonnegative slope limit at infinity.
ProfileFunction make_oscillating(ProfileFunction base, int n0,
                                 double x_max = 129.0);

// Sphere-like profiles from the generating curve
//
//   x(u) = cos u + F(cos u),  F(w) = lambda (w - w^4 / 12),
//   y(u) = alpha sin u,        u in [0, pi],
//
// scaled by l = pi / (curve length) so the meridian has length pi, and
// reparametrized by arclength r = X(u) = l * integral_0^u |curve'|.  The
// profile is m(r) = l y(u(r)); it satisfies m(0) = m(pi) = 0, m'(0) = 1,
// m'(pi) = -1, and has its unique critical parallel at the equator radius
// r_e = X(pi/2), which for lambda != 0 does not bisect [0, pi].
struct SphereProfileData {
  double alpha = 0.0;            // vertical semi-axis of the generating curve
  double lambda = 0.0;           // horizontal deformation parameter
  double length_factor = 0.0;    // l, the arclength normalization
  double equator_radius = 0.0;   // r_e = X(pi/2)
  std::vector<double> u_nodes;   // parameter grid on [0, pi]
  std::vector<double> arclength; // X at the grid nodes; X(pi) = pi
};

class SphereProfile final : public Profile {
 public:
  SphereProfile(double alpha, double lambda);

  double eval(double x, int order) const override;
  ProfileDomain domain() const override {
    return ProfileDomain::sphere_interval;
  }
  ProfileFamily family() const override {
    return ProfileFamily::sphere_profile;
  }
  std::optional<double> peak_radius() const override {
    return data_.equator_radius;
  }
  double second_critical_radius() const override { return pi(); }
  double m_end_limit() const override { return 0.0; }

  double alpha() const { return data_.alpha; }
  double lambda() const { return data_.lambda; }
  double length_factor() const { return data_.length_factor; }
  double equator_radius() const { return data_.equator_radius; }
  const SphereProfileData& data() const { return data_; }

  // Inverts the arclength map: the u with X(u) = r, via the cached table and
  // Newton refinement (accurate to about 1e-12).
  double parameter_of_radius(double r) const;

 private:
  double arclength_of(int panel, double u) const;
  SphereProfileData data_;
};

std::shared_ptr<const SphereProfile> make_sphere_profile(double alpha,
                                                         double lambda);

// Numerator Q(u) of the Gaussian curvature G = Q / (l^2 S^2) of a sphere
// profile, S = x'(u)^2 + y'(u)^2, in the factored closed form
//
//   Q = A^2 + lambda cos(u) sin^2(2u) A / 4,  A = 1 + F'(cos u).
//
// Independent of alpha.
double sphere_curvature_numerator(double lambda, double u);

// The same numerator computed directly from the generating-curve derivatives
// as -x'(x' y'' - x'' y') / y (alpha cancels); valid away from u = 0, pi.
double sphere_curvature_numerator_direct(double lambda, double u);

// Numerator P = Q' S - 2 Q S' of dG/du.  Since du/dr > 0, the curvature is
// strictly decreasing in r where P < 0 and increasing where P > 0; the
// curvature ratio -m''/m of the sphere profile is monotone on both sides of
// the equator exactly when P / sin(2u) < 0 away from u = pi/2.
double sphere_curvature_slope_numerator(double alpha, double lambda, double u);

// Deformation bound: the positive root lambda0 of
//
//   32 lambda (1 + lambda)^3 + 8 lambda (1 + lambda) = 2 (1 - alpha^2),
//
// found by bisection on (0, 1) to 1e-10.  Every |lambda| < lambda0 keeps
// P / sin(2u) negative, hence the curvature ratio monotone on each side of
// the equator.  Strictly decreasing in alpha.
double lambda0_bound(double alpha);

}  // namespace revolve
