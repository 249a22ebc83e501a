#pragma once

// Rotationally symmetric metrics dr^2 + m(r)^2 dtheta^2 described by their
// warping profile m.  A profile lives either on the half line [0, inf)
// (plane-like surfaces) or on [0, pi] (sphere-like surfaces); in both cases
// m(0) = 0 and m'(0) = 1, and on the sphere interval m(pi) = 0, m'(pi) = -1.
//
// Only closed-form families are supported: every profile evaluates m and its
// first three derivatives analytically (tabulated data cannot deliver the
// derivative accuracy the half-period and conjugate-point machinery needs).

#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace revolve {

enum class ProfileDomain { half_line, sphere_interval };

enum class ProfileFamily {
  euclidean,       // m(x) = x, the flat plane
  round_sphere,    // m(x) = sin x on [0, pi]
  m0,              // m(x) = x / (1 + x^2)
  m_alpha,         // m0 plus alpha times an integrated smooth step
  oscillating,     // base profile modulated by compactly supported bumps
  sphere_profile,  // arclength parametrization of a deformed ellipse
  scaled           // lambda^{-1} m(lambda x) applied to another profile
};

const char* family_name(ProfileFamily f);

class Profile {
 public:
  virtual ~Profile() = default;

  // m^(order)(x) for order in 0..3.  Throws std::invalid_argument for other
  // orders and std::domain_error for x outside the domain.
  virtual double eval(double x, int order) const = 0;

  virtual ProfileDomain domain() const = 0;
  virtual ProfileFamily family() const = 0;

  // Right end of the domain: +inf for the half line, pi for the sphere case.
  double x_max() const {
    return domain() == ProfileDomain::half_line
               ? std::numeric_limits<double>::infinity()
               : pi();
  }

  // First zero of m' (the innermost critical parallel), if m' vanishes at
  // all.  The flat plane has none.
  virtual std::optional<double> peak_radius() const = 0;

  // End of the decreasing branch that starts at peak_radius(): the next zero
  // of m' when one exists, +inf when m' stays negative, pi on the sphere
  // interval.  Requires peak_radius() to exist.
  virtual double second_critical_radius() const = 0;

  // Limit of m at the far end of the decreasing branch: m(r1) for finite r1,
  // lim m(x) as x -> inf otherwise (may be +inf), 0 on the sphere interval.
  virtual double m_end_limit() const = 0;

  // Limit of m' as x -> inf; defined for half-line profiles only (used by
  // the total-curvature formula).
  virtual double mprime_end_limit() const {
    throw std::logic_error("mprime_end_limit: half-line profiles only");
  }

  // Largest x this profile can evaluate; +inf except for families that
  // materialize a finite construction window.
  virtual double eval_horizon() const {
    return std::numeric_limits<double>::infinity();
  }

  static constexpr double pi() { return 3.141592653589793238462643383279502884; }

 protected:
  void require_order(int order) const {
    if (order < 0 || order > 3)
      throw std::invalid_argument("profile eval: derivative order must be 0..3");
  }
  void require_in_domain(double x) const;
};

// Value-semantic handle sharing an immutable profile.
class ProfileFunction {
 public:
  ProfileFunction() = default;
  explicit ProfileFunction(std::shared_ptr<const Profile> p) : p_(std::move(p)) {}

  const Profile& ref() const {
    if (!p_) throw std::logic_error("empty ProfileFunction");
    return *p_;
  }
  const std::shared_ptr<const Profile>& shared() const { return p_; }
  bool valid() const { return static_cast<bool>(p_); }

  double operator()(double x, int order = 0) const { return ref().eval(x, order); }

 private:
  std::shared_ptr<const Profile> p_;
};

enum class SurfaceKind { plane, sphere };

// A profile together with the surface kind it generates.  The kind is
// determined by the profile domain; the constructor enforces the match.
struct SurfaceOfRevolution {
  ProfileFunction profile;
  SurfaceKind kind = SurfaceKind::plane;

  explicit SurfaceOfRevolution(ProfileFunction p)
      : profile(std::move(p)),
        kind(profile.ref().domain() == ProfileDomain::half_line
                 ? SurfaceKind::plane
                 : SurfaceKind::sphere) {}
};

ProfileFunction make_euclidean();
ProfileFunction make_round_sphere();

// m_lambda(x) = m(lambda x) / lambda.  Homothety of the underlying surface;
// rescales the first critical parallel from lambda to 1 when
// lambda = peak_radius of the inner profile.
class ScaledProfile : public Profile {
 public:
  ScaledProfile(std::shared_ptr<const Profile> inner, double lambda);

  double eval(double x, int order) const override;
  ProfileDomain domain() const override { return ProfileDomain::half_line; }
  ProfileFamily family() const override { return ProfileFamily::scaled; }
  std::optional<double> peak_radius() const override;
  double second_critical_radius() const override;
  double m_end_limit() const override;
  double mprime_end_limit() const override;
  double eval_horizon() const override {
    return inner_->eval_horizon() / lambda_;
  }

  const std::shared_ptr<const Profile>& inner() const { return inner_; }
  double lambda() const { return lambda_; }

 private:
  std::shared_ptr<const Profile> inner_;
  double lambda_;
};

enum class Branch { increasing, decreasing };

// Inverse of m restricted to one monotone branch around the peak: the
// increasing branch [0, peak] gives xi(nu), the decreasing branch
// [peak, r1] gives eta(nu).  nu must lie strictly inside the branch's value
// range; the result satisfies |m(x) - nu| <= 1e-12 * scale.
double branch_inverse(const Profile& profile, Branch branch, double nu);

// Rescales so the first critical parallel sits at radius 1:
// m_new(x) = m(peak)^{-1}... precisely m_new(x) = m(lambda x) / lambda with
// lambda = peak_radius.  Profiles already peaked at 1 are returned unchanged,
// and nested rescalings are flattened.
ProfileFunction normalize(const ProfileFunction& profile);

// Gaussian curvature -m''(x)/m(x).  At a pole (x = 0, or x = pi on the
// sphere interval) the 0/0 form is resolved by fourth-order one-sided
// extrapolation in x^2 from inside the domain.
double gaussian_curvature(const Profile& profile, double x);

struct TotalCurvatureResult {
  double value = 0.0;             // 2*pi*(1 - lim m') on the plane, 4*pi on spheres
  double quadrature_value = 0.0;  // -2*pi * integral of m'' over [0, X] + tail
  double tail_bound = 0.0;        // |m'(X) - lim m'| contribution folded into the check
  double cross_check_error = 0.0; // |value - quadrature_value|
};

// Total Gaussian curvature integral(G dA) = 2*pi*(m'(0) - m'(end)).  The
// closed-form value is cross-checked against a direct quadrature of -m''
// over a truncated domain; a non-convergent tail raises NumericError.
TotalCurvatureResult total_curvature(const Profile& profile);

// Thrown when an iteration or quadrature fails to converge.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

// Locates the zero of m' that terminates the decreasing branch beginning at
// `peak`, scanning outward and bisecting the first sign change of m'.
// Returns +inf when m' stays negative up to the search horizon.
double find_second_critical_radius(const Profile& profile, double peak);

// Bisection + Newton polish for m(x) = nu on a bracket where m - nu changes
// sign and m is strictly monotone.
double monotone_root(const Profile& profile, double nu, double lo, double hi);

}  // namespace detail

}  // namespace revolve
