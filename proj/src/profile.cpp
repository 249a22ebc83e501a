#include "revolve/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "revolve/gauss.hpp"

namespace revolve {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Flat plane, m(x) = x.
class EuclideanProfile final : public Profile {
 public:
  double eval(double x, int order) const override {
    require_order(order);
    require_in_domain(x);
    switch (order) {
      case 0: return x;
      case 1: return 1.0;
      default: return 0.0;
    }
  }
  ProfileDomain domain() const override { return ProfileDomain::half_line; }
  ProfileFamily family() const override { return ProfileFamily::euclidean; }
  std::optional<double> peak_radius() const override { return std::nullopt; }
  double second_critical_radius() const override {
    throw std::logic_error("euclidean profile has no critical parallel");
  }
  double m_end_limit() const override { return kInf; }
  double mprime_end_limit() const override { return 1.0; }
};

// Unit round sphere, m(x) = sin x on [0, pi].
class RoundSphereProfile final : public Profile {
 public:
  double eval(double x, int order) const override {
    require_order(order);
    require_in_domain(x);
    switch (order) {
      case 0: return std::sin(x);
      case 1: return std::cos(x);
      case 2: return -std::sin(x);
      default: return -std::cos(x);
    }
  }
  ProfileDomain domain() const override { return ProfileDomain::sphere_interval; }
  ProfileFamily family() const override { return ProfileFamily::round_sphere; }
  std::optional<double> peak_radius() const override { return kPi / 2; }
  double second_critical_radius() const override { return kPi; }
  double m_end_limit() const override { return 0.0; }
};

using detail::gauss16;

}  // namespace

const char* family_name(ProfileFamily f) {
  switch (f) {
    case ProfileFamily::euclidean: return "euclidean";
    case ProfileFamily::round_sphere: return "round-sphere";
    case ProfileFamily::m0: return "m0";
    case ProfileFamily::m_alpha: return "m-alpha";
    case ProfileFamily::oscillating: return "oscillating";
    case ProfileFamily::sphere_profile: return "sphere-profile";
    case ProfileFamily::scaled: return "scaled";
  }
  return "unknown";
}

void Profile::require_in_domain(double x) const {
  double hi = x_max();
  if (!(x >= 0.0) || x > hi) {
    throw std::domain_error("profile eval: x outside domain");
  }
}

ProfileFunction make_euclidean() {
  return ProfileFunction(std::make_shared<EuclideanProfile>());
}

ProfileFunction make_round_sphere() {
  return ProfileFunction(std::make_shared<RoundSphereProfile>());
}

ScaledProfile::ScaledProfile(std::shared_ptr<const Profile> inner, double lambda)
    : inner_(std::move(inner)), lambda_(lambda) {
  if (!inner_) throw std::invalid_argument("scaled profile: null inner profile");
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_))
    throw std::invalid_argument("scaled profile: lambda must be positive");
  if (inner_->domain() != ProfileDomain::half_line)
    throw std::invalid_argument("scaled profile: half-line profiles only");
}

double ScaledProfile::eval(double x, int order) const {
  require_order(order);
  require_in_domain(x);
  double scale = 1.0;
  for (int k = 1; k < order; ++k) scale *= lambda_;
  if (order == 0) scale = 1.0 / lambda_;
  return scale * inner_->eval(lambda_ * x, order);
}

std::optional<double> ScaledProfile::peak_radius() const {
  auto p = inner_->peak_radius();
  if (!p) return std::nullopt;
  return *p / lambda_;
}

double ScaledProfile::second_critical_radius() const {
  return inner_->second_critical_radius() / lambda_;
}

double ScaledProfile::m_end_limit() const {
  return inner_->m_end_limit() / lambda_;
}

double ScaledProfile::mprime_end_limit() const {
  return inner_->mprime_end_limit();
}

namespace detail {

double monotone_root(const Profile& profile, double nu, double lo, double hi) {
  double flo = profile.eval(lo, 0) - nu;
  double fhi = profile.eval(hi, 0) - nu;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("monotone_root: endpoints do not bracket");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    double fm = profile.eval(mid, 0) - nu;
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  // Newton polish; the bracket is already tight, this mops up the last ulps
  // when m' is not degenerate.
  for (int i = 0; i < 2; ++i) {
    double d = profile.eval(x, 1);
    if (d == 0.0) break;
    double step = (profile.eval(x, 0) - nu) / d;
    double xn = x - step;
    if (xn < lo || xn > hi) break;
    x = xn;
  }
  return x;
}

double find_second_critical_radius(const Profile& profile, double peak) {
  if (profile.domain() == ProfileDomain::sphere_interval) return Profile::pi();
  const double horizon = 1e6 * std::max(1.0, peak);
  double x = peak * 1.0078125 + 1e-9;
  double prev = x;
  double step = std::max(1e-3, 0.01 * peak);
  while (x < horizon) {
    double d = profile.eval(x, 1);
    if (d >= 0.0) {
      // First sign change of m' after the peak; bisect m' on [prev, x].
      double lo = prev, hi = x;
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (profile.eval(mid, 1) < 0.0)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = x;
    x += step;
    step *= 1.25;
  }
  return kInf;
}

}  // namespace detail

double branch_inverse(const Profile& profile, Branch branch, double nu) {
  auto peak_opt = profile.peak_radius();
  if (!peak_opt)
    throw std::invalid_argument("branch_inverse: profile has no critical parallel");
  double peak = *peak_opt;
  double m_peak = profile.eval(peak, 0);
  if (!(nu > 0.0) || !(nu < m_peak))
    throw std::domain_error("branch_inverse: nu outside the branch value range");

  if (branch == Branch::increasing) {
    return detail::monotone_root(profile, nu, 0.0, peak);
  }

  double r1 = profile.second_critical_radius();
  double m_end = profile.m_end_limit();
  if (!(nu > m_end))
    throw std::domain_error("branch_inverse: nu below the decreasing branch range");
  double hi;
  if (std::isfinite(r1)) {
    hi = r1;
  } else {
    // March outward until m drops below nu; guaranteed because m tends to
    // m_end < nu along the decreasing branch.
    hi = peak + std::max(1.0, peak);
    int guard = 0;
    while (profile.eval(hi, 0) > nu) {
      hi = peak + 2.0 * (hi - peak);
      if (++guard > 400)
        throw NumericError("branch_inverse: failed to bracket eta(nu)");
    }
  }
  return detail::monotone_root(profile, nu, peak, hi);
}

ProfileFunction normalize(const ProfileFunction& profile) {
  const Profile& p = profile.ref();
  auto peak_opt = p.peak_radius();
  if (!peak_opt)
    throw std::invalid_argument("normalize: profile has no critical parallel");
  double peak = *peak_opt;
  if (p.domain() != ProfileDomain::half_line)
    throw std::invalid_argument("normalize: half-line profiles only");
  if (std::abs(peak - 1.0) <= 1e-12) return profile;

  // Flatten nested rescalings so normalize(scale(P, a)) stays a single layer.
  std::shared_ptr<const Profile> base = profile.shared();
  double lambda = peak;
  if (auto scaled = std::dynamic_pointer_cast<const ScaledProfile>(base)) {
    lambda = scaled->lambda() * peak;
    base = scaled->inner();
  }
  if (std::abs(lambda - 1.0) <= 1e-12) return ProfileFunction(base);
  return ProfileFunction(std::make_shared<ScaledProfile>(base, lambda));
}

double gaussian_curvature(const Profile& profile, double x) {
  double hi = profile.x_max();
  bool at_left_pole = (x == 0.0);
  bool at_right_pole =
      profile.domain() == ProfileDomain::sphere_interval && x == hi;
  if (!at_left_pole && !at_right_pole) {
    double m = profile.eval(x, 0);
    double m2 = profile.eval(x, 2);
    double g = -m2 / m;
    if (std::isfinite(g)) return g;
  }
  // 0/0 at a pole: one-sided extrapolation.  m is odd in the signed distance
  // s from the pole, so G = -m''/m is even and admits an expansion in s^2;
  // Neville extrapolation through four nodes h, h/2, h/4, h/8 in the
  // variable s^2 is then accurate to O(h^8).
  double sign = at_right_pole ? -1.0 : 1.0;
  double pole = at_right_pole ? hi : 0.0;
  const double h = 1e-2;
  std::array<double, 4> t2, g;
  for (int i = 0; i < 4; ++i) {
    double s = h / (1 << i);
    double xs = pole + sign * s;
    t2[i] = s * s;
    g[i] = -profile.eval(xs, 2) / profile.eval(xs, 0);
  }
  for (int level = 1; level < 4; ++level) {
    for (int i = 3; i >= level; --i) {
      g[i] = g[i] + (g[i] - g[i - 1]) * t2[i] / (t2[i - level] - t2[i]);
    }
  }
  return g[3];
}

TotalCurvatureResult total_curvature(const Profile& profile) {
  TotalCurvatureResult out;
  const double two_pi = 2.0 * kPi;
  if (profile.domain() == ProfileDomain::sphere_interval) {
    out.value = two_pi * (profile.eval(0.0, 1) - profile.eval(kPi, 1));
    double integral = 0.0;
    int panels = 256;
    for (int i = 0; i < panels; ++i) {
      double a = kPi * i / panels, b = kPi * (i + 1) / panels;
      integral += gauss16([&](double x) { return profile.eval(x, 2); }, a, b);
    }
    out.quadrature_value = -two_pi * integral;
    out.tail_bound = 0.0;
    out.cross_check_error = std::abs(out.value - out.quadrature_value);
    return out;
  }

  double mp_inf = profile.mprime_end_limit();
  out.value = two_pi * (profile.eval(0.0, 1) - mp_inf);

  // Truncate where m' has settled to its limit; the remaining tail of
  // -integral(m'') is exactly m'(X) - lim m'.  Profiles with a finite
  // evaluation horizon are truncated there and keep the larger tail bound.
  double cap = profile.eval_horizon();
  double X = std::min(50.0, cap);
  double tail = std::abs(profile.eval(X, 1) - mp_inf);
  int guard = 0;
  while (tail > 2e-6 && 2.0 * X <= cap) {
    X *= 2.0;
    if (++guard > 16 || X > 1e7)
      throw NumericError("total_curvature: m' does not approach its limit");
    tail = std::abs(profile.eval(X, 1) - mp_inf);
  }
  double integral = 0.0;
  // Panel width 0.5 keeps panel edges on the seams of piecewise families.
  int panels = static_cast<int>(std::ceil(X / 0.5));
  for (int i = 0; i < panels; ++i) {
    double a = X * i / panels, b = X * (i + 1) / panels;
    integral += gauss16([&](double x) { return profile.eval(x, 2); }, a, b);
  }
  out.tail_bound = two_pi * tail;
  out.quadrature_value = -two_pi * integral;
  out.cross_check_error = std::abs(out.value - out.quadrature_value);
  if (out.cross_check_error > out.tail_bound + 1e-3)
    throw NumericError("total_curvature: quadrature cross-check failed");
  return out;
}

}  // namespace revolve
