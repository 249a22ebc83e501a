#include "revolve/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "revolve/gauss.hpp"

namespace revolve {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Start of the slope ramp of m_alpha; the ramp occupies [sqrt(7), sqrt(7)+1].
const double kRampStart = std::sqrt(7.0);

// Dense-grid supremum of 3 + 3|phi'| + |phi''| for the plateau mollifier;
// bounds the C^2 norm of a bump of frequency K by (this constant) / K.
double plateau_bound() {
  static const double value = [] {
    double best = 0.0;
    const int samples = 4097;
    for (int i = 0; i < samples; ++i) {
      double x = -1.0 + 2.0 * static_cast<double>(i) / (samples - 1);
      Jet3 p = plateau(x);
      best = std::max(best, 3.0 + 3.0 * std::abs(p.d1) + std::abs(p.d2));
    }
    return best;
  }();
  return value;
}

}  // namespace

Jet3 smooth_step(double u) {
  // Below 1e-6 (resp. above 1 - 1e-6) the true values are far below double
  // resolution; clamping avoids inf * 0 in the jet arithmetic.
  if (u <= 1e-6) return Jet3::constant(0.0);
  if (u >= 1.0 - 1e-6) return Jet3::constant(1.0);
  Jet3 v = Jet3::variable(u);
  Jet3 g = exp(-1.0 / v);
  Jet3 h = exp(-1.0 / (1.0 - v));
  return g / (g + h);
}

double smooth_step_integral(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return u - 0.5;
  return detail::gauss16_panels([](double t) { return smooth_step(t).f; },
                                0.0, u, 4);
}

Jet3 plateau(double x) {
  Jet3 a = smooth_step(2.0 * (x + 1.0));
  Jet3 b = smooth_step(2.0 * (1.0 - x));
  Jet3 left{a.f, 2.0 * a.d1, 4.0 * a.d2, 8.0 * a.d3};
  Jet3 right{b.f, -2.0 * b.d1, 4.0 * b.d2, -8.0 * b.d3};
  return left * right;
}

// --------------------------------------------------------------------------
// m0

double M0Profile::eval(double x, int order) const {
  require_order(order);
  require_in_domain(x);
  double q = 1.0 + x * x;
  switch (order) {
    case 0: return x / q;
    case 1: return (1.0 - x * x) / (q * q);
    case 2: return 2.0 * x * (x * x - 3.0) / (q * q * q);
    default:
      return -6.0 * (x * x * x * x - 6.0 * x * x + 1.0) / (q * q * q * q);
  }
}

ProfileFunction make_m0() {
  return ProfileFunction(std::make_shared<M0Profile>());
}

// --------------------------------------------------------------------------
// m_alpha

MAlphaProfile::MAlphaProfile(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("m_alpha: alpha must be positive");
  r1_ = detail::find_second_critical_radius(*this, 1.0);
  m_end_ = std::isfinite(r1_) ? eval(r1_, 0) : 0.0;
}

double MAlphaProfile::eval(double x, int order) const {
  require_order(order);
  require_in_domain(x);
  double q = 1.0 + x * x;
  double u = x - kRampStart;
  switch (order) {
    case 0: return x / q + alpha_ * smooth_step_integral(u);
    case 1: return (1.0 - x * x) / (q * q) + alpha_ * smooth_step(u).f;
    case 2:
      return 2.0 * x * (x * x - 3.0) / (q * q * q) +
             alpha_ * smooth_step(u).d1;
    default:
      return -6.0 * (x * x * x * x - 6.0 * x * x + 1.0) / (q * q * q * q) +
             alpha_ * smooth_step(u).d2;
  }
}

ProfileFunction make_m_alpha(double alpha) {
  return ProfileFunction(std::make_shared<MAlphaProfile>(alpha));
}

// --------------------------------------------------------------------------
// Bumps

BumpFunction::BumpFunction(double eps) : eps_(eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("bump: eps must be positive");
  const double target = plateau_bound() / eps;  // need K > target
  // K = sqrt((4k+1) pi) > target  <=>  k > (target^2 / pi - 1) / 4
  const double kf = (target * target / kPi - 1.0) / 4.0;
  if (!(kf < 4.0e18))
    throw NumericError("bump: oscillation count for eps = " +
                       std::to_string(eps) + " exceeds the integer range");
  std::int64_t k = kf < 1.0 ? 1 : static_cast<std::int64_t>(kf) + 1;
  while (std::sqrt((4.0 * static_cast<double>(k) + 1.0) * kPi) <= target) ++k;
  k_ = k;
  frequency_ = std::sqrt((4.0 * static_cast<double>(k) + 1.0) * kPi);
}

double BumpFunction::eval(double x, int order) const {
  if (order < 0 || order > 3)
    throw std::invalid_argument("bump eval: derivative order must be 0..3");
  if (x <= -1.0 || x >= 1.0) return 0.0;
  const double K = frequency_;
  const double K2 = K * K, K3 = K2 * K, K5 = K2 * K3;
  Jet3 p = plateau(x);
  double c = std::cos(K2 * x), s = std::sin(K2 * x);
  switch (order) {
    case 0: return p.f * c / K5;
    case 1: return p.d1 * c / K5 - p.f * s / K3;
    case 2: return p.d2 * c / K5 - 2.0 * p.d1 * s / K3 - p.f * c / K;
    default:
      return p.d3 * c / K5 - 3.0 * p.d2 * s / K3 - 3.0 * p.d1 * c / K +
             p.f * s * K;
  }
}

BumpFunction make_bump(double eps) { return BumpFunction(eps); }

double interval_constants(const Profile& base, int n) {
  if (n < 1)
    throw std::invalid_argument("interval_constants: n must be at least 1");
  const double lo = 2.0 * n - 1.0, hi = 2.0 * n + 1.0;
  const int samples = 4097;
  double a_n = kInf, norm2 = 0.0, ratio1 = 0.0, ratio2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    double m = base.eval(x, 0);
    double m1 = base.eval(x, 1);
    double m2 = base.eval(x, 2);
    double m3 = base.eval(x, 3);
    if (!(m > 0.0))
      throw std::invalid_argument(
          "interval_constants: profile must be positive on the interval");
    a_n = std::min(a_n, m2);
    norm2 = std::max(norm2, std::abs(m) + std::abs(m1) + std::abs(m2));
    double q1 = m1 / m, q2 = m2 / m;
    ratio1 = std::max(ratio1, std::abs(q1) + std::abs(q2 - q1 * q1));
    ratio2 = std::max(ratio2, std::abs(q2) + std::abs(m3 / m - q2 * q1));
  }
  if (!(a_n > 0.0))
    throw std::invalid_argument(
        "interval_constants: second derivative must be positive on interval " +
        std::to_string(n));
  double t1 = a_n / (2.0 * norm2);
  double t2 = 1.0 / (3.0 * (1.0 + 4.0 * ratio1 + ratio2));
  double t3 = 1.0 / (static_cast<double>(n) * static_cast<double>(n) * norm2);
  return 0.9 * std::min({t1, t2, t3});
}

// --------------------------------------------------------------------------
// Oscillating profiles

OscillatingProfile::OscillatingProfile(std::shared_ptr<const Profile> base,
                                       int n0, double x_max)
    : base_(std::move(base)), n0_(n0) {
  if (!base_) throw std::invalid_argument("oscillating profile: null base");
  if (base_->domain() != ProfileDomain::half_line)
    throw std::invalid_argument(
        "oscillating profile: base must live on the half line");
  if (n0_ < 1)
    throw std::invalid_argument(
        "oscillating profile: start index must be at least 1");
  if (!(x_max >= 2.0 * n0_ + 1.0))
    throw std::invalid_argument(
        "oscillating profile: x_max leaves no room for a bump");
  if (!(base_->mprime_end_limit() >= 0.0))
    throw std::invalid_argument(
        "oscillating profile: base slope limit must be nonnegative");

  n_max_ = static_cast<int>(std::floor((x_max - 1.0) / 2.0));
  horizon_ = 2.0 * n_max_ + 1.0;
  specs_.reserve(static_cast<std::size_t>(n_max_ - n0_ + 1));
  bumps_.reserve(static_cast<std::size_t>(n_max_ - n0_ + 1));
  for (int n = n0_; n <= n_max_; ++n) {
    double c = interval_constants(*base_, n);
    BumpFunction bump(c);
    specs_.push_back({n, c, bump.oscillation_count(), bump.frequency()});
    bumps_.push_back(bump);
  }

  if (base_->peak_radius()) {
    double b1 = base_->second_critical_radius();
    r1_ = b1;
    m_end_ = base_->m_end_limit();
    if (std::isfinite(b1) && b1 >= 2.0 * n0_ - 1.0 && b1 <= horizon_) {
      // The bumps move the zero of m' by a sub-1e-9 amount; re-bisect in a
      // small bracket around the base value.
      double lo = std::max(*base_->peak_radius(), b1 - 1e-3);
      double hi = std::min(horizon_, b1 + 1e-3);
      if (eval(lo, 1) < 0.0 && eval(hi, 1) >= 0.0) {
        for (int i = 0; i < 100; ++i) {
          double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          if (eval(mid, 1) < 0.0)
            lo = mid;
          else
            hi = mid;
        }
        r1_ = 0.5 * (lo + hi);
      }
      m_end_ = eval(*r1_, 0);
    }
  }
}

double OscillatingProfile::eval(double x, int order) const {
  require_order(order);
  require_in_domain(x);
  long n = std::lround(0.5 * x);
  if (n < n0_) return base_->eval(x, order);
  if (x > horizon_)
    throw NumericError("oscillating profile: x = " + std::to_string(x) +
                       " lies past the materialized bump horizon " +
                       std::to_string(horizon_));
  if (n > n_max_) return base_->eval(x, order);
  const BumpFunction& bump = bumps_[static_cast<std::size_t>(n - n0_)];
  double u = x - 2.0 * static_cast<double>(n);
  double f[4] = {bump.eval(u, 0), 0.0, 0.0, 0.0};
  double m[4] = {base_->eval(x, 0), 0.0, 0.0, 0.0};
  for (int j = 1; j <= order; ++j) {
    f[j] = bump.eval(u, j);
    m[j] = base_->eval(x, j);
  }
  switch (order) {
    case 0: return m[0] * (1.0 + f[0]);
    case 1: return m[1] * (1.0 + f[0]) + m[0] * f[1];
    case 2:
      return m[2] * (1.0 + f[0]) + 2.0 * m[1] * f[1] + m[0] * f[2];
    default:
      return m[3] * (1.0 + f[0]) + 3.0 * m[2] * f[1] + 3.0 * m[1] * f[2] +
             m[0] * f[3];
  }
}

std::optional<double> OscillatingProfile::peak_radius() const {
  return base_->peak_radius();
}

double OscillatingProfile::second_critical_radius() const {
  if (r1_) return *r1_;
  return base_->second_critical_radius();
}

double OscillatingProfile::m_end_limit() const {
  if (r1_) return m_end_;
  return base_->m_end_limit();
}

double OscillatingProfile::mprime_end_limit() const {
  return base_->mprime_end_limit();
}

ProfileFunction make_oscillating(ProfileFunction base, int n0, double x_max) {
  return ProfileFunction(
      std::make_shared<OscillatingProfile>(base.shared(), n0, x_max));
}

// --------------------------------------------------------------------------
// Sphere profiles

namespace {

// Derivatives of the generating curve with respect to the parameter u.
struct Curve {
  double x1, x2, x3;
  double y1, y2, y3;
  double S, S1;  // S = x1^2 + y1^2 and dS/du
};

Curve curve_derivs(double alpha, double lambda, double u) {
  double s = std::sin(u), c = std::cos(u);
  double a = 1.0 + lambda * (1.0 - c * c * c / 3.0);  // 1 + F'(cos u)
  Curve d;
  d.x1 = -s * a;
  d.x2 = -c * a - lambda * s * s * c * c;
  d.x3 = (1.0 + lambda) * s - (10.0 / 3.0) * lambda * s * c * c * c +
         2.0 * lambda * s * s * s * c;
  d.y1 = alpha * c;
  d.y2 = -alpha * s;
  d.y3 = -alpha * c;
  d.S = d.x1 * d.x1 + d.y1 * d.y1;
  d.S1 = 2.0 * (d.x1 * d.x2 + d.y1 * d.y2);
  return d;
}

}  // namespace

SphereProfile::SphereProfile(double alpha, double lambda) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("sphere profile: alpha must lie in (0, 1)");
  if (!(lambda > -1.0))
    throw std::invalid_argument("sphere profile: lambda must exceed -1");
  data_.alpha = alpha;
  data_.lambda = lambda;

  auto speed = [alpha, lambda](double u) {
    return std::sqrt(curve_derivs(alpha, lambda, u).S);
  };

  double min_s = kInf;
  for (int i = 0; i < 4097; ++i) {
    double u = kPi * static_cast<double>(i) / 4096.0;
    min_s = std::min(min_s, curve_derivs(alpha, lambda, u).S);
  }
  if (!(min_s > 1e-12))
    throw NumericError("sphere profile: generating curve velocity vanishes");

  const int panels = 2048;
  data_.u_nodes.resize(panels + 1);
  data_.arclength.resize(panels + 1);
  for (int i = 0; i <= panels; ++i)
    data_.u_nodes[i] = kPi * static_cast<double>(i) / panels;

  std::vector<long double> raw(panels + 1, 0.0L);
  long double acc = 0.0L;
  for (int i = 0; i < panels; ++i) {
    acc += detail::gauss16(speed, data_.u_nodes[i], data_.u_nodes[i + 1]);
    raw[static_cast<std::size_t>(i) + 1] = acc;
  }
  data_.length_factor = static_cast<double>(kPi / acc);
  for (int i = 0; i <= panels; ++i) {
    data_.arclength[i] =
        static_cast<double>(kPi / acc * raw[static_cast<std::size_t>(i)]);
  }
  data_.equator_radius = data_.arclength[panels / 2];
}

double SphereProfile::arclength_of(int panel, double u) const {
  auto speed = [this](double t) {
    return std::sqrt(curve_derivs(data_.alpha, data_.lambda, t).S);
  };
  return data_.arclength[static_cast<std::size_t>(panel)] +
         data_.length_factor *
             detail::gauss16(speed, data_.u_nodes[static_cast<std::size_t>(panel)], u);
}

double SphereProfile::parameter_of_radius(double r) const {
  const auto& un = data_.u_nodes;
  const auto& ar = data_.arclength;
  if (r <= 0.0) return 0.0;
  if (r >= ar.back()) return kPi;
  auto it = std::upper_bound(ar.begin(), ar.end(), r);
  int i = static_cast<int>(it - ar.begin()) - 1;
  i = std::clamp(i, 0, static_cast<int>(ar.size()) - 2);

  auto du_dr = [this](double u) {
    return 1.0 / (data_.length_factor *
                  std::sqrt(curve_derivs(data_.alpha, data_.lambda, u).S));
  };
  double h = ar[i + 1] - ar[i];
  double t = (r - ar[i]) / h;
  double d0 = du_dr(un[i]) * h, d1 = du_dr(un[i + 1]) * h;
  double t2 = t * t, t3 = t2 * t;
  double u = (2.0 * t3 - 3.0 * t2 + 1.0) * un[i] + (t3 - 2.0 * t2 + t) * d0 +
             (-2.0 * t3 + 3.0 * t2) * un[i + 1] + (t3 - t2) * d1;
  for (int step = 0; step < 3; ++step) {
    double r_of_u = arclength_of(i, u);
    u -= (r_of_u - r) * du_dr(u);
    u = std::clamp(u, 0.0, kPi);
  }
  return u;
}

double SphereProfile::eval(double x, int order) const {
  require_order(order);
  require_in_domain(x);
  double u = parameter_of_radius(x);
  double l = data_.length_factor;
  if (order == 0) return l * data_.alpha * std::sin(u);
  Curve d = curve_derivs(data_.alpha, data_.lambda, u);
  if (order == 1) return d.y1 / std::sqrt(d.S);
  double num = d.x1 * (d.x1 * d.y2 - d.x2 * d.y1);
  if (order == 2) return num / (l * d.S * d.S);
  double num1 = d.x2 * (d.x1 * d.y2 - d.x2 * d.y1) +
                d.x1 * (d.x1 * d.y3 - d.x3 * d.y1);
  return (num1 * d.S - 2.0 * num * d.S1) /
         (l * l * d.S * d.S * d.S * std::sqrt(d.S));
}

std::shared_ptr<const SphereProfile> make_sphere_profile(double alpha,
                                                         double lambda) {
  return std::make_shared<SphereProfile>(alpha, lambda);
}

double sphere_curvature_numerator(double lambda, double u) {
  double c = std::cos(u);
  double s2 = std::sin(2.0 * u);
  double a = 1.0 + lambda * (1.0 - c * c * c / 3.0);
  return a * a + lambda * c * s2 * s2 * a / 4.0;
}

double sphere_curvature_numerator_direct(double lambda, double u) {
  Curve d = curve_derivs(1.0, lambda, u);
  return -d.x1 * (d.x1 * d.y2 - d.x2 * d.y1) / std::sin(u);
}

double sphere_curvature_slope_numerator(double alpha, double lambda,
                                        double u) {
  double s = std::sin(u), c = std::cos(u);
  double s2 = std::sin(2.0 * u), c2 = std::cos(2.0 * u);
  double a = 1.0 + lambda * (1.0 - c * c * c / 3.0);
  double a1 = lambda * c * c * s;  // dA/du
  double q = a * a + lambda * c * s2 * s2 * a / 4.0;
  double q1 = 2.0 * a * a1 +
              lambda / 4.0 *
                  ((-s * s2 * s2 + 4.0 * c * s2 * c2) * a + c * s2 * s2 * a1);
  Curve d = curve_derivs(alpha, lambda, u);
  return q1 * d.S - 2.0 * q * d.S1;
}

double lambda0_bound(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("lambda0_bound: alpha must lie in (0, 1)");
  const double rhs = 2.0 * (1.0 - alpha * alpha);
  auto lhs = [](double l) {
    double p = 1.0 + l;
    return 32.0 * l * p * p * p + 8.0 * l * p;
  };
  double lo = 0.0, hi = 1.0;  // lhs(1) = 272 > rhs < 2 always
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (lhs(mid) < rhs)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace revolve
