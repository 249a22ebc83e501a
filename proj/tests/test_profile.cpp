#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "revolve/constructors.hpp"
#include "revolve/profile.hpp"

using namespace revolve;

namespace {

// Closed forms for m0(x) = x / (1 + x^2), written out independently of the
// implementation.
double m0_v(double x) { return x / (1.0 + x * x); }
double m0_d1(double x) {
  double q = 1.0 + x * x;
  return (1.0 - x * x) / (q * q);
}
double m0_d2(double x) {
  double q = 1.0 + x * x;
  return 2.0 * x * (x * x - 3.0) / (q * q * q);
}
double m0_d3(double x) {
  double q = 1.0 + x * x;
  return -6.0 * (x * x * x * x - 6.0 * x * x + 1.0) / (q * q * q * q);
}

}  // namespace

TEST_CASE("model profile matches its closed forms") {
  ProfileFunction p = make_m0();
  for (double x : {0.0, 0.3, 1.0, 1.7320508075688772, 2.5, 7.0, 40.0}) {
    CHECK(p(x, 0) == doctest::Approx(m0_v(x)).epsilon(1e-14));
    CHECK(p(x, 1) == doctest::Approx(m0_d1(x)).epsilon(1e-14));
    CHECK(p(x, 2) == doctest::Approx(m0_d2(x)).epsilon(1e-13));
    CHECK(p(x, 3) == doctest::Approx(m0_d3(x)).epsilon(1e-13));
  }
  CHECK(p.ref().peak_radius() == 1.0);
  CHECK(std::isinf(p.ref().second_critical_radius()));
  CHECK(p.ref().m_end_limit() == 0.0);
  CHECK(p.ref().mprime_end_limit() == 0.0);
}

TEST_CASE("flat plane and round sphere profiles") {
  ProfileFunction flat = make_euclidean();
  CHECK(flat(2.7, 0) == 2.7);
  CHECK(flat(2.7, 1) == 1.0);
  CHECK(flat(2.7, 2) == 0.0);
  CHECK(!flat.ref().peak_radius().has_value());
  CHECK(flat.ref().domain() == ProfileDomain::half_line);

  ProfileFunction sph = make_round_sphere();
  CHECK(sph(1.1, 0) == doctest::Approx(std::sin(1.1)).epsilon(1e-15));
  CHECK(sph(1.1, 1) == doctest::Approx(std::cos(1.1)).epsilon(1e-15));
  CHECK(sph(1.1, 2) == doctest::Approx(-std::sin(1.1)).epsilon(1e-15));
  CHECK(sph(1.1, 3) == doctest::Approx(-std::cos(1.1)).epsilon(1e-15));
  CHECK(sph.ref().domain() == ProfileDomain::sphere_interval);
  CHECK(*sph.ref().peak_radius() == doctest::Approx(Profile::pi() / 2));
  CHECK(sph.ref().second_critical_radius() == doctest::Approx(Profile::pi()));
}

TEST_CASE("domain and order violations throw") {
  ProfileFunction p = make_m0();
  CHECK_THROWS_AS(p(-0.1, 0), std::domain_error);
  CHECK_THROWS_AS(p(1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(p(1.0, -1), std::invalid_argument);
  ProfileFunction sph = make_round_sphere();
  CHECK_THROWS_AS(sph(3.3, 0), std::domain_error);
  CHECK_THROWS_AS(ProfileFunction{}(1.0), std::logic_error);
}

TEST_CASE("branch inverses round-trip both monotone branches") {
  std::mt19937_64 rng(20240817);
  ProfileFunction m0 = make_m0();
  ProfileFunction ma = make_m_alpha(0.3);
  double r1 = ma.ref().second_critical_radius();
  REQUIRE(std::isfinite(r1));

  std::uniform_real_distribution<double> inc(0.01, 0.99);
  for (int i = 0; i < 250; ++i) {
    double x = inc(rng);
    double nu = m0(x);
    CHECK(std::abs(branch_inverse(m0.ref(), Branch::increasing, nu) - x) <=
          1e-10);
    double y = inc(rng) * 0.98 + 0.01;
    CHECK(std::abs(branch_inverse(ma.ref(), Branch::increasing, ma(y)) - y) <=
          1e-10);
  }
  std::uniform_real_distribution<double> dec_m0(1.05, 35.0);
  std::uniform_real_distribution<double> dec_ma(1.05, r1 - 0.05);
  for (int i = 0; i < 250; ++i) {
    double x = dec_m0(rng);
    CHECK(std::abs(branch_inverse(m0.ref(), Branch::decreasing, m0(x)) - x) <=
          1e-10 * std::max(1.0, x));
    double y = dec_ma(rng);
    CHECK(std::abs(branch_inverse(ma.ref(), Branch::decreasing, ma(y)) - y) <=
          1e-10);
  }
}

TEST_CASE("branch inverse rejects peakless profiles and out-of-range values") {
  ProfileFunction flat = make_euclidean();
  CHECK_THROWS_AS(branch_inverse(flat.ref(), Branch::increasing, 0.5),
                  std::invalid_argument);
  ProfileFunction m0 = make_m0();
  CHECK_THROWS_AS(branch_inverse(m0.ref(), Branch::increasing, 0.7),
                  std::domain_error);
}

TEST_CASE("normalize moves the peak to radius 1 and is idempotent") {
  ProfileFunction m0 = make_m0();
  CHECK(normalize(m0).shared().get() == m0.shared().get());

  auto scaled = ProfileFunction(
      std::make_shared<ScaledProfile>(m0.shared(), 2.0));
  CHECK(*scaled.ref().peak_radius() == doctest::Approx(0.5).epsilon(1e-14));
  ProfileFunction n = normalize(scaled);
  CHECK(*n.ref().peak_radius() == doctest::Approx(1.0).epsilon(1e-12));
  for (double x : {0.2, 0.9, 1.8, 6.0})
    CHECK(n(x) == doctest::Approx(m0(x)).epsilon(1e-13));
  ProfileFunction nn = normalize(n);
  for (double x : {0.2, 0.9, 1.8, 6.0})
    CHECK(nn(x) == n(x));

  CHECK_THROWS_AS(normalize(make_euclidean()), std::invalid_argument);
}

TEST_CASE("scaled profile is a homothety of the inner one") {
  ProfileFunction m0 = make_m0();
  auto s = ProfileFunction(std::make_shared<ScaledProfile>(m0.shared(), 2.0));
  for (double x : {0.1, 0.45, 1.3, 4.0}) {
    CHECK(s(x, 0) == doctest::Approx(m0(2.0 * x) / 2.0).epsilon(1e-14));
    CHECK(s(x, 1) == doctest::Approx(m0(2.0 * x, 1)).epsilon(1e-14));
    CHECK(s(x, 2) == doctest::Approx(2.0 * m0(2.0 * x, 2)).epsilon(1e-14));
  }
}

TEST_CASE("gaussian curvature: closed form, poles, and difference check") {
  ProfileFunction m0 = make_m0();
  for (double x : {0.3, 1.0, 1.7320508075688772, 3.0, 8.0}) {
    double q = 1.0 + x * x;
    double want = 2.0 * (3.0 - x * x) / (q * q);
    CHECK(gaussian_curvature(m0.ref(), x) ==
          doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(gaussian_curvature(m0.ref(), 0.0) == doctest::Approx(6.0).epsilon(1e-8));

  ProfileFunction sph = make_round_sphere();
  for (double x : {0.0, 0.4, Profile::pi() / 2, Profile::pi() - 1e-3,
                   Profile::pi()})
    CHECK(gaussian_curvature(sph.ref(), x) ==
          doctest::Approx(1.0).epsilon(1e-8));

  ProfileFunction ma = make_m_alpha(0.4);
  for (int i = 0; i <= 20; ++i) {
    double x = 0.5 + 2.5 * i / 20.0;
    double h = 1e-4;
    double d2 = (ma(x + h) - 2.0 * ma(x) + ma(x - h)) / (h * h);
    double est = -d2 / ma(x);
    CHECK(gaussian_curvature(ma.ref(), x) ==
          doctest::Approx(est).epsilon(1e-5));
  }
}

TEST_CASE("total curvature equals the slope-defect closed form") {
  auto tc0 = total_curvature(make_m0().ref());
  CHECK(tc0.value == doctest::Approx(2.0 * Profile::pi()).epsilon(1e-12));
  CHECK(tc0.cross_check_error <= 1e-4);

  auto tca = total_curvature(make_m_alpha(0.25).ref());
  CHECK(tca.value ==
        doctest::Approx(2.0 * Profile::pi() * 0.75).epsilon(1e-12));
  CHECK(tca.cross_check_error <= 1e-4);

  auto tcs = total_curvature(make_round_sphere().ref());
  CHECK(tcs.value == doctest::Approx(4.0 * Profile::pi()).epsilon(1e-10));
}
