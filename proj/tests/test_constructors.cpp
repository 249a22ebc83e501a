#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "revolve/constructors.hpp"
#include "revolve/quadrature.hpp"

using namespace revolve;

namespace {

double one_sided_d(const Profile& p, double x, int order, int side,
                   double h) {
  double s = side * h;
  return (p.eval(x + s, order) - p.eval(x, order)) / s;
}

}  // namespace

TEST_CASE("smooth step: endpoints, monotonicity, symmetry") {
  CHECK(smooth_step(-0.5).f == 0.0);
  CHECK(smooth_step(0.0).f == 0.0);
  CHECK(smooth_step(1.0).f == 1.0);
  CHECK(smooth_step(2.0).f == 1.0);
  CHECK(smooth_step(0.5).f == doctest::Approx(0.5).epsilon(1e-14));
  double prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    double u = i / 41.0;
    Jet3 j = smooth_step(u);
    CHECK(j.f > prev);
    CHECK(j.d1 > 0.0);
    CHECK(j.f + smooth_step(1.0 - u).f == doctest::Approx(1.0).epsilon(1e-13));
    prev = j.f;
  }
}

TEST_CASE("smooth step integral has exact tails") {
  CHECK(smooth_step_integral(-1.0) == 0.0);
  CHECK(smooth_step_integral(0.0) == 0.0);
  CHECK(smooth_step_integral(1.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(smooth_step_integral(3.0) == doctest::Approx(2.5).epsilon(1e-13));
  double q = tanh_sinh([](double u, double, double) {
    return smooth_step(u).f;
  }, 0.0, 0.7, 1e-12).value;
  CHECK(smooth_step_integral(0.7) == doctest::Approx(q).epsilon(1e-11));
}

TEST_CASE("plateau mollifier: support and flat top") {
  CHECK(plateau(-1.0).f == 0.0);
  CHECK(plateau(1.2).f == 0.0);
  for (double x : {-0.5, -0.2, 0.0, 0.37, 0.5}) {
    Jet3 j = plateau(x);
    CHECK(j.f == 1.0);
    CHECK(j.d1 == 0.0);
    CHECK(j.d2 == 0.0);
  }
  CHECK(plateau(0.8).f > 0.0);
  CHECK(plateau(0.8).f < 1.0);
}

TEST_CASE("cone-opening profile agrees with the model below the junction") {
  ProfileFunction ma = make_m_alpha(0.25);
  ProfileFunction m0 = make_m0();
  double junction = std::sqrt(7.0);
  for (double x : {0.1, 0.5, 1.0, 2.0, 2.6}) {
    for (int k = 0; k <= 3; ++k) CHECK(ma.ref().eval(x, k) == m0.ref().eval(x, k));
  }
  CHECK(ma.ref().eval(junction + 2.0, 1) ==
        doctest::Approx(0.25 + m0.ref().eval(junction + 2.0, 1))
            .epsilon(1e-13));
  CHECK(ma.ref().mprime_end_limit() == 0.25);
  CHECK(ma.ref().second_critical_radius() ==
        doctest::Approx(3.050887350912336).epsilon(1e-10));
  CHECK(ma.ref().m_end_limit() ==
        doctest::Approx(0.303574586652).epsilon(1e-9));
}

TEST_CASE("bump function obeys its size contract") {
  BumpFunction b = make_bump(0.5);
  CHECK(b.oscillation_count() == 713);
  CHECK(b.frequency() == doctest::Approx(94.6729308762102).epsilon(1e-12));
  for (int i = 0; i <= 400; ++i) {
    double x = -1.0 + 2.0 * i / 400.0;
    double size = std::abs(b.eval(x, 0)) + std::abs(b.eval(x, 1)) +
                  std::abs(b.eval(x, 2));
    CHECK(size < 0.5);
  }
  CHECK(b.eval(-1.0, 0) == 0.0);
  CHECK(b.eval(1.0, 0) == 0.0);
  double K = b.frequency();
  CHECK(std::abs(b.eval(0.5, 3)) == doctest::Approx(K).epsilon(1e-6));
  CHECK(b.eval(0.5, 3) * b.eval(-0.5, 3) < 0.0);
  CHECK(K > 2.0);
}

TEST_CASE("interval amplitude constant") {
  ProfileFunction ma = make_m_alpha(0.25);
  CHECK(interval_constants(ma.ref(), 4) ==
        doctest::Approx(0.00063169681).epsilon(1e-6));
  ProfileFunction m0 = make_m0();
  CHECK_THROWS_AS(interval_constants(m0.ref(), 1), std::invalid_argument);
}

TEST_CASE("oscillating profile: structure and identity below the bumps") {
  ProfileFunction base = make_m_alpha(0.25);
  ProfileFunction osc = make_oscillating(base, 3, 29.0);
  const auto* op = dynamic_cast<const OscillatingProfile*>(&osc.ref());
  REQUIRE(op != nullptr);
  CHECK(op->start_index() == 3);
  CHECK(op->max_index() == 14);
  CHECK(op->bumps().size() == 12);
  CHECK(op->horizon() == 29.0);
  for (double x : {0.5, 2.0, 4.0, 4.99}) {
    for (int k = 0; k <= 3; ++k)
      CHECK(osc.ref().eval(x, k) == base.ref().eval(x, k));
  }
  CHECK_THROWS_AS(osc.ref().eval(29.5, 0), NumericError);
  for (const auto& spec : op->bumps()) {
    CHECK(spec.amplitude > 0.0);
    CHECK(spec.frequency ==
          doctest::Approx(std::sqrt((4.0 * spec.count + 1.0) * Profile::pi()))
              .epsilon(1e-12));
  }
}

TEST_CASE("oscillating profile is smooth across the seams") {
  ProfileFunction base = make_m_alpha(0.25);
  ProfileFunction osc = make_oscillating(base, 3, 29.0);
  double h = 1e-6;
  for (double seam : {5.0, 7.0, 9.0}) {
    for (int order = 0; order <= 2; ++order) {
      double left = one_sided_d(osc.ref(), seam, order, -1, h);
      double right = one_sided_d(osc.ref(), seam, order, +1, h);
      double scale = std::max(1.0, std::abs(left));
      CHECK(std::abs(left - right) <= 1e-3 * scale);
    }
    CHECK(osc.ref().eval(seam, 0) ==
          doctest::Approx(base.ref().eval(seam, 0)).epsilon(1e-9));
  }
}

TEST_CASE("sphere profile: boundary jets and equator radius") {
  auto sp = make_sphere_profile(0.6, 0.0);
  CHECK(sp->eval(0.0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sp->eval(0.0, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sp->eval(Profile::pi(), 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sp->eval(Profile::pi(), 1) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(sp->equator_radius() ==
        doctest::Approx(Profile::pi() / 2.0).epsilon(1e-10));

  double l0 = lambda0_bound(0.5);
  auto plus = make_sphere_profile(0.5, l0 / 2.0);
  auto minus = make_sphere_profile(0.5, -l0 / 2.0);
  CHECK(plus->equator_radius() ==
        doctest::Approx(1.5694457221609308).epsilon(1e-10));
  CHECK(minus->equator_radius() ==
        doctest::Approx(1.5721651954578468).epsilon(1e-10));
  CHECK(plus->equator_radius() != Profile::pi() / 2.0);
}

TEST_CASE("sphere curvature numerator: closed form versus direct") {
  for (double lambda : {-0.017, 0.0, 0.02, 0.1}) {
    for (int i = 1; i < 24; ++i) {
      double u = Profile::pi() * i / 24.0;
      double a = sphere_curvature_numerator(lambda, u);
      double b = sphere_curvature_numerator_direct(lambda, u);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("curvature slope numerator is one-signed below the bound") {
  double alpha = 0.5;
  double l0 = lambda0_bound(alpha);
  for (double lambda : {0.9 * l0, -0.9 * l0, l0 / 2.0}) {
    for (int i = 1; i < 48; ++i) {
      double u = Profile::pi() * i / 48.0;
      double s2u = std::sin(2.0 * u);
      if (std::abs(s2u) < 1e-3) continue;
      double P = sphere_curvature_slope_numerator(alpha, lambda, u);
      CHECK(P / s2u < 0.0);
    }
  }
}

TEST_CASE("deformation bound: frozen value and monotonicity") {
  double l0 = lambda0_bound(0.5);
  CHECK(l0 == doctest::Approx(0.034336367069045082).epsilon(1e-10));
  double g = 32.0 * l0 * std::pow(1.0 + l0, 3) + 8.0 * l0 * (1.0 + l0);
  CHECK(g == doctest::Approx(2.0 * (1.0 - 0.25)).epsilon(1e-8));
  double prev = lambda0_bound(0.05);
  for (double a : {0.2, 0.4, 0.6, 0.8, 0.95}) {
    double cur = lambda0_bound(a);
    CHECK(cur < prev);
    prev = cur;
  }
}
