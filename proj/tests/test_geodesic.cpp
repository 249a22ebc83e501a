#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "revolve/constructors.hpp"
#include "revolve/geodesic.hpp"
#include "revolve/quadrature.hpp"

using namespace revolve;

namespace {

// Radius at the first sign change of r' after t_lo, located by bisection on
// full re-shoots; the path's endpoint state is exact at the requested length.
double turning_radius(const Profile& p, double r0, double sigma, double t_lo,
                      double t_hi) {
  auto rp_at = [&](double t) {
    return shoot(p, r0, 0.0, sigma, t).samples.back().rprime;
  };
  double lo = t_lo, hi = t_hi;
  double f_lo = rp_at(lo);
  REQUIRE(f_lo * rp_at(hi) < 0.0);
  for (int i = 0; i < 60 && hi - lo > 1e-13; ++i) {
    double mid = 0.5 * (lo + hi);
    if (rp_at(mid) * f_lo > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return shoot(p, r0, 0.0, sigma, 0.5 * (lo + hi)).samples.back().r;
}

}  // namespace

TEST_CASE("round sphere: equator geodesic and its conjugate point") {
  ProfileFunction sph = make_round_sphere();
  double half_pi = Profile::pi() / 2.0;
  auto path = shoot(sph.ref(), half_pi, 0.0, half_pi, 2.0);
  CHECK(path.nu == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& s : path.samples) {
    CHECK(std::abs(s.r - half_pi) <= 1e-9);
    CHECK(std::abs(s.theta - s.t) <= 1e-9);
  }
  auto conj = conjugate_point_jacobi(sph.ref(), shoot(sph.ref(), half_pi, 0.0,
                                                      half_pi, 4.0));
  REQUIRE(conj.has_value());
  CHECK(std::abs(conj->t - Profile::pi()) <= 1e-9);
  CHECK(std::abs(conj->r - half_pi) <= 1e-7);
}

TEST_CASE("meridians keep theta constant and hit the pole") {
  ProfileFunction m0 = make_m0();
  auto out = shoot(m0.ref(), 2.0, 0.3, 0.0, 5.0);
  CHECK(out.nu == 0.0);
  for (const auto& s : out.samples) CHECK(s.theta == 0.3);
  CHECK(!out.pole_hit);
  CHECK(out.samples.back().r == doctest::Approx(7.0).epsilon(1e-9));

  auto in = shoot(m0.ref(), 2.0, 0.0, Profile::pi(), 5.0);
  CHECK(in.pole_hit);
  CHECK(in.pole_time == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("shoot validates its inputs") {
  ProfileFunction m0 = make_m0();
  CHECK_THROWS_AS(shoot(m0.ref(), -1.0, 0.0, 0.5, 1.0), std::exception);
  CHECK_THROWS_AS(shoot(m0.ref(), 2.0, 0.0, 4.0, 1.0), std::exception);
}

TEST_CASE("turning radii agree with the branch inverses") {
  ProfileFunction m0 = make_m0();
  double nu = 0.3;
  double m2 = m0(2.0);

  double sigma_in = Profile::pi() - std::asin(nu / m2);
  double xi = branch_inverse(m0.ref(), Branch::increasing, nu);
  CHECK(std::abs(turning_radius(m0.ref(), 2.0, sigma_in, 0.5, 3.5) - xi) <=
        1e-6);

  double sigma_out = std::asin(nu / m2);
  double eta = branch_inverse(m0.ref(), Branch::decreasing, nu);
  CHECK(std::abs(turning_radius(m0.ref(), 2.0, sigma_out, 0.5, 6.0) - eta) <=
        1e-6);
}

TEST_CASE("Clairaut constant is conserved along sampled paths") {
  ProfileFunction ma = make_m_alpha(0.3);
  for (double sigma : {0.4, 1.2, 2.0, 2.9}) {
    auto path = shoot(ma.ref(), 1.7, 0.0, sigma, 6.0);
    CHECK(path.max_speed_defect <= 1e-7);
    for (const auto& s : path.samples) {
      double m = ma(s.r);
      double imputed =
          m * std::sqrt(std::max(0.0, 1.0 - s.rprime * s.rprime));
      CHECK(std::abs(imputed - std::abs(path.nu)) <= 1e-7);
    }
  }
}

TEST_CASE("longitude offset shifts paths rigidly") {
  ProfileFunction m0 = make_m0();
  auto a = shoot(m0.ref(), 1.5, 0.0, 0.8, 4.0);
  auto b = shoot(m0.ref(), 1.5, 0.5, 0.8, 4.0);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].r == b.samples[i].r);
    CHECK(std::abs(b.samples[i].theta - a.samples[i].theta - 0.5) <= 1e-12);
  }
}

TEST_CASE("round-sphere half-periods are exactly pi") {
  ProfileFunction sph = make_round_sphere();
  for (double nu : {0.1, 0.5, 0.9}) {
    auto hp = half_periods(sph.ref(), nu);
    CHECK(std::abs(hp.phi - Profile::pi()) <= 1e-9);
    REQUIRE(hp.psi.has_value());
    CHECK(std::abs(*hp.psi - Profile::pi()) <= 1e-9);
  }
}

TEST_CASE("model-profile half-periods match frozen quadrature values") {
  ProfileFunction m0 = make_m0();
  auto hp1 = half_periods(m0.ref(), 0.1);
  CHECK(hp1.phi == doctest::Approx(3.411529721973629).epsilon(1e-10));
  REQUIRE(hp1.psi.has_value());
  CHECK(*hp1.psi == doctest::Approx(159.95128826469596).epsilon(1e-9));

  auto hp3 = half_periods(m0.ref(), 0.3);
  CHECK(hp3.phi == doctest::Approx(4.049932146885816).epsilon(1e-10));
  REQUIRE(hp3.psi.has_value());
  CHECK(*hp3.psi == doctest::Approx(19.686545680236875).epsilon(1e-9));

  CHECK(half_period_derivative(m0.ref(), HalfPeriodKind::phi, 0.1) ==
        doctest::Approx(2.766224441600559).epsilon(1e-6));
  CHECK(half_period_derivative(m0.ref(), HalfPeriodKind::psi, 0.1) ==
        doctest::Approx(-3144.3590776436954).epsilon(1e-6));
}

TEST_CASE("psi exists only past the end value of m") {
  ProfileFunction ma = make_m_alpha(0.25);
  double m_end = ma.ref().m_end_limit();
  REQUIRE(m_end > 0.28);
  auto below = half_periods(ma.ref(), 0.28);
  CHECK(!below.psi.has_value());
  auto above = half_periods(ma.ref(), 0.5 * (m_end + ma(1.0)));
  CHECK(above.psi.has_value());
}

TEST_CASE("half-period table matches pointwise evaluation") {
  ProfileFunction m0 = make_m0();
  std::vector<double> nus{0.15, 0.3, 0.45};
  auto table = half_period_table(m0.ref(), nus, true);
  REQUIRE(table.size() == nus.size());
  for (std::size_t i = 0; i < nus.size(); ++i) {
    auto hp = half_periods(m0.ref(), nus[i]);
    CHECK(table[i].nu == nus[i]);
    CHECK(table[i].phi == doctest::Approx(hp.phi).epsilon(1e-12));
    REQUIRE(table[i].phi_prime.has_value());
    REQUIRE(table[i].psi_prime.has_value());
    CHECK(*table[i].phi_prime > 0.0);
    CHECK(*table[i].psi_prime < 0.0);
  }
}

TEST_CASE("conjugate heights: tangent endpoints and Jacobi cross-check") {
  ProfileFunction m0 = make_m0();
  CHECK(conjugate_height(m0.ref(), 0.4, 2.0) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(conjugate_height_beta(m0.ref(), 0.4, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-6));

  double nu0 = 0.2, t = 1.5;
  double h = conjugate_height(m0.ref(), nu0, t);
  double sigma = Profile::pi() - std::asin(nu0 / m0(t));
  auto conj = conjugate_point_jacobi(m0.ref(), shoot(m0.ref(), t, 0.0, sigma,
                                                     8.0));
  REQUIRE(conj.has_value());
  CHECK(std::abs(conj->r - h) <= 1e-7);
}

TEST_CASE("sweep through the conjugate pair stays above pi") {
  ProfileFunction m0 = make_m0();
  auto sweep = conjugate_sweep(m0.ref(), 0.3, 1.5);
  REQUIRE(sweep.h_gamma.has_value());
  REQUIRE(sweep.phi_at_conjugate.has_value());
  CHECK(*sweep.phi_at_conjugate >= Profile::pi() - 1e-6);
}
