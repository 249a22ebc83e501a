#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "revolve/constructors.hpp"
#include "revolve/cutlocus.hpp"

using namespace revolve;

namespace {

const CutPoint& closest_by_r(const CutLocusResult& locus, double r_ref) {
  REQUIRE(!locus.points.empty());
  const CutPoint* best = &locus.points.front();
  for (const auto& p : locus.points)
    if (std::abs(p.r - r_ref) < std::abs(best->r - r_ref)) best = &p;
  return *best;
}

double sphere_distance(double r1, double t1, double r2, double t2) {
  double c = std::cos(r1) * std::cos(r2) +
             std::sin(r1) * std::sin(r2) * std::cos(t1 - t2);
  return std::acos(std::min(1.0, std::max(-1.0, c)));
}

}  // namespace

TEST_CASE("round sphere: cut at the antipode") {
  SurfaceOfRevolution s{make_round_sphere()};
  auto ct = cut_time(s, 0.7, 0.9);
  REQUIRE(ct.has_value());
  CHECK(std::abs(*ct - Profile::pi()) <= 1e-8);

  CutSearchOptions opt;
  opt.fan_size = 64;
  auto locus = cut_locus(s, 0.7, opt);
  CHECK(locus.kind == CutLocusKind::single_point);
  REQUIRE(!locus.points.empty());
  for (const auto& p : locus.points) {
    CHECK(std::abs(p.r - (Profile::pi() - 0.7)) <= 1e-5);
    CHECK(std::abs(p.theta - Profile::pi()) <= 1e-5);
    CHECK(std::abs(p.t - Profile::pi()) <= 1e-5);
  }
}

TEST_CASE("flat plane: no geodesic ever stops minimizing") {
  SurfaceOfRevolution s{make_euclidean()};
  CHECK(!cut_time(s, 2.0, 1.0).has_value());
  CutSearchOptions opt;
  opt.fan_size = 64;
  auto locus = cut_locus(s, 2.0, opt);
  CHECK(locus.kind == CutLocusKind::empty);
  CHECK(locus.points.empty());
  CHECK(locus.horizon > 0.0);
}

TEST_CASE("model profile: cut locus is a subarc of the opposite meridian") {
  SurfaceOfRevolution s{make_m0()};
  CutSearchOptions opt;
  opt.fan_size = 96;
  auto locus = cut_locus(s, 2.0, opt);
  CHECK(locus.kind == CutLocusKind::opposite_meridian_subarc);
  REQUIRE(locus.points.size() > 10);
  for (const auto& p : locus.points) {
    CHECK(std::abs(p.theta - Profile::pi()) <= 1e-3);
    CHECK(p.t > 0.0);
  }
  CHECK(locus.extent_r_min < 0.2);
  CHECK(locus.extent_r_max > 7.0);
}

TEST_CASE("model profile: frozen fan rows") {
  SurfaceOfRevolution s{make_m0()};
  CutSearchOptions opt;
  opt.fan_size = 32;
  auto locus = cut_locus(s, 2.0, opt);
  REQUIRE(locus.kind == CutLocusKind::opposite_meridian_subarc);

  const auto& outer = closest_by_r(locus, 7.661202);
  CHECK(outer.r == doctest::Approx(7.661202).epsilon(1e-5));
  CHECK(outer.t == doctest::Approx(5.692143).epsilon(1e-5));
  CHECK(outer.nu == doctest::Approx(0.0196).epsilon(5e-2));

  const auto& mid = closest_by_r(locus, 3.267440);
  CHECK(mid.r == doctest::Approx(3.267440).epsilon(1e-5));
  CHECK(mid.t == doctest::Approx(1.633742).epsilon(1e-5));
  CHECK(mid.nu == doctest::Approx(0.2057).epsilon(5e-2));

  const auto& inner = closest_by_r(locus, 0.154789);
  CHECK(inner.r == doctest::Approx(0.154789).epsilon(1e-4));
  CHECK(inner.t == doctest::Approx(2.154787).epsilon(1e-5));

  double t_min = locus.points.front().t;
  double nu_at_min = locus.points.front().nu;
  for (const auto& p : locus.points)
    if (p.t < t_min) {
      t_min = p.t;
      nu_at_min = p.nu;
    }
  CHECK(t_min == doctest::Approx(1.2288).epsilon(2e-4));
  CHECK(std::abs(nu_at_min) == doctest::Approx(0.3766).epsilon(1e-2));
}

TEST_CASE("vertex of the model profile sees no cut") {
  SurfaceOfRevolution s{make_m0()};
  CutSearchOptions opt;
  opt.fan_size = 48;
  auto locus = cut_locus(s, 0.0, opt);
  CHECK(locus.kind == CutLocusKind::empty);
  CHECK(locus.points.empty());
}

TEST_CASE("cut time is mirror symmetric in the initial angle") {
  SurfaceOfRevolution s{make_m0()};
  auto plus = cut_time(s, 2.0, 0.7);
  auto minus = cut_time(s, 2.0, -0.7);
  REQUIRE(plus.has_value());
  REQUIRE(minus.has_value());
  CHECK(*plus == *minus);
  CHECK(*plus == doctest::Approx(1.436122116333).epsilon(1e-6));
}

TEST_CASE("distance on the model profile behaves like a metric") {
  SurfaceOfRevolution s{make_m0()};
  double dpq = distance(s, 2.0, 0.0, 1.0, 1.0);
  CHECK(dpq == doctest::Approx(1.098491453).epsilon(1e-4));

  double dqp = distance(s, 1.0, 1.0, 2.0, 0.0);
  CHECK(std::abs(dpq - dqp) <= 2e-4);

  double drefl = distance(s, 2.0, 0.0, 1.0, -1.0);
  CHECK(std::abs(dpq - drefl) <= 1e-12);

  CHECK(distance(s, 2.0, 0.3, 2.0, 0.3) <= 1e-6);

  double dpr = distance(s, 2.0, 0.0, 0.5, 2.0);
  double dqr = distance(s, 1.0, 1.0, 0.5, 2.0);
  CHECK(dpr <= dpq + dqr + 3e-4);
}

TEST_CASE("distance on the round sphere matches the closed form") {
  SurfaceOfRevolution s{make_round_sphere()};
  struct Pair {
    double r1, t1, r2, t2;
  };
  for (const Pair& c : {Pair{0.7, 0.0, 2.0, 2.0}, Pair{1.2, 0.3, 1.2, 3.0},
                        Pair{0.5, 0.0, 2.8, 1.0}}) {
    double want = sphere_distance(c.r1, c.t1, c.r2, c.t2);
    double got = distance(s, c.r1, c.t1, c.r2, c.t2);
    CHECK(std::abs(got - want) <= 2e-5);
  }
}

TEST_CASE("distance reports failure when the horizon is too short") {
  SurfaceOfRevolution s{make_m0()};
  DistanceOptions opt;
  opt.horizon = 0.1;
  CHECK_THROWS_AS(distance(s, 2.0, 0.0, 1.0, 1.0, opt), NumericError);
}

TEST_CASE("base radii outside the surface are rejected") {
  SurfaceOfRevolution sphere{make_round_sphere()};
  SurfaceOfRevolution plane{make_m0()};
  CHECK_THROWS_AS(cut_locus(sphere, 4.0), std::exception);
  CHECK_THROWS_AS(cut_locus(plane, -0.5), std::exception);
  CHECK_THROWS_AS(cut_time(plane, -0.5, 0.3), std::exception);
}

TEST_CASE("deformed sphere passes the cut-structure verification") {
  auto sp = make_sphere_profile(0.5, lambda0_bound(0.5) / 2.0);
  SurfaceOfRevolution s{ProfileFunction(sp)};
  CutSearchOptions opt;
  opt.fan_size = 64;
  auto v = verify_gvm(s, {0.9}, opt);
  CHECK(v.pass);
  REQUIRE(v.loci.size() == 1);
  CHECK(v.loci[0].kind != CutLocusKind::other);
}
