#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "revolve/conditions.hpp"
#include "revolve/constructors.hpp"

using namespace revolve;

namespace {

const ConditionCheck& find_check(const ConditionReport& report,
                                 const std::string& id) {
  for (const auto& c : report.checks)
    if (c.id == id) return c;
  REQUIRE_MESSAGE(false, "missing check ", id);
  static ConditionCheck dummy;
  return dummy;
}

double note_value(const std::string& note, const std::string& key) {
  auto pos = note.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::strtod(note.c_str() + pos + key.size() + 1, nullptr);
}

}  // namespace

TEST_CASE("model profile: strict peak and eventual convexity") {
  SurfaceOfRevolution s{make_m0()};
  auto report = check_conditions(s, ConditionSet::m5_m6);
  CHECK(report.verdict == Verdict::pass);
  CHECK(report.min_margin == doctest::Approx(1.59626e-05).epsilon(1e-3));

  const auto& peak = find_check(report, "M.5b");
  CHECK(peak.worst_x == doctest::Approx(1.0).epsilon(1e-9));

  const auto& convex = find_check(report, "M.6b");
  double r_dc = note_value(convex.note, "r_dc");
  CHECK(r_dc == doctest::Approx(std::sqrt(7.0)).epsilon(1e-8));
}

TEST_CASE("model profile: full plane condition set") {
  SurfaceOfRevolution s{make_m0()};
  auto report = check_conditions(s, ConditionSet::m1_to_m4);
  CHECK(report.verdict == Verdict::pass);
  CHECK(report.min_margin == doctest::Approx(8.15448e-06).epsilon(1e-2));
  for (const auto& c : report.checks) CHECK(c.verdict == Verdict::pass);
}

TEST_CASE("model profile fails the empty-cut-locus criterion") {
  SurfaceOfRevolution s{make_m0()};
  auto report = check_conditions(s, ConditionSet::empty_cut_locus);
  CHECK(report.verdict == Verdict::fail);
  CHECK(report.min_margin < 0.0);
}

TEST_CASE("cone-opening profile passes all plane sets") {
  SurfaceOfRevolution s{make_m_alpha(0.25)};

  auto m14 = check_conditions(s, ConditionSet::m1_to_m4);
  CHECK(m14.verdict == Verdict::pass);
  const auto& m1b = find_check(m14, "M.1b");
  CHECK(m1b.margin == doctest::Approx(0.110257).epsilon(1e-3));
  const auto& m4 = find_check(m14, "M.4");
  CHECK(m4.margin == doctest::Approx(0.476641).epsilon(1e-3));

  auto m56 = check_conditions(s, ConditionSet::m5_m6);
  CHECK(m56.verdict == Verdict::pass);
  double r_dc = note_value(find_check(m56, "M.6b").note, "r_dc");
  CHECK(r_dc == doctest::Approx(std::sqrt(7.0)).epsilon(1e-6));

  auto empty = check_conditions(s, ConditionSet::empty_cut_locus);
  CHECK(empty.verdict == Verdict::pass);
  CHECK(empty.min_margin == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("flat plane fails the peaked-profile sets but has empty cut loci") {
  SurfaceOfRevolution s{make_euclidean()};
  CHECK(check_conditions(s, ConditionSet::m1_to_m4).verdict == Verdict::fail);
  CHECK(check_conditions(s, ConditionSet::m5_m6).verdict == Verdict::fail);
  auto empty = check_conditions(s, ConditionSet::empty_cut_locus);
  CHECK(empty.verdict == Verdict::pass);
  CHECK(empty.min_margin == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("round sphere passes the sphere condition set") {
  SurfaceOfRevolution s{make_round_sphere()};
  auto report = check_conditions(s, ConditionSet::a1_to_a3);
  CHECK(report.verdict == Verdict::pass);
  for (const auto& c : report.checks) CHECK(c.verdict == Verdict::pass);
}

TEST_CASE("deformed spheres below the bound pass with one-sided expansion") {
  double l0 = lambda0_bound(0.5);

  SurfaceOfRevolution plus{ProfileFunction(make_sphere_profile(0.5, l0 / 2))};
  auto rp = check_conditions(plus, ConditionSet::a1_to_a3);
  CHECK(rp.verdict == Verdict::pass);
  const auto& a3p = find_check(rp, "A.3");
  CHECK(a3p.margin == doctest::Approx(7.97211e-07).epsilon(1e-2));
  CHECK(a3p.note.find(">=") != std::string::npos);
  double re_p = note_value(find_check(rp, "A.1").note, "r_e");
  CHECK(re_p == doctest::Approx(1.5694457221609308).epsilon(1e-9));

  SurfaceOfRevolution minus{ProfileFunction(make_sphere_profile(0.5, -l0 / 2))};
  auto rm = check_conditions(minus, ConditionSet::a1_to_a3);
  CHECK(rm.verdict == Verdict::pass);
  const auto& a3m = find_check(rm, "A.3");
  CHECK(a3m.margin == doctest::Approx(8.153e-07).epsilon(1e-2));
  CHECK(a3m.note.find("<=") != std::string::npos);
  double re_m = note_value(find_check(rm, "A.1").note, "r_e");
  CHECK(re_m == doctest::Approx(1.5721651954578468).epsilon(1e-9));
}

TEST_CASE("condition sets reject the wrong surface kind") {
  SurfaceOfRevolution plane{make_m0()};
  SurfaceOfRevolution sphere{make_round_sphere()};
  CHECK_THROWS_AS(check_conditions(plane, ConditionSet::a1_to_a3),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_conditions(sphere, ConditionSet::m5_m6),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_conditions(sphere, ConditionSet::m1_to_m4),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_conditions(sphere, ConditionSet::empty_cut_locus),
                  std::invalid_argument);
}
