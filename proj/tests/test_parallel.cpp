#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <stdexcept>
#include <vector>

#include "revolve/constructors.hpp"
#include "revolve/cutlocus.hpp"
#include "revolve/geodesic.hpp"
#include "revolve/parallel.hpp"

using namespace revolve;

TEST_CASE("index loop covers every slot exactly once in both modes") {
  for (ExecMode mode : {ExecMode::serial, ExecMode::openmp}) {
    std::vector<int> hits(257, 0);
    for_each_index(hits.size(), mode,
                   [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("exceptions inside the loop surface on the caller") {
  for (ExecMode mode : {ExecMode::serial, ExecMode::openmp}) {
    std::atomic<int> ran{0};
    auto body = [&](std::size_t i) {
      ran.fetch_add(1);
      if (i == 17) throw std::runtime_error("slot 17");
    };
    CHECK_THROWS_AS(for_each_index(64, mode, body), std::runtime_error);
    CHECK(ran.load() >= 1);
  }
}

TEST_CASE("half-period table is bit-identical across modes") {
  ProfileFunction m0 = make_m0();
  std::vector<double> nus;
  for (int i = 0; i < 33; ++i) nus.push_back(0.02 + 0.46 * i / 32.0);
  auto serial = half_period_table(m0.ref(), nus, true, ExecMode::serial);
  auto parallel = half_period_table(m0.ref(), nus, true, ExecMode::openmp);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].phi == parallel[i].phi);
    REQUIRE(serial[i].psi.has_value() == parallel[i].psi.has_value());
    if (serial[i].psi) CHECK(*serial[i].psi == *parallel[i].psi);
    REQUIRE(serial[i].phi_prime.has_value());
    CHECK(*serial[i].phi_prime == *parallel[i].phi_prime);
    CHECK(*serial[i].psi_prime == *parallel[i].psi_prime);
  }
}

TEST_CASE("cut locus search is bit-identical across modes") {
  SurfaceOfRevolution s{make_m0()};
  CutSearchOptions serial_opt;
  serial_opt.fan_size = 48;
  serial_opt.mode = ExecMode::serial;
  CutSearchOptions parallel_opt = serial_opt;
  parallel_opt.mode = ExecMode::openmp;

  auto a = cut_locus(s, 1.0, serial_opt);
  auto b = cut_locus(s, 1.0, parallel_opt);
  CHECK(a.kind == b.kind);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].r == b.points[i].r);
    CHECK(a.points[i].theta == b.points[i].theta);
    CHECK(a.points[i].t == b.points[i].t);
    CHECK(a.points[i].nu == b.points[i].nu);
  }
  CHECK(a.extent_r_min == b.extent_r_min);
  CHECK(a.extent_r_max == b.extent_r_max);
}

TEST_CASE("thread cap survives a round trip") {
  int before = max_threads();
  set_thread_cap(1);
  CHECK(max_threads() == 1);
  std::vector<int> hits(32, 0);
  for_each_index(hits.size(), ExecMode::openmp,
                 [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  set_thread_cap(before);
  CHECK(max_threads() == before);
}
