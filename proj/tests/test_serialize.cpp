#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "revolve/constructors.hpp"
#include "revolve/serialize.hpp"

using namespace revolve;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = std::string("revolve_test_") + name;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

void check_same_profile(const Profile& a, const Profile& b) {
  double hi = a.domain() == ProfileDomain::sphere_interval
                  ? Profile::pi()
                  : std::min(8.0, a.eval_horizon());
  for (int i = 1; i < 40; ++i) {
    double x = hi * i / 40.0;
    for (int k = 0; k <= 2; ++k) CHECK(a.eval(x, k) == b.eval(x, k));
  }
}

}  // namespace

TEST_CASE("shortest round-trip rendering of doubles") {
  for (double v : {0.1, -0.0, 1e22, 1e-300, 3.141592653589793, 2.0 / 3.0,
                   -123456.789, 0.0}) {
    std::string s = format_double(v);
    double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == v);
    CHECK(s.find('E') == std::string::npos);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  double nan = std::nan("");
  CHECK(format_double(nan) == "nan");
}

TEST_CASE("profile JSON round trips") {
  auto roundtrip = [](const ProfileFunction& p) {
    nlohmann::json j = profile_to_json(p.ref());
    ProfileFunction q = profile_from_json(j);
    check_same_profile(p.ref(), q.ref());
    CHECK(profile_to_json(q.ref()) == j);
  };
  roundtrip(make_m0());
  roundtrip(make_m_alpha(0.25));
  roundtrip(make_euclidean());
  roundtrip(make_round_sphere());
  roundtrip(ProfileFunction(make_sphere_profile(0.5, 0.017)));
  roundtrip(make_oscillating(make_m_alpha(0.25), 3, 9.0));
  roundtrip(ProfileFunction(
      std::make_shared<const ScaledProfile>(make_m0().shared(), 2.0)));
}

TEST_CASE("oscillating JSON is byte stable and tamper evident") {
  ProfileFunction osc = make_oscillating(make_m_alpha(0.25), 3, 9.0);
  nlohmann::json j = profile_to_json(osc.ref());
  std::string text = j.dump(2);
  ProfileFunction back = profile_from_json(nlohmann::json::parse(text));
  CHECK(profile_to_json(back.ref()).dump(2) == text);

  nlohmann::json bad = j;
  bad["params"]["bumps"][0]["C_n"] =
      bad["params"]["bumps"][0]["C_n"].get<double>() * (1.0 + 1e-12);
  CHECK_THROWS_AS(profile_from_json(bad), std::invalid_argument);

  nlohmann::json bad2 = j;
  bad2["params"]["bumps"][0]["k_n"] =
      bad2["params"]["bumps"][0]["k_n"].get<std::int64_t>() + 1;
  CHECK_THROWS_AS(profile_from_json(bad2), std::invalid_argument);
}

TEST_CASE("malformed profile JSON is rejected") {
  nlohmann::json j = profile_to_json(make_m0().ref());
  nlohmann::json wrong_domain = j;
  wrong_domain["domain"] = "sphere";
  CHECK_THROWS_AS(profile_from_json(wrong_domain), std::invalid_argument);

  nlohmann::json unknown = j;
  unknown["family"] = "hyperbolic";
  CHECK_THROWS_AS(profile_from_json(unknown), std::invalid_argument);

  nlohmann::json missing = profile_to_json(make_m_alpha(0.25).ref());
  missing["params"].erase("alpha");
  CHECK_THROWS_AS(profile_from_json(missing), std::invalid_argument);
}

TEST_CASE("CSV writer enforces the header width") {
  std::ostringstream out;
  write_csv(out, {"a", "b"}, {{1.0, 2.0}, {3.0, 4.0}});
  CHECK(out.str() == "a,b\n1,2\n3,4\n");
  std::ostringstream bad;
  CHECK_THROWS_AS(write_csv(bad, {"a", "b"}, {{1.0}}),
                  std::invalid_argument);
}

TEST_CASE("cut locus JSON carries the classification and points") {
  CutLocusResult r;
  r.base_r = 2.0;
  r.kind = CutLocusKind::single_point;
  r.points.push_back({1.5, 3.0, 2.5, 0.4});
  r.horizon = 48.0;
  nlohmann::json j = cut_locus_to_json(r);
  CHECK(j["base"]["r"] == 2.0);
  CHECK(j["classification"] == "single-point");
  CHECK(j["points"].size() == 1);
  CHECK(j["points"][0]["nu"] == 0.4);
  CHECK(j["horizon"] == 48.0);
}

TEST_CASE("JSON files round trip through disk") {
  TempFile f("profile.json");
  nlohmann::json j = profile_to_json(make_m_alpha(0.3).ref());
  write_json_file(f.path, j);
  std::string text = read_text_file(f.path);
  CHECK(text.back() == '\n');
  CHECK(read_json_file(f.path) == j);
  CHECK_THROWS_AS(read_json_file("no_such_dir/x.json"), std::runtime_error);
}

TEST_CASE("curvature export locates the inflection of the model profile") {
  TempFile f("curv.csv");
  export_plot_data(make_m0().ref(), PlotKind::curvature, 0.0, 10.0, 1001,
                   f.path);
  std::ifstream in(f.path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "x,K,Kprime");
  int rows = 0;
  double prev_x = 0.0, prev_k = 0.0;
  double crossing = 0.0;
  bool have_prev = false;
  while (std::getline(in, line)) {
    ++rows;
    double x, K, Kp;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &K, &Kp) == 3);
    if (have_prev && prev_k > 0.0 && K <= 0.0)
      crossing = prev_x + (x - prev_x) * prev_k / (prev_k - K);
    prev_x = x;
    prev_k = K;
    have_prev = true;
  }
  CHECK(rows == 1001);
  CHECK(crossing == doctest::Approx(std::sqrt(3.0)).epsilon(1e-4));
}

TEST_CASE("plot export overloads reject a mismatched kind") {
  TempFile f("bad.csv");
  CHECK_THROWS_AS(export_plot_data(make_m0().ref(), PlotKind::cut_locus, 0.0,
                                   1.0, 10, f.path),
                  std::invalid_argument);
  CutLocusResult r;
  CHECK_THROWS_AS(export_plot_data(r, PlotKind::profile_curve, f.path),
                  std::invalid_argument);
  std::vector<HalfPeriodSample> table;
  CHECK_THROWS_AS(export_plot_data(table, PlotKind::curvature, f.path),
                  std::invalid_argument);
  CHECK(plot_kind_from_name("half-period") == PlotKind::half_period);
  CHECK_THROWS_AS(plot_kind_from_name("histogram"), std::invalid_argument);
}

TEST_CASE("path CSV uses the Clairaut relation for the longitude rate") {
  ProfileFunction m0 = make_m0();
  auto path = shoot(m0.ref(), 2.0, 0.0, 1.1, 3.0);
  std::ostringstream out;
  write_path_csv(out, m0.ref(), path);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "t,r,theta,rprime,thetaprime,nu");
  REQUIRE(std::getline(in, line));
  double t, r, th, rp, thp, nu;
  REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &t, &r, &th,
                      &rp, &thp, &nu) == 6);
  CHECK(t == 0.0);
  CHECK(r == 2.0);
  double m = m0(2.0);
  CHECK(thp == doctest::Approx(nu / (m * m)).epsilon(1e-12));
}
