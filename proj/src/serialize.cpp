#include "revolve/serialize.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "revolve/constructors.hpp"

namespace revolve {

namespace {

using nlohmann::json;

const char* domain_name(ProfileDomain d) {
  return d == ProfileDomain::half_line ? "half-line" : "sphere-interval";
}

json bumps_to_json(const std::vector<BumpSpec>& specs) {
  json arr = json::array();
  for (const BumpSpec& s : specs) {
    arr.push_back(json{{"n", s.n}, {"C_n", s.amplitude}, {"k_n", s.count}});
  }
  return arr;
}

json params_of(const Profile& p) {
  switch (p.family()) {
    case ProfileFamily::euclidean:
    case ProfileFamily::round_sphere:
    case ProfileFamily::m0:
      return json::object();
    case ProfileFamily::m_alpha: {
      const auto& q = dynamic_cast<const MAlphaProfile&>(p);
      return json{{"alpha", q.alpha()}};
    }
    case ProfileFamily::oscillating: {
      const auto& q = dynamic_cast<const OscillatingProfile&>(p);
      return json{{"base", profile_to_json(*q.base())},
                  {"n0", q.start_index()},
                  {"n_max_materialized", q.max_index()},
                  {"bumps", bumps_to_json(q.bumps())}};
    }
    case ProfileFamily::sphere_profile: {
      const auto& q = dynamic_cast<const SphereProfile&>(p);
      return json{{"alpha", q.alpha()}, {"lambda", q.lambda()}};
    }
    case ProfileFamily::scaled: {
      const auto& q = dynamic_cast<const ScaledProfile&>(p);
      return json{{"inner", profile_to_json(*q.inner())},
                  {"lambda", q.lambda()}};
    }
  }
  throw std::logic_error("profile_to_json: unhandled family");
}

[[noreturn]] void bad_profile(const std::string& what) {
  throw std::invalid_argument("profile_from_json: " + what);
}

double require_number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    bad_profile(std::string("missing numeric parameter '") + key + "'");
  return obj.at(key).get<double>();
}

std::int64_t require_integer(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number_integer())
    bad_profile(std::string("missing integer parameter '") + key + "'");
  return obj.at(key).get<std::int64_t>();
}

ProfileFunction rebuild_oscillating(const json& params) {
  if (!params.contains("base"))
    bad_profile("oscillating profile needs a 'base' object");
  ProfileFunction base = profile_from_json(params.at("base"));
  auto n0 = require_integer(params, "n0");
  auto n_max = require_integer(params, "n_max_materialized");
  if (n0 < 1 || n_max < n0)
    bad_profile("oscillating profile needs 1 <= n0 <= n_max_materialized");

  ProfileFunction rebuilt = make_oscillating(
      base, static_cast<int>(n0), 2.0 * static_cast<double>(n_max) + 1.0);
  const auto& osc = dynamic_cast<const OscillatingProfile&>(rebuilt.ref());
  if (osc.max_index() != static_cast<int>(n_max))
    bad_profile("oscillating rebuild materialized a different bump count");

  if (params.contains("bumps")) {
    const json& arr = params.at("bumps");
    const std::vector<BumpSpec>& specs = osc.bumps();
    if (!arr.is_array() || arr.size() != specs.size())
      bad_profile("stored bump list has the wrong length");
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const json& b = arr[i];
      bool same = static_cast<int>(require_integer(b, "n")) == specs[i].n &&
                  require_integer(b, "k_n") == specs[i].count &&
                  require_number(b, "C_n") == specs[i].amplitude;
      if (!same)
        bad_profile("stored bump constants differ from the deterministic "
                    "rebuild; the file was produced by an incompatible build");
    }
  }
  return rebuilt;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{})
    throw std::logic_error("format_double: buffer too small");
  return std::string(buf, res.ptr);
}

json profile_to_json(const Profile& profile) {
  return json{{"family", family_name(profile.family())},
              {"params", params_of(profile)},
              {"domain", domain_name(profile.domain())}};
}

ProfileFunction profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    bad_profile("expected an object with a 'family' string");
  const std::string fam = j.at("family").get<std::string>();
  const json params = j.value("params", json::object());

  ProfileFunction out;
  if (fam == "euclidean") {
    out = make_euclidean();
  } else if (fam == "round-sphere") {
    out = make_round_sphere();
  } else if (fam == "m0") {
    out = make_m0();
  } else if (fam == "m-alpha") {
    out = make_m_alpha(require_number(params, "alpha"));
  } else if (fam == "oscillating") {
    out = rebuild_oscillating(params);
  } else if (fam == "sphere-profile") {
    out = ProfileFunction(make_sphere_profile(require_number(params, "alpha"),
                                              require_number(params, "lambda")));
  } else if (fam == "scaled") {
    if (!params.contains("inner"))
      bad_profile("scaled profile needs an 'inner' object");
    ProfileFunction inner = profile_from_json(params.at("inner"));
    double lambda = require_number(params, "lambda");
    if (!(lambda > 0.0)) bad_profile("scaled profile needs lambda > 0");
    out = ProfileFunction(
        std::make_shared<ScaledProfile>(inner.shared(), lambda));
  } else {
    bad_profile("unknown family '" + fam + "'");
  }

  if (j.contains("domain")) {
    if (!j.at("domain").is_string() ||
        j.at("domain").get<std::string>() != domain_name(out.ref().domain()))
      bad_profile("domain tag contradicts family '" + fam + "'");
  }
  return out;
}

json cut_locus_to_json(const CutLocusResult& result) {
  json points = json::array();
  for (const CutPoint& p : result.points) {
    points.push_back(json{
        {"r", p.r}, {"theta", p.theta}, {"t", p.t}, {"nu", p.nu}});
  }
  return json{{"base", json{{"r", result.base_r}, {"theta", 0.0}}},
              {"classification", cut_locus_kind_name(result.kind)},
              {"points", points},
              {"horizon", result.horizon}};
}

json condition_report_to_json(const ConditionReport& report) {
  json checks = json::array();
  for (const ConditionCheck& c : report.checks) {
    json entry{{"id", c.id},
               {"verdict", verdict_name(c.verdict)},
               {"margin", c.margin},
               {"tolerance", c.tolerance},
               {"grid_error", c.grid_error},
               {"worst_x", c.worst_x},
               {"worst_value", c.worst_value}};
    if (!c.note.empty()) entry["note"] = c.note;
    if (!c.grid_x.empty()) {
      entry["grid_x"] = c.grid_x;
      entry["grid_value"] = c.grid_value;
    }
    checks.push_back(std::move(entry));
  }
  return json{{"set", condition_set_name(report.set)},
              {"verdict", verdict_name(report.verdict)},
              {"min_margin", report.min_margin},
              {"checks", std::move(checks)}};
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("write_csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

void write_path_csv(std::ostream& out, const Profile& profile,
                    const GeodesicPath& path) {
  std::vector<std::vector<double>> rows;
  rows.reserve(path.samples.size());
  for (const GeodesicState& s : path.samples) {
    double m = profile.eval(s.r, 0);
    double thetaprime = m > 0.0 ? path.nu / (m * m)
                                : std::numeric_limits<double>::quiet_NaN();
    rows.push_back({s.t, s.r, s.theta, s.rprime, thetaprime, path.nu});
  }
  write_csv(out, {"t", "r", "theta", "rprime", "thetaprime", "nu"}, rows);
}

void write_half_period_csv(std::ostream& out,
                           const std::vector<HalfPeriodSample>& table) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> rows;
  rows.reserve(table.size());
  for (const HalfPeriodSample& s : table) {
    rows.push_back({s.nu, s.phi, s.psi.value_or(nan),
                    s.phi_prime.value_or(nan), s.psi_prime.value_or(nan)});
  }
  write_csv(out, {"nu", "phi", "psi", "phi_prime", "psi_prime"}, rows);
}

PlotKind plot_kind_from_name(const std::string& name) {
  if (name == "profile-curve") return PlotKind::profile_curve;
  if (name == "curvature") return PlotKind::curvature;
  if (name == "half-period") return PlotKind::half_period;
  if (name == "cut-locus") return PlotKind::cut_locus;
  throw std::invalid_argument("unknown plot kind '" + name + "'");
}

void export_plot_data(const Profile& profile, PlotKind kind, double x_lo,
                      double x_hi, int steps, const std::string& path) {
  if (kind != PlotKind::profile_curve && kind != PlotKind::curvature)
    throw std::invalid_argument(
        "export_plot_data: profile data exports as profile-curve or "
        "curvature");
  if (steps < 1 || !(x_hi >= x_lo))
    throw std::invalid_argument("export_plot_data: need x_lo <= x_hi, steps >= 1");

  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    double x = steps == 1
                   ? x_lo
                   : x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                         static_cast<double>(steps - 1);
    if (kind == PlotKind::profile_curve) {
      rows.push_back({x, profile.eval(x, 0), profile.eval(x, 1)});
    } else {
      double m = profile.eval(x, 0);
      double k, kprime;
      if (m <= 1e-12) {
        // Smooth pole: the curvature is an even function of the distance to
        // the pole, so its radial derivative vanishes there.
        k = gaussian_curvature(profile, x);
        kprime = 0.0;
      } else {
        double m1 = profile.eval(x, 1);
        double m2 = profile.eval(x, 2);
        double m3 = profile.eval(x, 3);
        k = -m2 / m;
        kprime = (m2 * m1 - m3 * m) / (m * m);
      }
      rows.push_back({x, k, kprime});
    }
  }
  std::ostringstream out;
  if (kind == PlotKind::profile_curve)
    write_csv(out, {"x", "m", "mprime"}, rows);
  else
    write_csv(out, {"x", "K", "Kprime"}, rows);
  write_text_file(path, out.str());
}

void export_plot_data(const std::vector<HalfPeriodSample>& table,
                      PlotKind kind, const std::string& path) {
  if (kind != PlotKind::half_period)
    throw std::invalid_argument(
        "export_plot_data: a half-period table exports as half-period");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> rows;
  rows.reserve(table.size());
  for (const HalfPeriodSample& s : table)
    rows.push_back({s.nu, s.phi, s.psi.value_or(nan)});
  std::ostringstream out;
  write_csv(out, {"nu", "phi", "psi"}, rows);
  write_text_file(path, out.str());
}

void export_plot_data(const CutLocusResult& result, PlotKind kind,
                      const std::string& path) {
  if (kind != PlotKind::cut_locus)
    throw std::invalid_argument(
        "export_plot_data: a cut-locus result exports as cut-locus");
  std::vector<std::vector<double>> rows;
  rows.reserve(result.points.size());
  for (const CutPoint& p : result.points) rows.push_back({p.r, p.theta, p.t});
  std::ostringstream out;
  write_csv(out, {"r", "theta", "t"}, rows);
  write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed: " + path);
  return buf.str();
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json read_json_file(const std::string& path) {
  return json::parse(read_text_file(path));
}

}  // namespace revolve
