// Command-line driver.  Builds profile families, runs the condition
// checkers, tabulates half-periods, integrates geodesics, and computes cut
// loci, writing deterministic CSV/JSON artifacts.
//
// Exit codes: 0 success (checks passed), 1 a check or verification failed,
// 2 a numeric computation failed to converge, 64 malformed invocation or
// config.  Options may come from flags or from one JSON config file
// (--config); a flag given on the command line always wins.  The
// REVOLVE_THREADS environment variable caps OpenMP parallelism.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "revolve/conditions.hpp"
#include "revolve/constructors.hpp"
#include "revolve/cutlocus.hpp"
#include "revolve/geodesic.hpp"
#include "revolve/parallel.hpp"
#include "revolve/profile.hpp"
#include "revolve/serialize.hpp"

namespace {

using nlohmann::json;
using namespace revolve;

struct RunConfig {
  std::string subcommand;
  std::string config_file;

  std::string surface_file;  // profile JSON produced by `build`
  std::string family;
  double alpha = 0.0;
  double lambda = 0.0;
  int n0 = 0;
  double x_max = 129.0;
  std::string base_file;  // base profile for `build oscillating`

  std::string grid_spec;  // "lo:hi:steps" sample grid for `profile`
  std::string nu_spec;    // "lo:hi:steps" Clairaut grid for `half-period`
  std::string r0_spec;    // radius, or comma-separated radii
  int fan = 0;            // 0 picks the per-command default
  double horizon = 0.0;
  int samples = 0;  // grid density override for `check`

  double angle = 0.0;
  double length = 0.0;
  double theta0 = 0.0;
  double tol = 0.0;
  bool no_derivatives = false;

  std::string set_name;
  std::string what;  // plot kind for `profile`
  std::string build_what;
  std::string out_path;
  std::string plot_path;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + " '" + s + "'");
  }
}

// "lo:hi:steps" with steps >= 1 and lo <= hi.
RangeSpec parse_range(const std::string& spec, const char* what) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() != 3)
    throw UsageError(std::string(what) + " must have the form lo:hi:steps");
  RangeSpec r;
  r.lo = parse_double(parts[0], what);
  r.hi = parse_double(parts[1], what);
  double n = parse_double(parts[2], what);
  r.steps = static_cast<int>(n);
  if (r.steps < 1 || static_cast<double>(r.steps) != n || !(r.hi >= r.lo))
    throw UsageError(std::string(what) +
                     " needs lo <= hi and an integer steps >= 1");
  return r;
}

std::vector<double> linspace(const RangeSpec& r) {
  std::vector<double> xs(static_cast<std::size_t>(r.steps));
  for (int i = 0; i < r.steps; ++i)
    xs[static_cast<std::size_t>(i)] =
        r.steps == 1 ? r.lo
                     : r.lo + (r.hi - r.lo) * static_cast<double>(i) /
                           static_cast<double>(r.steps - 1);
  return xs;
}

std::vector<double> parse_radii(const std::string& spec) {
  if (spec.empty()) throw UsageError("missing --r0");
  std::vector<double> out;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) out.push_back(parse_double(item, "--r0"));
  if (out.empty()) throw UsageError("missing --r0");
  return out;
}

double single_radius(const RunConfig& rc) {
  auto radii = parse_radii(rc.r0_spec);
  if (radii.size() != 1)
    throw UsageError("this command takes a single --r0 value");
  return radii[0];
}

ConditionSet parse_set(const std::string& name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_' && c != '.')
      key.push_back(static_cast<char>(std::toupper(c)));
  if (key == "M1M4") return ConditionSet::m1_to_m4;
  if (key == "M5M6") return ConditionSet::m5_m6;
  if (key == "A1A3") return ConditionSet::a1_to_a3;
  if (key == "EMPTY" || key == "EMPTYCUTLOCUS")
    return ConditionSet::empty_cut_locus;
  throw UsageError("unknown condition set '" + name +
                   "' (choose M1M4, M5M6, A1A3, or empty)");
}

ProfileFunction profile_from_flags(const RunConfig& rc) {
  const std::string& f = rc.family;
  if (f == "euclidean") return make_euclidean();
  if (f == "round-sphere") return make_round_sphere();
  if (f == "m0") return make_m0();
  if (f == "m-alpha") {
    if (!(rc.alpha > 0.0)) throw UsageError("family m-alpha needs --alpha > 0");
    return make_m_alpha(rc.alpha);
  }
  if (f == "oscillating") {
    if (rc.n0 < 1) throw UsageError("family oscillating needs --n0 >= 1");
    ProfileFunction base = rc.alpha > 0.0 ? make_m_alpha(rc.alpha) : make_m0();
    return make_oscillating(base, rc.n0, rc.x_max);
  }
  if (f == "sphere-profile")
    return ProfileFunction(make_sphere_profile(rc.alpha, rc.lambda));
  throw UsageError("unknown family '" + f +
                   "' (euclidean, round-sphere, m0, m-alpha, oscillating, "
                   "sphere-profile)");
}

ProfileFunction build_profile(const RunConfig& rc) {
  if (!rc.family.empty()) return profile_from_flags(rc);
  if (!rc.surface_file.empty())
    return profile_from_json(read_json_file(rc.surface_file));
  throw UsageError("specify a surface with --family or --surface FILE");
}

void emit_json(const RunConfig& rc, const json& j, const std::string& summary) {
  if (rc.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(rc.out_path, j);
    std::cout << summary << " -> " << rc.out_path << "\n";
  }
}

void emit_text(const RunConfig& rc, const std::string& text,
               const std::string& summary) {
  if (rc.out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(rc.out_path, text);
    std::cout << summary << " -> " << rc.out_path << "\n";
  }
}

int cmd_profile(const RunConfig& rc) {
  ProfileFunction p = build_profile(rc);
  PlotKind kind =
      plot_kind_from_name(rc.what.empty() ? "profile-curve" : rc.what);
  if (kind != PlotKind::profile_curve && kind != PlotKind::curvature)
    throw UsageError("profile exports --what profile-curve or curvature");
  if (rc.out_path.empty()) throw UsageError("profile needs --out FILE");

  RangeSpec grid;
  if (!rc.grid_spec.empty()) {
    grid = parse_range(rc.grid_spec, "--grid");
  } else {
    grid.lo = 0.0;
    grid.hi = p.ref().domain() == ProfileDomain::half_line
                  ? std::min(10.0, p.ref().eval_horizon())
                  : Profile::pi();
    grid.steps = 1001;
  }
  export_plot_data(p.ref(), kind, grid.lo, grid.hi, grid.steps, rc.out_path);

  const Profile& prof = p.ref();
  std::cout << "family " << family_name(prof.family()) << ", "
            << (prof.domain() == ProfileDomain::half_line ? "plane" : "sphere")
            << ", peak ";
  if (auto peak = prof.peak_radius())
    std::cout << format_double(*peak);
  else
    std::cout << "none";
  std::cout << ", wrote " << rc.out_path << "\n";
  return 0;
}

int cmd_check(const RunConfig& rc) {
  if (rc.set_name.empty()) throw UsageError("check needs --set");
  SurfaceOfRevolution surface{build_profile(rc)};
  ConditionOptions opts;
  if (rc.samples > 0) opts.samples_per_unit = rc.samples;
  if (rc.horizon > 0.0) opts.horizon = rc.horizon;
  ConditionReport report = check_conditions(surface, parse_set(rc.set_name), opts);

  std::string summary = std::string(condition_set_name(report.set)) + " " +
                        verdict_name(report.verdict) +
                        ", min margin " + format_double(report.min_margin);
  emit_json(rc, condition_report_to_json(report), summary);
  return report.verdict == Verdict::pass ? 0 : 1;
}

int cmd_half_period(const RunConfig& rc) {
  if (rc.nu_spec.empty()) throw UsageError("half-period needs --nu lo:hi:steps");
  ProfileFunction p = build_profile(rc);
  auto nus = linspace(parse_range(rc.nu_spec, "--nu"));
  double tol = rc.tol > 0.0 ? rc.tol : 1e-10;
  auto table =
      half_period_table(p.ref(), nus, !rc.no_derivatives, ExecMode::openmp, tol);
  std::ostringstream csv;
  write_half_period_csv(csv, table);
  emit_text(rc, csv.str(),
            "half-period table, " + std::to_string(table.size()) + " rows");
  return 0;
}

int cmd_geodesic(const RunConfig& rc) {
  ProfileFunction p = build_profile(rc);
  double r0 = single_radius(rc);
  if (!(rc.length > 0.0)) throw UsageError("geodesic needs --length > 0");
  GeodesicPath path = shoot(p.ref(), r0, rc.theta0, rc.angle, rc.length);
  std::ostringstream csv;
  write_path_csv(csv, p.ref(), path);
  std::string summary = "geodesic nu " + format_double(path.nu) + ", " +
                        std::to_string(path.samples.size()) + " samples" +
                        (path.pole_hit ? ", reached a pole" : "");
  emit_text(rc, csv.str(), summary);
  return 0;
}

CutSearchOptions cut_options(const RunConfig& rc, int default_fan) {
  CutSearchOptions opts;
  opts.fan_size = rc.fan > 0 ? rc.fan : default_fan;
  if (rc.horizon > 0.0) opts.horizon = rc.horizon;
  if (rc.tol > 0.0) opts.tol = rc.tol;
  return opts;
}

int cmd_cut_locus(const RunConfig& rc) {
  SurfaceOfRevolution surface{build_profile(rc)};
  double r0 = single_radius(rc);
  CutLocusResult res = cut_locus(surface, r0, cut_options(rc, 1024));
  if (!rc.plot_path.empty())
    export_plot_data(res, PlotKind::cut_locus, rc.plot_path);
  std::string summary = std::string("cut locus ") +
                        cut_locus_kind_name(res.kind) + ", " +
                        std::to_string(res.points.size()) + " points";
  emit_json(rc, cut_locus_to_json(res), summary);
  return 0;
}

int cmd_verify_gvm(const RunConfig& rc) {
  SurfaceOfRevolution surface{build_profile(rc)};
  auto radii = parse_radii(rc.r0_spec);
  GvmVerification v = verify_gvm(surface, radii, cut_options(rc, 256));
  json loci = json::array();
  for (const CutLocusResult& res : v.loci) loci.push_back(cut_locus_to_json(res));
  json j{{"pass", v.pass}, {"loci", std::move(loci)}};
  emit_json(rc, j,
            std::string("verify-gvm ") + (v.pass ? "pass" : "fail") + " at " +
                std::to_string(radii.size()) + " radii");
  return v.pass ? 0 : 1;
}

int cmd_build(const RunConfig& rc) {
  if (rc.out_path.empty()) throw UsageError("build needs --out FILE");
  ProfileFunction p;
  if (rc.build_what == "m-alpha") {
    if (!(rc.alpha > 0.0)) throw UsageError("build m-alpha needs --alpha > 0");
    p = make_m_alpha(rc.alpha);
  } else if (rc.build_what == "oscillating") {
    if (rc.n0 < 1) throw UsageError("build oscillating needs --n0 >= 1");
    ProfileFunction base;
    if (!rc.base_file.empty())
      base = profile_from_json(read_json_file(rc.base_file));
    else
      base = rc.alpha > 0.0 ? make_m_alpha(rc.alpha) : make_m0();
    p = make_oscillating(base, rc.n0, rc.x_max);
  } else if (rc.build_what == "sphere") {
    p = ProfileFunction(make_sphere_profile(rc.alpha, rc.lambda));
  } else {
    throw UsageError("build takes m-alpha, oscillating, or sphere");
  }
  write_json_file(rc.out_path, profile_to_json(p.ref()));
  std::cout << "built " << family_name(p.ref().family()) << " -> "
            << rc.out_path << "\n";
  return 0;
}

int cmd_lambda0(const RunConfig& rc) {
  if (!(rc.alpha > 0.0) || rc.alpha >= 1.0)
    throw UsageError("lambda0 needs --alpha in (0, 1)");
  double l0 = lambda0_bound(rc.alpha);
  if (!rc.out_path.empty()) {
    write_json_file(rc.out_path, json{{"alpha", rc.alpha}, {"lambda0", l0}});
  }
  std::cout << format_double(l0) << "\n";
  return 0;
}

int run(const RunConfig& rc) {
  try {
    if (rc.subcommand == "profile") return cmd_profile(rc);
    if (rc.subcommand == "check") return cmd_check(rc);
    if (rc.subcommand == "half-period") return cmd_half_period(rc);
    if (rc.subcommand == "geodesic") return cmd_geodesic(rc);
    if (rc.subcommand == "cut-locus") return cmd_cut_locus(rc);
    if (rc.subcommand == "verify-gvm") return cmd_verify_gvm(rc);
    if (rc.subcommand == "build") return cmd_build(rc);
    if (rc.subcommand == "lambda0") return cmd_lambda0(rc);
    throw UsageError("unknown subcommand '" + rc.subcommand + "'");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\nrun 'revolve " << rc.subcommand
              << " --help' for usage\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

// Fills flag values from the JSON config for every option the chosen
// subcommand knows and the command line left untouched.
void merge_config(CLI::App* sub, const json& cfg, RunConfig& rc) {
  if (!cfg.is_object())
    throw UsageError("config file must hold a JSON object");
  auto absent = [&](const char* flag) {
    const CLI::Option* o = sub->get_option_no_throw(flag);
    return o != nullptr && o->count() == 0;
  };
  auto str = [&](const char* key, const char* flag, std::string& target) {
    if (cfg.contains(key) && absent(flag)) target = cfg.at(key).get<std::string>();
  };
  auto num = [&](const char* key, const char* flag, double& target) {
    if (cfg.contains(key) && absent(flag)) target = cfg.at(key).get<double>();
  };
  auto integer = [&](const char* key, const char* flag, int& target) {
    if (cfg.contains(key) && absent(flag)) target = cfg.at(key).get<int>();
  };

  str("surface", "--surface", rc.surface_file);
  str("family", "--family", rc.family);
  num("alpha", "--alpha", rc.alpha);
  num("lambda", "--lambda", rc.lambda);
  integer("n0", "--n0", rc.n0);
  num("x_max", "--x-max", rc.x_max);
  str("base", "--base", rc.base_file);
  str("grid", "--grid", rc.grid_spec);
  str("nu", "--nu", rc.nu_spec);
  integer("fan", "--fan", rc.fan);
  num("horizon", "--horizon", rc.horizon);
  integer("samples", "--samples", rc.samples);
  num("angle", "--angle", rc.angle);
  num("length", "--length", rc.length);
  num("theta0", "--theta0", rc.theta0);
  num("tol", "--tol", rc.tol);
  str("set", "--set", rc.set_name);
  str("what", "--what", rc.what);
  str("out", "--out", rc.out_path);
  str("plot", "--plot", rc.plot_path);
  if (cfg.contains("r0") && absent("--r0")) {
    const json& v = cfg.at("r0");
    if (v.is_array()) {
      std::string joined;
      for (const json& x : v) {
        if (!joined.empty()) joined += ',';
        joined += format_double(x.get<double>());
      }
      rc.r0_spec = joined;
    } else {
      rc.r0_spec = format_double(v.get<double>());
    }
  }
  if (cfg.contains("derivatives") && absent("--no-derivatives"))
    rc.no_derivatives = !cfg.at("derivatives").get<bool>();
}

void add_surface_options(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--family", rc.family,
                  "profile family: euclidean, round-sphere, m0, m-alpha, "
                  "oscillating, sphere-profile");
  sub->add_option("--surface", rc.surface_file,
                  "profile JSON file (a `build` artifact); --family wins");
  sub->add_option("--alpha", rc.alpha, "slope / axis-ratio parameter");
  sub->add_option("--lambda", rc.lambda, "sphere deformation parameter");
  sub->add_option("--n0", rc.n0, "first oscillation interval index");
  sub->add_option("--x-max", rc.x_max,
                  "oscillating materialization horizon (default 129)");
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("REVOLVE_THREADS"))
    set_thread_cap(std::atoi(env));

  RunConfig rc;
  CLI::App app{
      "Surfaces of revolution: profiles, geodesics, half-periods, condition "
      "checks, and cut loci"};
  app.require_subcommand(1);

  CLI::App* profile = app.add_subcommand(
      "profile", "export a profile or curvature table as CSV");
  add_surface_options(profile, rc);
  profile->add_option("--grid", rc.grid_spec, "sample grid lo:hi:steps");
  profile->add_option("--what", rc.what, "profile-curve (default) or curvature");
  profile->add_option("--out", rc.out_path, "output CSV file");

  CLI::App* check =
      app.add_subcommand("check", "run a condition set, write a JSON verdict");
  add_surface_options(check, rc);
  check->add_option("--set", rc.set_name, "M1M4, M5M6, A1A3, or empty");
  check->add_option("--samples", rc.samples, "grid samples per unit length");
  check->add_option("--horizon", rc.horizon, "right end of sampled window");
  check->add_option("--out", rc.out_path, "verdict JSON file (default stdout)");

  CLI::App* hp = app.add_subcommand(
      "half-period", "tabulate phi, psi and derivatives over a nu grid");
  add_surface_options(hp, rc);
  hp->add_option("--nu", rc.nu_spec, "Clairaut grid lo:hi:steps");
  hp->add_option("--tol", rc.tol, "quadrature tolerance (default 1e-10)");
  hp->add_flag("--no-derivatives", rc.no_derivatives,
               "skip the phi', psi' columns");
  hp->add_option("--out", rc.out_path, "output CSV file (default stdout)");

  CLI::App* geo = app.add_subcommand(
      "geodesic", "integrate one geodesic, export t,r,theta,... as CSV");
  add_surface_options(geo, rc);
  geo->add_option("--r0", rc.r0_spec, "initial radius");
  geo->add_option("--theta0", rc.theta0, "initial longitude (default 0)");
  geo->add_option("--angle", rc.angle,
                  "initial angle from the outward meridian, in [0, pi]");
  geo->add_option("--length", rc.length, "arc length to cover");
  geo->add_option("--out", rc.out_path, "output CSV file (default stdout)");

  CLI::App* cl = app.add_subcommand(
      "cut-locus", "locate and classify the cut locus of a base point");
  add_surface_options(cl, rc);
  cl->add_option("--r0", rc.r0_spec, "base radius");
  cl->add_option("--fan", rc.fan, "fan size (default 1024)");
  cl->add_option("--horizon", rc.horizon, "search horizon (0 = automatic)");
  cl->add_option("--tol", rc.tol, "minimality slack (default 1e-6)");
  cl->add_option("--out", rc.out_path, "result JSON file (default stdout)");
  cl->add_option("--plot", rc.plot_path, "also write a r,theta,t CSV");

  CLI::App* vg = app.add_subcommand(
      "verify-gvm",
      "check that every listed base radius has an empty, single-point, or "
      "opposite-meridian cut locus");
  add_surface_options(vg, rc);
  vg->add_option("--r0", rc.r0_spec, "comma-separated base radii");
  vg->add_option("--fan", rc.fan, "fan size (default 256)");
  vg->add_option("--horizon", rc.horizon, "search horizon (0 = automatic)");
  vg->add_option("--tol", rc.tol, "minimality slack (default 1e-6)");
  vg->add_option("--out", rc.out_path, "result JSON file (default stdout)");

  CLI::App* build = app.add_subcommand(
      "build", "construct a profile and save it as JSON");
  build->add_option("what", rc.build_what, "m-alpha, oscillating, or sphere")
      ->required();
  build->add_option("--alpha", rc.alpha, "slope / axis-ratio parameter");
  build->add_option("--lambda", rc.lambda, "sphere deformation parameter");
  build->add_option("--n0", rc.n0, "first oscillation interval index");
  build->add_option("--x-max", rc.x_max,
                    "oscillating materialization horizon (default 129)");
  build->add_option("--base", rc.base_file,
                    "base profile JSON for oscillating (default m-alpha)");
  build->add_option("--out", rc.out_path, "output JSON file");

  CLI::App* l0 = app.add_subcommand(
      "lambda0", "deformation bound keeping the curvature ratio monotone");
  l0->add_option("--alpha", rc.alpha, "axis ratio in (0, 1)");
  l0->add_option("--out", rc.out_path, "optional JSON file");

  for (CLI::App* sub : {profile, check, hp, geo, cl, vg, build, l0})
    sub->add_option("--config", rc.config_file,
                    "JSON config file; explicit flags override its values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  CLI::App* sub = app.get_subcommands().front();
  rc.subcommand = sub->get_name();
  if (!rc.config_file.empty()) {
    try {
      merge_config(sub, read_json_file(rc.config_file), rc);
    } catch (const std::exception& e) {
      std::cerr << "error: bad config: " << e.what() << "\n";
      return 64;
    }
  }
  return run(rc);
}
