#pragma once

// Deterministic JSON and CSV output, plus profile reconstruction from JSON.
// Every floating-point value is rendered as the shortest decimal string that
// parses back to the same double (at most 17 significant digits), object
// keys are emitted in sorted order, and no timestamps or machine identifiers
// enter any payload, so rerunning a command on the same input reproduces its
// output files byte for byte.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "revolve/conditions.hpp"
#include "revolve/cutlocus.hpp"
#include "revolve/geodesic.hpp"
#include "revolve/profile.hpp"

namespace revolve {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Profile as {family, params, domain}.  Oscillating profiles embed their
// base profile and record every materialized bump as {n, C_n, k_n}.
nlohmann::json profile_to_json(const Profile& profile);

// Rebuilds a profile from its JSON form.  The oscillating rebuild re-derives
// the bump constants from the base profile and refuses data whose stored
// {C_n, k_n} differ from the rebuilt ones in any bit, so a loaded profile is
// guaranteed identical to the one that was saved.  Throws
// std::invalid_argument on unknown families, missing parameters, or a
// domain tag that contradicts the family.
ProfileFunction profile_from_json(const nlohmann::json& j);

// Cut locus as {base:{r,theta}, classification, points:[{r,theta,t,nu}],
// horizon}.
nlohmann::json cut_locus_to_json(const CutLocusResult& result);

// Condition report as {set, verdict, min_margin, checks:[...]}; each check
// carries its margin, tolerance, grid error, worst point, and the decimated
// witness grid.
nlohmann::json condition_report_to_json(const ConditionReport& report);

// CSV with a header row; cells rendered by format_double, rows separated by
// a single newline.  Every row must match the header width.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Sampled geodesic as t,r,theta,rprime,thetaprime,nu rows; thetaprime is
// recovered from the Clairaut relation theta' = nu / m(r)^2.
void write_path_csv(std::ostream& out, const Profile& profile,
                    const GeodesicPath& path);

// Half-period table as nu,phi,psi,phi_prime,psi_prime rows.  Entries whose
// psi does not exist (the geodesic escapes instead of turning back) and
// derivatives that were not requested render as nan.
void write_half_period_csv(std::ostream& out,
                           const std::vector<HalfPeriodSample>& table);

// Plot-ready exports: small CSV tables any external plotter can read, one
// header row naming the columns.
//   profile_curve  x, m, mprime          (uniform grid)
//   curvature      x, K, Kprime          (K = -m''/m, derivatives analytic)
//   half_period    nu, phi, psi
//   cut_locus      r, theta, t
// The overload must match the kind; a mismatch throws
// std::invalid_argument.
enum class PlotKind { profile_curve, curvature, half_period, cut_locus };

PlotKind plot_kind_from_name(const std::string& name);

void export_plot_data(const Profile& profile, PlotKind kind, double x_lo,
                      double x_hi, int steps, const std::string& path);
void export_plot_data(const std::vector<HalfPeriodSample>& table,
                      PlotKind kind, const std::string& path);
void export_plot_data(const CutLocusResult& result, PlotKind kind,
                      const std::string& path);

// Whole-file helpers; throw std::runtime_error when the file cannot be
// opened or written.  JSON files are two-space indented with a trailing
// newline.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace revolve
