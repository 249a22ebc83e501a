#pragma once

// Grid-based verification of the monotonicity and convexity conditions that
// control cut-locus structure on a surface of revolution.  Each condition is
// reduced to a sign requirement Q >= 0 for a quantity Q sampled on a dense
// grid; structural zeros at interval endpoints are divided out analytically
// so margins stay bounded away from zero wherever the condition holds
// strictly.
//
// A check reports pass, fail, or inconclusive.  Fail means a sampled value
// violates the condition by more than the comparison tolerance even under
// the most favorable reading of evaluation noise; inconclusive means the
// margin is smaller than ten times the local grid-interpolation error bound
// at the minimizing sample, so refinement could change the answer.

#include <string>
#include <vector>

#include "revolve/parallel.hpp"
#include "revolve/profile.hpp"

namespace revolve {

// The four condition families:
//   m1_to_m4        plane profiles, peak rescaled to radius 1: slope signs
//                   on both branches, curvature monotone before the peak,
//                   outer half-period decreasing, mirror-map expansion.
//   m5_m6           plane profiles, unnormalized: strict local maximum of m
//                   at some radius, curvature monotone up to a radius past
//                   which m is convex.
//   a1_to_a3        sphere profiles: unique equator, curvature monotone on
//                   both sides of it, one-sided mirror-map expansion.
//   empty_cut_locus plane profiles: positive limit of m together with a
//                   convergent integral of 1/m^2 (the criterion for
//                   uncountably many points with empty cut locus).
enum class ConditionSet { m1_to_m4, m5_m6, a1_to_a3, empty_cut_locus };

const char* condition_set_name(ConditionSet set);

enum class Verdict { pass, fail, inconclusive };

const char* verdict_name(Verdict v);

struct ConditionCheck {
  std::string id;           // e.g. "M.1a", "A.2-left", "E.2"
  Verdict verdict = Verdict::inconclusive;
  double margin = 0.0;      // minimal slack of the oriented quantity
  double tolerance = 0.0;   // comparison tolerance folded into the margin
  double grid_error = 0.0;  // local interpolation error bound at the minimum
  double worst_x = 0.0;     // abscissa (x or nu) of the minimal slack
  double worst_value = 0.0; // quantity value there
  std::string note;
  std::vector<double> grid_x;      // decimated witness grid
  std::vector<double> grid_value;  // tested quantity on the witness grid
};

struct ConditionOptions {
  // Grid density: points per unit length of the sampled interval.
  int samples_per_unit = 4097;
  // Clairaut-constant grid size for the half-period monotonicity sweep.
  int nu_samples = 65;
  // Relative gap kept below the peak value of m in that sweep (the
  // half-period derivative degenerates at the peak itself); the matching
  // relative gap above the lower end is 200 times wider because the
  // half-period diverges there.
  double nu_gap = 1e-4;
  // Right end of the sampled window for conditions on unbounded intervals;
  // 0 picks max(50, r1 + 20) clipped to the profile's evaluation horizon.
  double horizon = 0.0;
  ExecMode mode = ExecMode::openmp;
};

struct ConditionReport {
  ConditionSet set = ConditionSet::m1_to_m4;
  Verdict verdict = Verdict::inconclusive;  // worst verdict over the checks
  double min_margin = 0.0;
  std::vector<ConditionCheck> checks;
};

// Runs every check of the requested set.  The m-sets require a plane-kind
// surface and a1_to_a3 a sphere-kind one; a mismatch throws
// std::invalid_argument.  m1_to_m4 operates on the profile rescaled so its
// peak sits at radius 1.
ConditionReport check_conditions(const SurfaceOfRevolution& surface,
                                 ConditionSet set,
                                 const ConditionOptions& options = {});

}  // namespace revolve
