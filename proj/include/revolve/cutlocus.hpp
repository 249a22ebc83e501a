#pragma once
// Cut loci and distance on rotationally symmetric surfaces.
//
// Every search shoots a fan of geodesics from the base point and certifies
// loss of minimality through triangle-inequality upper bounds built from the
// other fan members' stored samples, so cut times are bracketed by bisection
// without assuming where the cut lies.  The bracketed time is then polished
// by solving the equal-length crossing with the partner geodesic the fan
// identified, or replaced by the Jacobi conjugate time when focusing wins.

#include <optional>
#include <vector>

#include "revolve/geodesic.hpp"
#include "revolve/parallel.hpp"
#include "revolve/profile.hpp"

namespace revolve {

enum class CutLocusKind {
  empty,
  single_point,
  opposite_meridian_subarc,
  other,
};

const char* cut_locus_kind_name(CutLocusKind kind);

struct CutPoint {
  double r = 0.0;
  double theta = 0.0;  // wrapped into [0, 2 pi)
  double t = 0.0;      // cut time, equal to the distance from the base point
  double nu = 0.0;     // Clairaut constant of the minimizing geodesic
};

struct CutLocusResult {
  double base_r = 0.0;  // base point (base_r, theta = 0)
  CutLocusKind kind = CutLocusKind::empty;
  std::vector<CutPoint> points;  // ascending initial angle
  double extent_r_min = 0.0;     // radial extent of the located cut set
  double extent_r_max = 0.0;
  double horizon = 0.0;  // arc-length search horizon; empty means empty up
                         // to this length only
};

struct CutSearchOptions {
  int fan_size = 1024;
  double tol = 1e-6;               // slack in minimality comparisons
  double angular_tol = 1e-3;       // allowed deviation from the opposite
                                   // meridian in the subarc classification
  double match_resolution = 2e-3;  // pairwise-diameter bound under which the
                                   // located set counts as a single point
  double horizon = 0.0;            // 0 picks 20 (r0 + peak) on a plane and a
                                   // full wrap on a sphere
  ExecMode mode = ExecMode::openmp;
};

// First time along the geodesic with the given initial angle at which it
// stops minimizing, or nullopt when no cut is detected before the horizon
// (or before the pole for meridian angles).  Negative angles mirror to
// positive ones.
std::optional<double> cut_time(const SurfaceOfRevolution& surface, double r0,
                               double initial_angle,
                               const CutSearchOptions& options = {});

CutLocusResult cut_locus(const SurfaceOfRevolution& surface, double r0,
                         const CutSearchOptions& options = {});

struct GvmVerification {
  bool pass = false;
  std::vector<CutLocusResult> loci;
};

// Passes when every base radius yields an empty cut locus, a single point,
// or a subarc of the opposite meridian.
GvmVerification verify_gvm(const SurfaceOfRevolution& surface,
                           const std::vector<double>& base_radii,
                           const CutSearchOptions& options = {});

struct DistanceOptions {
  int fan_size = 256;          // at least 64
  double match_radius = 1e-4;  // intrinsic approach that counts as a hit
  double horizon = 0.0;        // 0 derives a horizon from an upper-bound path
  ExecMode mode = ExecMode::openmp;
};

// Geodesic distance between (r_p, theta_p) and (r_q, theta_q): the best
// arrival over a fan from p, refined around the closest approach.  The
// result upper-bounds the true distance.  Throws NumericError, quoting the
// best bound found, when no fan member approaches the target.
double distance(const SurfaceOfRevolution& surface, double r_p, double theta_p,
                double r_q, double theta_q, const DistanceOptions& options = {});

}  // namespace revolve
