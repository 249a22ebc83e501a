#include "revolve/cutlocus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace revolve {

const char* cut_locus_kind_name(CutLocusKind kind) {
  switch (kind) {
    case CutLocusKind::empty: return "empty";
    case CutLocusKind::single_point: return "single-point";
    case CutLocusKind::opposite_meridian_subarc:
      return "opposite-meridian-subarc";
    case CutLocusKind::other: return "other";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

double wrap_pi(double x) { return std::remainder(x, 2.0 * kPi); }

double wrap_2pi(double x) {
  double y = std::fmod(x, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y;
}

// One fan member: a geodesic shot from the base point, stored as decimated
// samples plus the metadata needed to restart integration exactly from any
// stored state.
struct AtlasMember {
  double sigma = 0.0;
  double nu = 0.0;
  double length = 0.0;
  bool pole_hit = false;
  GeodesicPath meta;  // samples cleared; keeps r0/angle/nu for re-shoots
  std::vector<double> t, r, th, rp, mv;
  std::vector<std::pair<std::size_t, std::size_t>> segs;  // monotone-r runs
};

struct Atlas {
  const Profile* prof = nullptr;
  SurfaceKind kind = SurfaceKind::plane;
  double r0 = 0.0;
  double horizon = 0.0;
  double dsig = 0.0;
  std::optional<double> peak_x;
  double peak_m = 0.0;
  std::vector<AtlasMember> members;
};

// Max of the profile over [a, b] for a profile with at most one interior
// peak, from the endpoint values and the peak.
double m_between(const Atlas& atlas, double ma, double mb, double ra,
                 double rb) {
  double mm = std::max(ma, mb);
  if (atlas.peak_x) {
    double lo = std::min(ra, rb);
    double hi = std::max(ra, rb);
    if (lo < *atlas.peak_x && *atlas.peak_x < hi)
      mm = std::max(mm, atlas.peak_m);
  }
  return mm;
}

void extract_member(const Profile& prof, AtlasMember* mem, GeodesicPath path,
                    double keep_spacing) {
  mem->nu = path.nu;
  mem->length = path.length;
  mem->pole_hit = path.pole_hit;
  std::size_t n = path.samples.size();
  mem->t.reserve(n);
  double last_kept = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const GeodesicState& s = path.samples[i];
    if (i + 1 < n && s.t - last_kept < keep_spacing) continue;
    last_kept = s.t;
    mem->t.push_back(s.t);
    mem->r.push_back(s.r);
    mem->th.push_back(s.theta);
    mem->rp.push_back(s.rprime);
    mem->mv.push_back(prof.eval(s.r, 0));
  }
  std::size_t kept = mem->t.size();
  std::size_t start = 0;
  for (std::size_t i = 1; i + 1 < kept; ++i) {
    bool up_before = mem->r[i] >= mem->r[i - 1];
    bool up_after = mem->r[i + 1] >= mem->r[i];
    if (up_before != up_after) {
      mem->segs.emplace_back(start, i);
      start = i;
    }
  }
  if (kept > 0) mem->segs.emplace_back(start, kept - 1);
  mem->meta = std::move(path);
  mem->meta.samples.clear();
  mem->meta.samples.shrink_to_fit();
}

// Exact state of a member at arc length t: restart the integrator from the
// last stored sample at or before t.
GeodesicState state_on(const Profile& prof, const AtlasMember& mem, double t) {
  if (t <= 0.0) {
    GeodesicState s;
    s.t = 0.0;
    s.r = mem.r.front();
    s.theta = mem.th.front();
    s.rprime = mem.rp.front();
    return s;
  }
  if (t > mem.length) t = mem.length;
  std::size_t i =
      static_cast<std::size_t>(std::upper_bound(mem.t.begin(), mem.t.end(), t) -
                               mem.t.begin());
  if (i > 0) --i;
  double dt = t - mem.t[i];
  if (dt < 1e-12) {
    GeodesicState s;
    s.t = mem.t[i];
    s.r = mem.r[i];
    s.theta = mem.th[i];
    s.rprime = mem.rp[i];
    return s;
  }
  double sin_sigma = mem.mv[i] > 0.0 ? mem.nu / mem.mv[i] : 0.0;
  sin_sigma = std::clamp(sin_sigma, 0.0, 1.0);
  double sigma = std::atan2(sin_sigma, mem.rp[i]);
  GeodesicPath leg = shoot(prof, mem.r[i], mem.th[i], sigma, dt);
  GeodesicState s = leg.samples.back();
  s.t += mem.t[i];
  return s;
}

struct Hit {
  double bound = kInf;
  int member = -1;  // -2 through the near pole, -3 through the far pole
  int sign = +1;    // +1 same orientation, -1 mirrored copy
  double t_v = 0.0;
  std::size_t idx = 0;
};

void consider(const Atlas& atlas, const AtlasMember& mem, std::size_t i,
              double r_q, double m_q, double th_q, int self, int k,
              double t_self, Hit* best) {
  double dr = std::abs(mem.r[i] - r_q);
  double mm = m_between(atlas, mem.mv[i], m_q, mem.r[i], r_q);
  for (int sign = +1; sign >= -1; sign -= 2) {
    if (k == self && sign == +1 && std::abs(mem.t[i] - t_self) < 1.0) continue;
    double dth = std::abs(wrap_pi(sign * mem.th[i] - th_q));
    double u = mem.t[i] + dr + mm * dth;
    if (u < best->bound) {
      best->bound = u;
      best->member = k;
      best->sign = sign;
      best->t_v = mem.t[i];
      best->idx = i;
    }
  }
}

// Best upper bound on the distance from the base point to (r_q, th_q):
// reach a stored sample of any member (or its mirror image) and close the
// remaining gap with a radial-then-parallel path.  Pole pass-throughs are
// handled in closed form.
Hit best_bound(const Atlas& atlas, double r_q, double th_q, int self,
               double t_self) {
  Hit best;
  best.bound = atlas.r0 + r_q;
  best.member = -2;
  if (atlas.kind == SurfaceKind::sphere) {
    double far = (kPi - atlas.r0) + (kPi - r_q);
    if (far < best.bound) {
      best.bound = far;
      best.member = -3;
    }
  }
  double m_q = atlas.prof->eval(r_q, 0);
  int n = static_cast<int>(atlas.members.size());
  for (int k = 0; k < n; ++k) {
    const AtlasMember& mem = atlas.members[k];
    for (const auto& seg : mem.segs) {
      std::size_t lo = seg.first;
      std::size_t hi = seg.second;
      // Segments are in increasing arc time; once the segment starts past
      // the best bound found so far it cannot improve it.
      if (mem.t[lo] >= best.bound) break;
      if (hi <= lo) {
        consider(atlas, mem, lo, r_q, m_q, th_q, self, k, t_self, &best);
        continue;
      }
      bool asc = mem.r[hi] >= mem.r[lo];
      std::size_t a = lo, b = hi;
      while (b - a > 1) {
        std::size_t mid = (a + b) / 2;
        bool go_right = asc ? (mem.r[mid] < r_q) : (mem.r[mid] > r_q);
        if (go_right)
          a = mid;
        else
          b = mid;
      }
      std::size_t w0 = a >= lo + 4 ? a - 4 : lo;
      std::size_t w1 = std::min(a + 5, hi);
      for (std::size_t i = w0; i <= w1; ++i)
        consider(atlas, mem, i, r_q, m_q, th_q, self, k, t_self, &best);
    }
  }
  return best;
}

Atlas build_atlas(const SurfaceOfRevolution& surface, double r0, int fan_size,
                  double horizon, ExecMode mode) {
  Atlas atlas;
  atlas.prof = &surface.profile.ref();
  atlas.kind = surface.kind;
  atlas.r0 = r0;
  atlas.horizon = horizon;
  atlas.peak_x = atlas.prof->peak_radius();
  atlas.peak_m = atlas.peak_x ? atlas.prof->eval(*atlas.peak_x, 0) : 0.0;
  int n = std::max(fan_size, 8);
  atlas.dsig = kPi / static_cast<double>(n);
  atlas.members.resize(static_cast<std::size_t>(n));
  const Profile& prof = *atlas.prof;
  for_each_index(static_cast<std::size_t>(n), mode, [&](std::size_t j) {
    AtlasMember& mem = atlas.members[j];
    mem.sigma = (static_cast<double>(j) + 0.5) * kPi / static_cast<double>(n);
    GeodesicPath path = shoot(prof, r0, 0.0, mem.sigma, horizon);
    extract_member(prof, &mem, std::move(path), 0.1);
  });
  return atlas;
}

double auto_horizon(const SurfaceOfRevolution& surface, double r0) {
  const Profile& prof = surface.profile.ref();
  if (surface.kind == SurfaceKind::sphere) return 2.0 * kPi;
  double peak = prof.peak_radius().value_or(1.0);
  double want = 20.0 * (r0 + peak);
  double cap = prof.eval_horizon();
  if (std::isfinite(cap)) want = std::min(want, cap - r0 - 1.0);
  if (want < 1.0)
    throw std::invalid_argument(
        "cut search: base radius too close to the profile's evaluation "
        "horizon");
  return want;
}

// Safeguarded root search on [0, hi] for an increasing g with g(0) < 0 and
// g(hi) >= 0.  Newton steps alternate with forced bisections so that a
// Newton two-cycle cannot stall the bracket.
template <typename G>
double solve_increasing(G&& eval, double hi) {
  double lo = 0.0;
  double t = hi;
  for (int it = 0; it < 120; ++it) {
    auto [g, slope] = eval(t);
    if (std::abs(g) < 1e-12) return t;
    if (g > 0.0)
      hi = t;
    else
      lo = t;
    if (hi - lo < 1e-13) break;
    double next = slope > 0.0 ? t - g / slope : lo - 1.0;
    bool take_newton =
        (it % 2 == 1) && next > lo && next < hi;
    t = take_newton ? next : 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

// First time at which theta along the member reaches the level; theta is
// strictly increasing since nu > 0.  Requires theta(hi) >= level.
std::optional<double> solve_theta_level(const Profile& prof,
                                        const AtlasMember& mem, double level,
                                        double hi) {
  return solve_increasing(
      [&](double t) {
        GeodesicState s = state_on(prof, mem, t);
        double m = prof.eval(s.r, 0);
        return std::pair<double, double>(s.theta - level,
                                         mem.nu / (m * m));
      },
      hi);
}

// First time at which the through-pole route ties the member's own arc
// length: g(t) = t - base_leg -+ r(t) is negative at 0 and positive at hi.
std::optional<double> solve_pole_tie(const Profile& prof,
                                     const AtlasMember& mem, double base_leg,
                                     int orient, double hi) {
  {
    GeodesicState s = state_on(prof, mem, hi);
    double target = orient > 0 ? base_leg + s.r : base_leg - s.r;
    if (hi - target < -1e-9) return std::nullopt;
  }
  return solve_increasing(
      [&](double t) {
        GeodesicState s = state_on(prof, mem, t);
        double target = orient > 0 ? base_leg + s.r : base_leg - s.r;
        double slope = 1.0 - (orient > 0 ? s.rprime : -s.rprime);
        return std::pair<double, double>(t - target, slope);
      },
      hi);
}

struct PairCross {
  double a = 0.0;  // arc on the fixed member
  double b = 0.0;  // arc on the partner
  bool ok = false;
};

// Crossing of the fixed member j with the (possibly mirrored) geodesic of
// initial angle sigma, near the seed arcs.  Newton on
//   r_j(a) = r_s(b),  theta_j(a) - sign theta_s(b) = 2 pi w.
PairCross pair_crossing(const Profile& prof, const AtlasMember& mj,
                        const AtlasMember& ms, int sign, double wrap,
                        double a_seed, double b_seed) {
  PairCross out;
  double a = a_seed, b = b_seed;
  for (int it = 0; it < 30; ++it) {
    GeodesicState sa = state_on(prof, mj, a);
    GeodesicState sb = state_on(prof, ms, b);
    double f1 = sa.r - sb.r;
    double f2 = sa.theta - sign * sb.theta - wrap;
    double ma = prof.eval(sa.r, 0);
    double mb = prof.eval(sb.r, 0);
    double j11 = sa.rprime;
    double j12 = -sb.rprime;
    double j21 = mj.nu / (ma * ma);
    double j22 = -static_cast<double>(sign) * ms.nu / (mb * mb);
    double det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-12) return out;
    double da = (f1 * j22 - f2 * j12) / det;
    double db = (f2 * j11 - f1 * j21) / det;
    da = std::clamp(da, -0.5, 0.5);
    db = std::clamp(db, -0.5, 0.5);
    a -= da;
    b -= db;
    if (a < 0.0 || a > mj.length || b < 0.0 || b > ms.length) return out;
    if (std::abs(f1) < 1e-11 && std::abs(f2) < 1e-11 && std::abs(da) < 1e-11 &&
        std::abs(db) < 1e-11) {
      // Both geodesics pass through the base point, which is a crossing of
      // no interest; reject convergence to it.
      if (a < 0.25 || b < 0.25) return out;
      out.a = a;
      out.b = b;
      out.ok = true;
      return out;
    }
  }
  return out;
}

// Equal-length crossing with a partner from the continuous fan family,
// located by bisection on the initial angle.  Falls back to nullopt when no
// bracket exists near the seed partner.
std::optional<double> general_polish(const Atlas& atlas, int j, const Hit& hit,
                                     double t_approx) {
  const Profile& prof = *atlas.prof;
  const AtlasMember& mj = atlas.members[j];
  GeodesicState q = state_on(prof, mj, t_approx);
  const AtlasMember& seed = atlas.members[hit.member];
  double wrap =
      2.0 * kPi *
      std::round((q.theta - hit.sign * (hit.sign > 0 ? seed.th[hit.idx]
                                                     : -seed.th[hit.idx])) /
                 (2.0 * kPi));
  // theta of the mirrored partner is -theta, so the matching condition uses
  // sign = -1 directly against the stored (positive) angles.
  double dsig = atlas.dsig;
  double len = std::min(atlas.horizon, t_approx + 2.0);

  auto member_at = [&](double sigma) {
    AtlasMember mem;
    mem.sigma = sigma;
    GeodesicPath path = shoot(prof, atlas.r0, 0.0, sigma, len);
    extract_member(prof, &mem, std::move(path), 0.1);
    return mem;
  };

  auto gap_at = [&](const AtlasMember& ms, PairCross* cross) {
    *cross = pair_crossing(prof, mj, ms, hit.sign, wrap, t_approx, hit.t_v);
    if (!cross->ok) return kInf;
    return cross->a - cross->b;
  };

  double lo = std::max(1e-6, seed.sigma - 2.0 * dsig);
  double hi = std::min(kPi - 1e-6, seed.sigma + 2.0 * dsig);
  AtlasMember m_lo = member_at(lo);
  AtlasMember m_hi = member_at(hi);
  PairCross c_lo, c_hi;
  double f_lo = gap_at(m_lo, &c_lo);
  double f_hi = gap_at(m_hi, &c_hi);
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) return std::nullopt;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  double a_best = 0.5 * (c_lo.a + c_hi.a);
  for (int it = 0; it < 40; ++it) {
    double mid = 0.5 * (lo + hi);
    AtlasMember mm = member_at(mid);
    PairCross cm;
    double fm = gap_at(mm, &cm);
    if (!std::isfinite(fm)) return std::nullopt;
    a_best = cm.a;
    if ((fm > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
    if (std::abs(fm) < 1e-11) break;
  }
  return a_best;
}

// Cut search along one member: bisection on the certified-non-minimal
// predicate, then polish through the identified partner, then comparison
// with the Jacobi conjugate time.
std::optional<CutPoint> member_cut(const Atlas& atlas, int j,
                                   const CutSearchOptions& opts) {
  const Profile& prof = *atlas.prof;
  const AtlasMember& mem = atlas.members[j];
  double t_end = mem.length;
  if (!(t_end > 0.0)) return std::nullopt;

  // The member always ties its own mirror image where it first crosses the
  // opposite meridian, so that crossing is an exact upper bound for the cut
  // time whenever theta reaches pi within the horizon.
  std::optional<double> t_pi;
  {
    GeodesicState s_end = state_on(prof, mem, t_end);
    if (s_end.theta >= kPi - 1e-9)
      t_pi = solve_theta_level(prof, mem, kPi, t_end);
  }

  // Independently, bisect the certified-non-minimal predicate to catch ties
  // with other partners (other fan members, pole pass-throughs).
  double hi_search = t_end;
  if (t_pi) hi_search = std::min(hi_search, *t_pi + 0.25);
  Hit h_hi;
  std::optional<double> t_approx;
  auto certified = [&](double t, Hit* h) {
    GeodesicState s = state_on(prof, mem, t);
    *h = best_bound(atlas, s.r, s.theta, j, t);
    return h->bound < t - opts.tol;
  };
  if (certified(hi_search, &h_hi)) {
    double lo = 0.0, hi = hi_search;
    for (int it = 0; it < 26; ++it) {
      double mid = 0.5 * (lo + hi);
      Hit h;
      if (certified(mid, &h)) {
        hi = mid;
        h_hi = h;
      } else {
        lo = mid;
      }
    }
    t_approx = hi;
  }
  if (!t_pi && !t_approx) return std::nullopt;

  double t_equal = t_pi ? *t_pi : kInf;
  if (t_approx) {
    double polished = kInf;
    double sig_gap = h_hi.member >= 0
                         ? std::abs(atlas.members[h_hi.member].sigma -
                                    mem.sigma)
                         : kInf;
    if (h_hi.member == -2) {
      auto t = solve_pole_tie(prof, mem, atlas.r0, +1, *t_approx);
      if (t) polished = *t;
    } else if (h_hi.member == -3) {
      auto t = solve_pole_tie(prof, mem, 2.0 * kPi - atlas.r0, -1, *t_approx);
      if (t) polished = *t;
    } else if (sig_gap <= 4.0 * atlas.dsig) {
      // The partner is the member's own mirror or a fan neighbor.  The
      // mirror tie is covered by the meridian crossing, and a same-side
      // neighbor crossing is too close to parallel to polish reliably.
    } else {
      auto t = general_polish(atlas, j, h_hi, *t_approx);
      if (t && std::abs(*t - *t_approx) <= 0.6) polished = *t;
    }
    // The certificate proves the cut happens at or before t_approx; keep it
    // as the fallback when no polished tie lands earlier.
    if (!std::isfinite(polished) && !(t_equal <= *t_approx + 1e-6))
      polished = *t_approx;
    t_equal = std::min(t_equal, polished);
  }

  GeodesicPath probe = mem.meta;
  probe.length = std::min(t_end, t_equal + 0.25);
  auto conj = conjugate_point_jacobi(prof, probe);

  CutPoint cp;
  if (conj && conj->t < t_equal - 1e-9) {
    cp.r = conj->r;
    cp.theta = wrap_2pi(conj->theta);
    cp.t = conj->t;
  } else {
    GeodesicState s = state_on(prof, mem, t_equal);
    cp.r = s.r;
    cp.theta = wrap_2pi(s.theta);
    cp.t = t_equal;
  }
  cp.nu = mem.nu;
  return cp;
}

CutLocusKind classify(const Atlas& atlas, const std::vector<CutPoint>& pts,
                      const CutSearchOptions& opts) {
  if (pts.empty()) return CutLocusKind::empty;
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i + 1; k < pts.size(); ++k) {
      double ma = atlas.prof->eval(pts[i].r, 0);
      double mb = atlas.prof->eval(pts[k].r, 0);
      double mm = m_between(atlas, ma, mb, pts[i].r, pts[k].r);
      double d = std::abs(pts[i].r - pts[k].r) +
                 mm * std::abs(wrap_pi(pts[i].theta - pts[k].theta));
      diam = std::max(diam, d);
      if (diam > opts.match_resolution) break;
    }
    if (diam > opts.match_resolution) break;
  }
  if (diam <= opts.match_resolution) return CutLocusKind::single_point;
  bool on_meridian = true;
  for (const CutPoint& p : pts) {
    bool near_pole =
        p.r <= 1e-6 ||
        (atlas.kind == SurfaceKind::sphere && kPi - p.r <= 1e-6);
    if (near_pole) continue;
    if (std::abs(wrap_pi(p.theta - kPi)) > opts.angular_tol) {
      on_meridian = false;
      break;
    }
  }
  return on_meridian ? CutLocusKind::opposite_meridian_subarc
                     : CutLocusKind::other;
}

void require_base(const SurfaceOfRevolution& surface, double r0) {
  if (!(r0 >= 0.0))
    throw std::invalid_argument("cut search: base radius must be nonnegative");
  if (surface.kind == SurfaceKind::sphere && !(r0 <= kPi))
    throw std::invalid_argument("cut search: base radius beyond the far pole");
}

}  // namespace

CutLocusResult cut_locus(const SurfaceOfRevolution& surface, double r0,
                         const CutSearchOptions& options) {
  require_base(surface, r0);
  CutLocusResult out;
  out.base_r = r0;
  double horizon =
      options.horizon > 0.0 ? options.horizon : auto_horizon(surface, r0);
  out.horizon = horizon;

  bool at_near_pole = r0 <= 1e-12;
  bool at_far_pole =
      surface.kind == SurfaceKind::sphere && kPi - r0 <= 1e-12;
  if (at_near_pole || at_far_pole) {
    if (surface.kind == SurfaceKind::plane) {
      out.kind = CutLocusKind::empty;
      return out;
    }
    CutPoint cp;
    cp.r = at_near_pole ? kPi : 0.0;
    cp.theta = 0.0;
    cp.t = at_near_pole ? kPi - r0 : r0;
    cp.nu = 0.0;
    out.kind = CutLocusKind::single_point;
    out.points.push_back(cp);
    out.extent_r_min = out.extent_r_max = cp.r;
    return out;
  }

  Atlas atlas =
      build_atlas(surface, r0, options.fan_size, horizon, options.mode);
  int n = static_cast<int>(atlas.members.size());
  std::vector<std::optional<CutPoint>> found(
      static_cast<std::size_t>(n));
  for_each_index(static_cast<std::size_t>(n), options.mode,
                 [&](std::size_t j) {
                   found[j] = member_cut(atlas, static_cast<int>(j), options);
                 });
  for (int j = 0; j < n; ++j)
    if (found[j]) out.points.push_back(*found[j]);

  out.kind = classify(atlas, out.points, options);
  if (!out.points.empty()) {
    out.extent_r_min = kInf;
    out.extent_r_max = -kInf;
    for (const CutPoint& p : out.points) {
      out.extent_r_min = std::min(out.extent_r_min, p.r);
      out.extent_r_max = std::max(out.extent_r_max, p.r);
    }
  }
  return out;
}

std::optional<double> cut_time(const SurfaceOfRevolution& surface, double r0,
                               double initial_angle,
                               const CutSearchOptions& options) {
  require_base(surface, r0);
  if (r0 <= 1e-12)
    throw std::invalid_argument("cut_time: base point must not be a pole");
  double sigma = std::abs(initial_angle);
  if (!(sigma <= kPi))
    throw std::invalid_argument("cut_time: initial angle outside [-pi, pi]");
  double horizon =
      options.horizon > 0.0 ? options.horizon : auto_horizon(surface, r0);
  Atlas atlas =
      build_atlas(surface, r0, options.fan_size, horizon, options.mode);
  AtlasMember extra;
  extra.sigma = sigma;
  GeodesicPath path = shoot(surface.profile.ref(), r0, 0.0, sigma, horizon);
  extract_member(surface.profile.ref(), &extra, std::move(path), 0.1);
  atlas.members.push_back(std::move(extra));
  int j = static_cast<int>(atlas.members.size()) - 1;
  auto cp = member_cut(atlas, j, options);
  if (!cp) return std::nullopt;
  return cp->t;
}

GvmVerification verify_gvm(const SurfaceOfRevolution& surface,
                           const std::vector<double>& base_radii,
                           const CutSearchOptions& options) {
  GvmVerification out;
  out.pass = true;
  for (double r0 : base_radii) {
    CutLocusResult res = cut_locus(surface, r0, options);
    if (res.kind == CutLocusKind::other) out.pass = false;
    out.loci.push_back(std::move(res));
  }
  return out;
}

double distance(const SurfaceOfRevolution& surface, double r_p, double theta_p,
                double r_q, double theta_q, const DistanceOptions& options) {
  const Profile& prof = surface.profile.ref();
  require_base(surface, r_p);
  require_base(surface, r_q);
  bool sphere = surface.kind == SurfaceKind::sphere;

  if (r_p <= 1e-12) return r_q;
  if (r_q <= 1e-12) return r_p;
  if (sphere && kPi - r_p <= 1e-12) return kPi - r_q;
  if (sphere && kPi - r_q <= 1e-12) return kPi - r_p;

  double dth = std::abs(wrap_pi(theta_q - theta_p));

  Atlas probe;  // reused for m_between only
  probe.prof = &prof;
  probe.kind = surface.kind;
  probe.peak_x = prof.peak_radius();
  probe.peak_m = probe.peak_x ? prof.eval(*probe.peak_x, 0) : 0.0;

  double mp = prof.eval(r_p, 0);
  double mq = prof.eval(r_q, 0);
  double l_path = std::abs(r_q - r_p) + m_between(probe, mp, mq, r_p, r_q) * dth;
  double best = std::min(l_path, r_p + r_q);
  if (sphere) best = std::min(best, (kPi - r_p) + (kPi - r_q));
  bool exact_hit = best == r_p + r_q ||
                   (sphere && best == (kPi - r_p) + (kPi - r_q));

  double horizon = options.horizon > 0.0 ? options.horizon : 1.2 * best + 0.5;
  double cap = prof.eval_horizon();
  if (std::isfinite(cap)) horizon = std::min(horizon, cap - r_p - 1.0);
  if (sphere) horizon = std::min(horizon, 2.0 * kPi);

  int n = std::max(options.fan_size, 64);
  std::vector<AtlasMember> fan(static_cast<std::size_t>(n));
  for_each_index(static_cast<std::size_t>(n), options.mode, [&](std::size_t i) {
    double sigma = static_cast<double>(i) * kPi / static_cast<double>(n - 1);
    sigma = std::clamp(sigma, 1e-9, kPi - 1e-9);
    fan[i].sigma = sigma;
    GeodesicPath path = shoot(prof, r_p, 0.0, sigma, horizon);
    extract_member(prof, &fan[i], std::move(path), 0.1);
  });

  // Closest approach of one member to the target, refined by ternary search
  // in chart coordinates (dr, m(r_q) dtheta).
  auto approach = [&](const AtlasMember& mem, double* t_at, double* off_sign) {
    double best_gap = kInf;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < mem.t.size(); ++i) {
      double g = std::abs(mem.r[i] - r_q) +
                 m_between(probe, mem.mv[i], mq, mem.r[i], r_q) *
                     std::abs(wrap_pi(mem.th[i] - dth));
      if (g < best_gap) {
        best_gap = g;
        bi = i;
      }
    }
    double ta = bi >= 2 ? mem.t[bi - 2] : 0.0;
    double tb = bi + 2 < mem.t.size() ? mem.t[bi + 2] : mem.length;
    auto chart = [&](double t, GeodesicState* sp) {
      GeodesicState s = state_on(prof, mem, t);
      if (sp) *sp = s;
      double a = s.r - r_q;
      double b = mq * wrap_pi(s.theta - dth);
      return std::hypot(a, b);
    };
    for (int it = 0; it < 30 && tb - ta > 1e-8; ++it) {
      double t1 = ta + (tb - ta) / 3.0;
      double t2 = tb - (tb - ta) / 3.0;
      if (chart(t1, nullptr) < chart(t2, nullptr))
        tb = t2;
      else
        ta = t1;
    }
    double t_min = 0.5 * (ta + tb);
    GeodesicState s;
    double gap = chart(t_min, &s);
    *t_at = t_min;
    double m_here = prof.eval(s.r, 0);
    double tr = s.rprime;
    double tth = mem.nu / m_here;  // m theta' in the orthonormal frame
    double dr = r_q - s.r;
    double dthm = mq * wrap_pi(dth - s.theta);
    *off_sign = tr * dthm - tth * dr;
    return gap;
  };

  std::vector<double> gaps(static_cast<std::size_t>(n));
  std::vector<double> ts(static_cast<std::size_t>(n));
  std::vector<double> offs(static_cast<std::size_t>(n));
  for_each_index(static_cast<std::size_t>(n), options.mode, [&](std::size_t i) {
    gaps[i] = approach(fan[i], &ts[i], &offs[i]);
  });

  double best_hit = kInf;
  double min_gap = kInf;
  for (int i = 0; i < n; ++i) {
    min_gap = std::min(min_gap, gaps[i]);
    if (gaps[i] <= options.match_radius)
      best_hit = std::min(best_hit, ts[i] + gaps[i]);
  }

  auto probe_sigma = [&](double sigma, double* t_at, double* gap) {
    AtlasMember mem;
    mem.sigma = sigma;
    GeodesicPath path = shoot(prof, r_p, 0.0, sigma, horizon);
    extract_member(prof, &mem, std::move(path), 0.1);
    double off;
    *gap = approach(mem, t_at, &off);
    return off;
  };

  // Each sign change of the transverse offset across the fan brackets a
  // geodesic through the target; bisect every bracket and keep the shortest
  // certified arrival.
  for (int i = 0; i + 1 < n; ++i) {
    if ((offs[i] > 0.0) == (offs[i + 1] > 0.0)) continue;
    double lo = fan[i].sigma;
    double hi = fan[i + 1].sigma;
    double f_lo = offs[i];
    double g_best, t_best;
    if (gaps[i] <= gaps[i + 1]) {
      g_best = gaps[i];
      t_best = ts[i];
    } else {
      g_best = gaps[i + 1];
      t_best = ts[i + 1];
    }
    for (int it = 0; it < 60 && g_best > 0.25 * options.match_radius; ++it) {
      double mid = 0.5 * (lo + hi);
      double t_m, g_m;
      double f_m = probe_sigma(mid, &t_m, &g_m);
      if (g_m < g_best) {
        g_best = g_m;
        t_best = t_m;
      }
      if ((f_m > 0.0) == (f_lo > 0.0)) {
        lo = mid;
        f_lo = f_m;
      } else {
        hi = mid;
      }
    }
    min_gap = std::min(min_gap, g_best);
    if (g_best <= options.match_radius)
      best_hit = std::min(best_hit, t_best + g_best);
  }

  if (std::isfinite(best_hit)) return std::min(best, best_hit);
  if (exact_hit) return best;

  std::ostringstream msg;
  msg << "distance: no fan member approaches the target within "
      << options.match_radius << "; best bound " << best
      << ", best approach gap " << min_gap;
  throw NumericError(msg.str());
}

}  // namespace revolve
