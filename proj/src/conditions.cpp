#include "revolve/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "revolve/gauss.hpp"
#include "revolve/geodesic.hpp"

namespace revolve {

const char* condition_set_name(ConditionSet set) {
  switch (set) {
    case ConditionSet::m1_to_m4: return "M1-M4";
    case ConditionSet::m5_m6: return "M5-M6";
    case ConditionSet::a1_to_a3: return "A1-A3";
    case ConditionSet::empty_cut_locus: return "empty-cut-locus";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int clamp_density(int spu) { return std::max(spu, 33); }

std::vector<double> uniform_grid(double a, double b, int spu) {
  double len = b - a;
  long n = std::lround(std::ceil(len * static_cast<double>(spu - 1)));
  n = std::max(n, 32L);
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = a + len * static_cast<double>(i) / static_cast<double>(n);
  x.front() = a;
  x.back() = b;
  return x;
}

template <class F>
std::vector<double> map_grid(const std::vector<double>& x, ExecMode mode,
                             const F& f) {
  std::vector<double> v(x.size());
  for_each_index(x.size(), mode, [&](std::size_t i) { v[i] = f(x[i]); });
  return v;
}

// Derivative of the Gaussian curvature G = -m''/m, arranged so that exact
// cancellations (round sphere) survive in floating point.
double curvature_slope(const Profile& p, double x) {
  double m = p.eval(x, 0);
  double m1 = p.eval(x, 1);
  double m2 = p.eval(x, 2);
  double m3 = p.eval(x, 3);
  return -(m3 / m) + (m2 / m) * (m1 / m);
}

void decimate(const std::vector<double>& x, const std::vector<double>& v,
              ConditionCheck* c) {
  std::size_t n = x.size();
  if (n == 0) return;
  std::size_t stride = std::max<std::size_t>(1, n / 256);
  for (std::size_t i = 0; i < n; i += stride) {
    c->grid_x.push_back(x[i]);
    c->grid_value.push_back(v[i] + 0.0);
  }
  if ((n - 1) % stride != 0) {
    c->grid_x.push_back(x[n - 1]);
    c->grid_value.push_back(v[n - 1] + 0.0);
  }
}

// Bound on how far the sampled minimum can undershoot the true minimum in
// the grid cells around `at`: second differences estimate the curvature of
// the quantity, and a C^2 function dips at most |Q''| h^2 / 8 inside a cell.
double local_dip(const std::vector<double>& v, std::size_t at) {
  std::size_t n = v.size();
  if (n < 3) return 0.0;
  double dip = 0.0;
  std::size_t lo = at > 2 ? at - 2 : 1;
  std::size_t hi = std::min(at + 2, n - 2);
  for (std::size_t j = lo; j <= hi && j + 1 < n; ++j) {
    double d2 = v[j - 1] - 2.0 * v[j] + v[j + 1];
    dip = std::max(dip, std::abs(d2) / 8.0);
  }
  return dip;
}

// Weak sign check: the condition holds when the quantity is >= 0 at every
// sample.  `noise` holds optional pointwise evaluation-error bounds.
ConditionCheck finish_weak(std::string id, const std::vector<double>& x,
                           const std::vector<double>& v,
                           const std::vector<double>& noise,
                           std::string note) {
  ConditionCheck c;
  c.id = std::move(id);
  c.note = std::move(note);
  std::size_t n = v.size();
  double sup = 0.0;
  for (double w : v) sup = std::max(sup, std::abs(w));
  double tol = 1e-9 * std::max(1.0, sup);
  c.tolerance = tol;
  std::size_t argmin = 0;
  double pess = kInf;
  double opti = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    double ni = noise.empty() ? 0.0 : noise[i];
    if (v[i] - ni < pess) {
      pess = v[i] - ni;
      argmin = i;
    }
    opti = std::min(opti, v[i] + ni);
  }
  c.margin = pess + tol;
  c.worst_x = x[argmin];
  c.worst_value = v[argmin] + 0.0;
  c.grid_error = local_dip(v, argmin);
  if (opti + tol < 0.0) {
    c.verdict = Verdict::fail;
  } else if (c.margin < 0.0) {
    c.verdict = Verdict::inconclusive;
    c.note += "; minimum within evaluation noise";
  } else if (c.margin < 10.0 * c.grid_error) {
    c.verdict = Verdict::inconclusive;
    c.note += "; margin below grid resolution";
  } else {
    c.verdict = Verdict::pass;
  }
  decimate(x, v, &c);
  return c;
}

// Strict scalar check: the condition requires value > 0 and the value comes
// from a closed-form limit, so there is no grid error and equality fails.
ConditionCheck finish_strict_scalar(std::string id, double x, double value,
                                    std::string note) {
  ConditionCheck c;
  c.id = std::move(id);
  c.note = std::move(note);
  double tol = 1e-9 * std::max(1.0, std::abs(value));
  c.tolerance = tol;
  c.margin = value - tol;
  c.worst_x = x;
  c.worst_value = value;
  c.grid_error = 0.0;
  c.verdict = c.margin > 0.0 ? Verdict::pass : Verdict::fail;
  c.grid_x.push_back(x);
  c.grid_value.push_back(value);
  return c;
}

int verdict_rank(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::inconclusive: return 1;
    case Verdict::fail: return 2;
  }
  return 2;
}

ConditionReport assemble(ConditionSet set, std::vector<ConditionCheck> checks) {
  ConditionReport r;
  r.set = set;
  r.checks = std::move(checks);
  r.verdict = Verdict::pass;
  r.min_margin = kInf;
  for (const ConditionCheck& c : r.checks) {
    if (verdict_rank(c.verdict) > verdict_rank(r.verdict)) r.verdict = c.verdict;
    r.min_margin = std::min(r.min_margin, c.margin);
  }
  if (r.checks.empty()) {
    r.verdict = Verdict::inconclusive;
    r.min_margin = 0.0;
  }
  return r;
}

double pick_horizon(const Profile& p, const ConditionOptions& opt, double r1) {
  double want = opt.horizon > 0.0
                    ? opt.horizon
                    : std::max(50.0, std::isfinite(r1) ? r1 + 20.0 : 50.0);
  return std::min(want, p.eval_horizon());
}

// 1 + m'(x) / m'(xi(m(x))) where xi inverts m on the increasing branch,
// together with a bound on its evaluation error.  The error is dominated by
// the inverse's residual |m(xi) - nu| <= 1e-12 max(1, nu) amplified through
// the near-flat slope at xi.
struct InverseRatio {
  double value = 0.0;
  double noise = 0.0;
};

InverseRatio mirror_expansion(const Profile& p, double x) {
  double nu = p.eval(x, 0);
  double xi = branch_inverse(p, Branch::increasing, nu);
  double mpx = p.eval(x, 1);
  double mpxi = p.eval(xi, 1);
  double d = mpx / mpxi;
  double dxi = 1e-12 * std::max(1.0, std::abs(nu)) / std::abs(mpxi);
  InverseRatio out;
  out.value = 1.0 + d;
  out.noise = std::abs(mpx) * std::abs(p.eval(xi, 2)) * dxi / (mpxi * mpxi) +
              1e-15 * (1.0 + std::abs(d));
  return out;
}

template <class F>
double bisect_sign_change(const F& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm >= 0.0) == (flo >= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ConditionReport run_m1_m4(const SurfaceOfRevolution& surface,
                          const ConditionOptions& opt) {
  ProfileFunction normalized = surface.profile.ref().peak_radius()
                                   ? normalize(surface.profile)
                                   : surface.profile;
  const Profile& P = normalized.ref();
  int spu = clamp_density(opt.samples_per_unit);
  double delta = 1.0 / static_cast<double>(spu - 1);
  auto peak = P.peak_radius();
  double r1 = peak ? P.second_critical_radius() : kInf;
  double xh = pick_horizon(P, opt, r1);
  std::vector<ConditionCheck> checks;

  {
    auto xs = uniform_grid(0.0, 1.0, spu);
    auto vs = map_grid(xs, opt.mode, [&](double x) {
      if (x == 1.0) return -P.eval(1.0, 2);
      return P.eval(x, 1) / (1.0 - x);
    });
    std::string note = "quantity m'(x)/(1-x) on [0,1], endpoint limit -m''(1)";
    auto raw_peak = surface.profile.ref().peak_radius();
    if (raw_peak && std::abs(*raw_peak - 1.0) > 1e-12)
      note += "; profile rescaled by lambda=" + num_str(*raw_peak);
    checks.push_back(finish_weak("M.1a", xs, vs, {}, std::move(note)));
  }

  if (std::isfinite(r1)) {
    auto xs = uniform_grid(1.0, r1, spu);
    double q1 = -P.eval(1.0, 2) / (r1 - 1.0);
    double qr = P.eval(r1, 2) / (r1 - 1.0);
    auto vs = map_grid(xs, opt.mode, [&](double x) {
      if (x == 1.0) return q1;
      if (x == r1) return qr;
      return -P.eval(x, 1) / ((x - 1.0) * (r1 - x));
    });
    checks.push_back(finish_weak(
        "M.1b", xs, vs, {},
        "quantity -m'(x)/((x-1)(r1-x)) on [1,r1], r1=" + num_str(r1)));
  } else {
    auto xs = uniform_grid(1.0, xh, spu);
    auto vs = map_grid(xs, opt.mode, [&](double x) {
      if (x == 1.0) return -P.eval(1.0, 2);
      return -P.eval(x, 1) / (x - 1.0);
    });
    checks.push_back(finish_weak(
        "M.1b", xs, vs, {},
        "quantity -m'(x)/(x-1); r1 = inf, window [1," + num_str(xh) + "]"));
  }

  if (std::isfinite(r1)) {
    auto xs = uniform_grid(r1, xh, spu);
    auto vs = map_grid(xs, opt.mode, [&](double x) { return P.eval(x, 2); });
    checks.push_back(finish_weak(
        "M.1c", xs, vs, {},
        "quantity m''(x) on [r1," + num_str(xh) + "]"));
  }

  {
    auto xs = uniform_grid(delta, 1.0, spu);
    auto vs = map_grid(xs, opt.mode,
                       [&](double x) { return -curvature_slope(P, x); });
    checks.push_back(finish_weak(
        "M.2", xs, vs, {},
        "quantity -(d/dx)(-m''/m) on (0,1]"));
  }

  {
    double m_peak_val = P.eval(1.0, 0);
    double m_end = P.m_end_limit();
    double span = m_peak_val - m_end;
    double lo = m_end + 200.0 * opt.nu_gap * span;
    double hi = m_peak_val * (1.0 - opt.nu_gap);
    if (!(span > 0.0) || !(lo < hi)) {
      ConditionCheck c;
      c.id = "M.3";
      c.verdict = Verdict::inconclusive;
      c.note = "half-period range degenerate: m(1)=" + num_str(m_peak_val) +
               ", end limit " + num_str(m_end);
      checks.push_back(std::move(c));
    } else {
      int nn = std::max(opt.nu_samples, 5);
      std::vector<double> nus(static_cast<std::size_t>(nn));
      for (int i = 0; i < nn; ++i)
        nus[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) /
                     static_cast<double>(nn - 1);
      auto vs = map_grid(nus, opt.mode, [&](double nu) {
        return -half_period_derivative(P, HalfPeriodKind::psi, nu);
      });
      checks.push_back(finish_weak(
          "M.3", nus, vs, {},
          "quantity -psi'(nu) on [" + num_str(lo) + "," + num_str(hi) +
              "]; upper gap " + num_str(opt.nu_gap) +
              " relative to m(1), lower gap " + num_str(200.0 * opt.nu_gap) +
              " of the range"));
    }
  }

  if (!peak) {
    ConditionCheck c;
    c.id = "M.4";
    c.verdict = Verdict::inconclusive;
    c.note = "skipped: no critical radius, the mirror map is undefined";
    checks.push_back(std::move(c));
  } else {
    double right = std::isfinite(r1) ? r1 : xh;
    auto xs = uniform_grid(1.0 + delta, right, spu);
    std::vector<double> vs(xs.size());
    std::vector<double> ns(xs.size());
    for_each_index(xs.size(), opt.mode, [&](std::size_t i) {
      InverseRatio q = mirror_expansion(P, xs[i]);
      vs[i] = q.value / (xs[i] - 1.0);
      ns[i] = q.noise / (xs[i] - 1.0);
    });
    checks.push_back(finish_weak(
        "M.4", xs, vs, ns,
        "quantity (1+(xi o m)')/(x-1) on (1," + num_str(right) + "]"));
  }

  return assemble(ConditionSet::m1_to_m4, std::move(checks));
}

ConditionReport run_m5_m6(const SurfaceOfRevolution& surface,
                          const ConditionOptions& opt) {
  const Profile& P = surface.profile.ref();
  int spu = clamp_density(opt.samples_per_unit);
  double delta = 1.0 / static_cast<double>(spu - 1);
  auto peak = P.peak_radius();
  std::vector<ConditionCheck> checks;

  if (!peak) {
    ConditionCheck c5;
    c5.id = "M.5";
    c5.verdict = Verdict::fail;
    c5.margin = -1.0;
    c5.note = "no critical radius: m' never vanishes";
    checks.push_back(std::move(c5));
    ConditionCheck c6;
    c6.id = "M.6";
    c6.verdict = Verdict::inconclusive;
    c6.note = "skipped: no critical radius";
    checks.push_back(std::move(c6));
    return assemble(ConditionSet::m5_m6, std::move(checks));
  }

  double lam = *peak;
  double xh = pick_horizon(P, opt, lam);

  {
    auto xs = uniform_grid(0.0, lam, spu);
    auto vs = map_grid(xs, opt.mode, [&](double x) {
      if (x == lam) return -P.eval(lam, 2);
      return P.eval(x, 1) / (lam - x);
    });
    checks.push_back(finish_weak(
        "M.5a", xs, vs, {},
        "quantity m'(x)/(lambda-x) on [0,lambda], lambda=" + num_str(lam)));
  }

  checks.push_back(finish_strict_scalar(
      "M.5b", lam, -P.eval(lam, 2),
      "strict local maximum: quantity -m''(lambda), lambda=" + num_str(lam)));

  double r_dc = kInf;
  {
    auto xs = uniform_grid(lam + delta, xh, spu);
    auto vs = map_grid(xs, opt.mode,
                       [&](double x) { return curvature_slope(P, x); });
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (vs[i] >= 0.0) {
        if (i == 0) {
          r_dc = xs[0];
        } else {
          r_dc = bisect_sign_change(
              [&](double x) { return curvature_slope(P, x); }, xs[i - 1],
              xs[i]);
        }
        break;
      }
    }
  }

  if (std::isfinite(r_dc)) {
    {
      auto xs = uniform_grid(delta, r_dc - delta, spu);
      auto vs = map_grid(xs, opt.mode,
                         [&](double x) { return -curvature_slope(P, x); });
      checks.push_back(finish_weak(
          "M.6a", xs, vs, {},
          "quantity -(d/dx)(-m''/m) on (0,r_dc); r_dc=" + num_str(r_dc) +
              " (first sign change of the curvature slope)"));
    }
    {
      auto xs = uniform_grid(r_dc, xh, spu);
      auto vs = map_grid(xs, opt.mode, [&](double x) { return P.eval(x, 2); });
      checks.push_back(finish_weak(
          "M.6b", xs, vs, {},
          "quantity m''(x) on [r_dc," + num_str(xh) + "], r_dc=" +
              num_str(r_dc)));
    }
  } else {
    {
      auto xs = uniform_grid(delta, xh, spu);
      auto vs = map_grid(xs, opt.mode,
                         [&](double x) { return -curvature_slope(P, x); });
      checks.push_back(finish_weak(
          "M.6a", xs, vs, {},
          "quantity -(d/dx)(-m''/m) on (0," + num_str(xh) +
              "]; no curvature-slope sign change within the window"));
    }
    {
      auto xs = uniform_grid(std::max(lam, xh - 5.0), xh, spu);
      auto vs = map_grid(xs, opt.mode, [&](double x) { return P.eval(x, 2); });
      ConditionCheck c = finish_weak(
          "M.6b", xs, vs, {},
          "quantity m''(x) on the tail window [" +
              num_str(std::max(lam, xh - 5.0)) + "," + num_str(xh) + "]");
      if (c.verdict == Verdict::pass) {
        c.verdict = Verdict::inconclusive;
        c.note += "; convexity beyond the horizon unverified";
      }
      checks.push_back(std::move(c));
    }
  }

  return assemble(ConditionSet::m5_m6, std::move(checks));
}

// The condition allows either sign: the quantity must be >= 0 everywhere or
// <= 0 everywhere.  A branch survives unless some sample contradicts it
// beyond its noise bound; a surviving branch's margin is the worst certified
// slack of its weak inequality.  When exactly one branch survives, the
// contradiction of the other branch doubles as positive support for it.
ConditionCheck a3_check(const std::vector<double>& x,
                        const std::vector<double>& v,
                        const std::vector<double>& nz) {
  ConditionCheck c;
  c.id = "A.3";
  std::size_t n = v.size();
  double sup = 0.0;
  for (double w : v) sup = std::max(sup, std::abs(w));
  double tol = 1e-9 * std::max(1.0, sup);
  c.tolerance = tol;
  std::size_t ip = 0, im = 0;
  double slack_p = kInf, slack_m = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    double p = v[i] + nz[i];
    double q = -v[i] + nz[i];
    if (p < slack_p) {
      slack_p = p;
      ip = i;
    }
    if (q < slack_m) {
      slack_m = q;
      im = i;
    }
  }
  double viol_plus = slack_p + tol;
  double viol_minus = slack_m + tol;
  bool plus_ok = viol_plus >= 0.0;
  bool minus_ok = viol_minus >= 0.0;
  const char* base = "quantity (1+(xi o m)')/((x-r_e)(pi-x)^2) on (r_e,pi)";
  if (plus_ok && minus_ok) {
    c.verdict = Verdict::pass;
    c.margin = std::min(viol_plus, viol_minus);
    std::size_t w = viol_plus <= viol_minus ? ip : im;
    c.worst_x = x[w];
    c.worst_value = v[w] + 0.0;
    c.grid_error = local_dip(v, w);
    c.note = std::string(base) +
             "; consistent with either branch: mirror map is an isometry "
             "within evaluation noise";
  } else if (plus_ok || minus_ok) {
    std::size_t w = plus_ok ? ip : im;
    double margin = plus_ok ? viol_plus : viol_minus;
    double dip = local_dip(v, w);
    c.margin = margin;
    c.worst_x = x[w];
    c.worst_value = v[w] + 0.0;
    c.grid_error = dip;
    c.note = std::string(base) + (plus_ok ? "; branch: 1+(xi o m)' >= 0"
                                          : "; branch: 1+(xi o m)' <= 0");
    if (margin < 10.0 * dip) {
      c.verdict = Verdict::inconclusive;
      c.note += "; margin below grid resolution";
    } else {
      c.verdict = Verdict::pass;
    }
  } else {
    c.verdict = Verdict::fail;
    c.margin = std::max(viol_plus, viol_minus);
    std::size_t w = viol_plus >= viol_minus ? ip : im;
    c.worst_x = x[w];
    c.worst_value = v[w] + 0.0;
    c.grid_error = local_dip(v, w);
    c.note = std::string(base) + "; both sign branches violated";
  }
  decimate(x, v, &c);
  return c;
}

ConditionReport run_a1_a3(const SurfaceOfRevolution& surface,
                          const ConditionOptions& opt) {
  const Profile& P = surface.profile.ref();
  const double pi = Profile::pi();
  int spu = clamp_density(opt.samples_per_unit);
  double delta = 1.0 / static_cast<double>(spu - 1);
  auto peak = P.peak_radius();
  std::vector<ConditionCheck> checks;

  if (!peak) {
    ConditionCheck c;
    c.id = "A.1";
    c.verdict = Verdict::fail;
    c.margin = -1.0;
    c.note = "no equator: m' never vanishes";
    checks.push_back(std::move(c));
    return assemble(ConditionSet::a1_to_a3, std::move(checks));
  }
  double re = *peak;

  {
    auto xl = uniform_grid(0.0, re, spu);
    auto vl = map_grid(xl, opt.mode, [&](double x) {
      if (x == re) return -P.eval(re, 2);
      return P.eval(x, 1) / (re - x);
    });
    auto xr = uniform_grid(re, pi, spu);
    auto vr = map_grid(xr, opt.mode, [&](double x) {
      if (x == re) return -P.eval(re, 2);
      return -P.eval(x, 1) / (x - re);
    });
    xl.insert(xl.end(), xr.begin(), xr.end());
    vl.insert(vl.end(), vr.begin(), vr.end());
    checks.push_back(finish_weak(
        "A.1", xl, vl, {},
        "unique equator r_e=" + num_str(re) +
            "; quantity m'(x)/(r_e-x) before it, -m'(x)/(x-r_e) after"));
  }

  {
    auto xs = uniform_grid(delta, re - delta, spu);
    auto vs = map_grid(xs, opt.mode, [&](double x) {
      return -curvature_slope(P, x) / (re - x);
    });
    checks.push_back(finish_weak(
        "A.2-left", xs, vs, {},
        "quantity -(d/dx)(-m''/m)/(r_e-x) on (0,r_e)"));
  }
  {
    auto xs = uniform_grid(re + delta, pi - delta, spu);
    auto vs = map_grid(xs, opt.mode, [&](double x) {
      return curvature_slope(P, x) / (x - re);
    });
    checks.push_back(finish_weak(
        "A.2-right", xs, vs, {},
        "quantity (d/dx)(-m''/m)/(x-r_e) on (r_e,pi)"));
  }

  {
    auto xs = uniform_grid(re + 8.0 * delta, pi - delta, spu);
    std::vector<double> vs(xs.size());
    std::vector<double> ns(xs.size());
    for_each_index(xs.size(), opt.mode, [&](std::size_t i) {
      InverseRatio q = mirror_expansion(P, xs[i]);
      double scale = (xs[i] - re) * (pi - xs[i]) * (pi - xs[i]);
      vs[i] = q.value / scale;
      ns[i] = q.noise / scale;
    });
    checks.push_back(a3_check(xs, vs, ns));
  }

  return assemble(ConditionSet::a1_to_a3, std::move(checks));
}

ConditionReport run_empty_cut_locus(const SurfaceOfRevolution& surface,
                                    const ConditionOptions& opt) {
  const Profile& P = surface.profile.ref();
  int spu = clamp_density(opt.samples_per_unit);
  auto peak = P.peak_radius();
  double r1 = peak ? P.second_critical_radius() : kInf;
  double xh = pick_horizon(P, opt, r1);
  double beta = P.mprime_end_limit();
  std::vector<ConditionCheck> checks;

  auto xs = uniform_grid(1.0, xh, spu);
  auto ms = map_grid(xs, opt.mode, [&](double x) { return P.eval(x, 0); });

  if (beta > 1e-9) {
    ConditionCheck c = finish_strict_scalar(
        "E.1", xh, beta,
        "m' -> " + num_str(beta) + " > 0: m is unbounded, liminf m = inf");
    checks.push_back(std::move(c));
  } else {
    double liminf = P.m_end_limit();
    double grid_min = kInf;
    for (double m : ms) grid_min = std::min(grid_min, m);
    double used = std::min(liminf, grid_min);
    ConditionCheck c = finish_strict_scalar(
        "E.1", xh, used,
        "liminf m = " + num_str(used) +
            (liminf <= grid_min ? " (closed-form tail limit)"
                                : " (grid minimum)"));
    c.grid_x.clear();
    c.grid_value.clear();
    decimate(xs, ms, &c);
    checks.push_back(std::move(c));
  }

  {
    auto inv_sq = [&](double x) {
      double m = P.eval(x, 0);
      return 1.0 / (m * m);
    };
    int p1 = static_cast<int>(std::ceil((xh - 1.0) / 0.5));
    double i1 = detail::gauss16_panels(inv_sq, 1.0, xh, std::max(p1, 1));
    double x2 = std::min(2.0 * xh, P.eval_horizon());
    double i2 = i1;
    if (x2 > xh) {
      int p2 = static_cast<int>(std::ceil((x2 - xh) / 0.5));
      i2 += detail::gauss16_panels(inv_sq, xh, x2, std::max(p2, 1));
    }
    std::string wit = "; integral of m^-2 over [1," + num_str(xh) +
                      "]: " + num_str(i1) + ", over [1," + num_str(x2) +
                      "]: " + num_str(i2);
    if (beta > 1e-9) {
      checks.push_back(finish_strict_scalar(
          "E.2", xh, beta,
          "m grows linearly (slope limit " + num_str(beta) +
              "): integral of m^-2 converges" + wit));
    } else {
      checks.push_back(finish_strict_scalar(
          "E.2", xh, beta,
          "m' -> 0: m stays bounded or sublinear, integral of m^-2 diverges" +
              wit));
    }
  }

  return assemble(ConditionSet::empty_cut_locus, std::move(checks));
}

}  // namespace

ConditionReport check_conditions(const SurfaceOfRevolution& surface,
                                 ConditionSet set,
                                 const ConditionOptions& options) {
  bool sphere = surface.kind == SurfaceKind::sphere;
  switch (set) {
    case ConditionSet::a1_to_a3:
      if (!sphere)
        throw std::invalid_argument(
            "check_conditions: A.1-A.3 need a sphere-kind surface");
      return run_a1_a3(surface, options);
    case ConditionSet::m1_to_m4:
      if (sphere)
        throw std::invalid_argument(
            "check_conditions: M.1-M.4 need a plane-kind surface");
      return run_m1_m4(surface, options);
    case ConditionSet::m5_m6:
      if (sphere)
        throw std::invalid_argument(
            "check_conditions: M.5-M.6 need a plane-kind surface");
      return run_m5_m6(surface, options);
    case ConditionSet::empty_cut_locus:
      if (sphere)
        throw std::invalid_argument(
            "check_conditions: the empty-cut-locus criterion needs a "
            "plane-kind surface");
      return run_empty_cut_locus(surface, options);
  }
  throw std::invalid_argument("check_conditions: unknown condition set");
}

}  // namespace revolve
