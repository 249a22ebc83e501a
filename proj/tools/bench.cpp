// Compares the OpenMP batch kernels against the serial reference on the
// workloads that dominate real runs: half-period tables, condition sweeps,
// and cut-locus fans.  The two paths write into preallocated slots, so the
// outputs must agree bit for bit; the benchmark verifies that while timing
// both.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "revolve/conditions.hpp"
#include "revolve/constructors.hpp"
#include "revolve/cutlocus.hpp"
#include "revolve/geodesic.hpp"
#include "revolve/parallel.hpp"

using namespace revolve;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

void report(const char* name, double serial, double openmp, bool identical) {
  std::printf("%-28s serial %7.2fs  openmp %7.2fs  speedup %5.2fx  %s\n", name,
              serial, openmp, openmp > 0.0 ? serial / openmp : 0.0,
              identical ? "outputs identical" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", max_threads());
  ProfileFunction m0 = make_m0();
  SurfaceOfRevolution surface{m0};

  {
    std::vector<double> nus(161);
    for (std::size_t i = 0; i < nus.size(); ++i)
      nus[i] = 0.02 + 0.46 * static_cast<double>(i) /
                          static_cast<double>(nus.size() - 1);
    std::vector<HalfPeriodSample> a, b;
    double ts = timed([&] {
      a = half_period_table(m0.ref(), nus, true, ExecMode::serial);
    });
    double tp = timed([&] {
      b = half_period_table(m0.ref(), nus, true, ExecMode::openmp);
    });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = a[i].phi == b[i].phi && a[i].psi == b[i].psi &&
             a[i].phi_prime == b[i].phi_prime &&
             a[i].psi_prime == b[i].psi_prime;
    report("half-period table (161 nu)", ts, tp, same);
  }

  {
    ConditionOptions serial_opts, openmp_opts;
    serial_opts.mode = ExecMode::serial;
    openmp_opts.mode = ExecMode::openmp;
    ConditionReport a, b;
    double ts = timed([&] {
      a = check_conditions(surface, ConditionSet::m1_to_m4, serial_opts);
    });
    double tp = timed([&] {
      b = check_conditions(surface, ConditionSet::m1_to_m4, openmp_opts);
    });
    bool same = a.checks.size() == b.checks.size() &&
                a.min_margin == b.min_margin;
    for (std::size_t i = 0; same && i < a.checks.size(); ++i)
      same = a.checks[i].margin == b.checks[i].margin &&
             a.checks[i].worst_x == b.checks[i].worst_x;
    report("condition sweep M1-M4", ts, tp, same);
  }

  {
    CutSearchOptions serial_opts, openmp_opts;
    serial_opts.fan_size = openmp_opts.fan_size = 192;
    serial_opts.mode = ExecMode::serial;
    openmp_opts.mode = ExecMode::openmp;
    CutLocusResult a, b;
    double ts = timed([&] { a = cut_locus(surface, 2.0, serial_opts); });
    double tp = timed([&] { b = cut_locus(surface, 2.0, openmp_opts); });
    bool same = a.kind == b.kind && a.points.size() == b.points.size();
    for (std::size_t i = 0; same && i < a.points.size(); ++i)
      same = a.points[i].r == b.points[i].r &&
             a.points[i].theta == b.points[i].theta &&
             a.points[i].t == b.points[i].t;
    report("cut locus fan 192", ts, tp, same);
  }

  return 0;
}
