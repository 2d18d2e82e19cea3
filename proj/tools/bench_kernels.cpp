// Timing harness comparing the OpenMP grid kernels against their serial
// reference implementations. The serial twins are the ground truth the
// parallel paths must reproduce bit-for-bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bartnik/collar.hpp"
#include "bartnik/parallel.hpp"
#include "bartnik/path.hpp"
#include "bartnik/smoothstep.hpp"

using namespace bartnik;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class F>
double time_best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

AxisymmetricPath make_path(std::size_t ns, std::size_t nt) {
  AxisymmetricPath path;
  path.freeze_eps = 0.1;
  path.s_axis.resize(ns);
  path.theta_axis.resize(nt);
  path.psi.resize(ns * nt);
  for (std::size_t i = 0; i < ns; ++i) {
    path.s_axis[i] = static_cast<double>(i) / (ns - 1);
  }
  for (std::size_t j = 0; j < nt; ++j) {
    path.theta_axis[j] = M_PI * static_cast<double>(j) / (nt - 1);
  }
  for (std::size_t i = 0; i < ns; ++i) {
    const double w = 1.0 - smoothstep(path.s_axis[i] / 0.9);
    for (std::size_t j = 0; j < nt; ++j) {
      path.psi[i * nt + j] = 0.02 * w * std::cos(path.theta_axis[j]);
    }
  }
  return path;
}

void report(const char* name, double serial_s, double parallel_s,
            bool identical) {
  std::printf("%-28s serial %8.3f ms   openmp %8.3f ms   speedup %5.2fx   %s\n",
              name, 1e3 * serial_s, 1e3 * parallel_s, serial_s / parallel_s,
              identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", max_threads());
  int bad = 0;

  {
    const auto path = make_path(513, 1025);
    std::vector<double> ser, par;
    const double t_ser = time_best_of(
        3, [&] { ser = gauss_curvature_grid_serial(path); });
    const double t_par = time_best_of(
        3, [&] { par = gauss_curvature_grid(path, Exec::Parallel); });
    const bool same = ser == par;
    bad += !same;
    report("curvature grid 513x1025", t_ser, t_par, same);
  }

  {
    const BartnikData d{1.0, 1.0, 0.5, true};
    const auto path = PathDescriptor::make_direct(0.05, 0.95);
    const auto rc = roundness_constants(path);
    const auto table = build_leaf_table(path, rc);
    CollarOptions opts;
    opts.grid_points = 200001;
    opts.exec = Exec::Serial;
    CollarSlab base = build_simple_collar(d, path, opts);
    CollarSlab ser = base, par = base;
    const double t_ser =
        time_best_of(3, [&] { fill_leaves_serial(ser, table); });
    const double t_par =
        time_best_of(3, [&] { fill_leaves(par, table, Exec::Parallel); });
    bool same = true;
    for (std::size_t i = 0; i < ser.leaves.size(); ++i) {
      same = same && ser.leaves[i].mu == par.leaves[i].mu &&
             ser.leaves[i].m_H == par.leaves[i].m_H;
    }
    bad += !same;
    report("collar leaf fill 200001", t_ser, t_par, same);
  }

  {
    // energy-density audit map over a large synthetic slab
    const std::size_t n = 2000000;
    const auto x = ProfileFunction::cmc(0.3, -0.2, 1.0);
    std::vector<double> ser(n), par(n);
    auto body = [&](std::vector<double>& out, Exec mode) {
      parallel_for(
          n,
          [&](std::size_t i) {
            const double f = 1.0 + 9.0 * static_cast<double>(i) / (n - 1);
            const double fp = 0.5 + 0.3 * std::sin(0.001 * i);
            const double fpp = 0.05 * std::cos(0.001 * i);
            out[i] = mu_block_diagonal(f, fp, fpp, 1.0, 2.0, 0.0, x.x(f),
                                       x.xp(f));
          },
          mode);
    };
    const double t_ser = time_best_of(3, [&] { body(ser, Exec::Serial); });
    const double t_par = time_best_of(3, [&] { body(par, Exec::Parallel); });
    const bool same = ser == par;
    bad += !same;
    report("DEC margin map 2e6", t_ser, t_par, same);
  }

  return bad == 0 ? 0 : 1;
}
