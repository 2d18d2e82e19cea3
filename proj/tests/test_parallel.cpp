#include <doctest.h>

#include <cmath>
#include <vector>

#include "bartnik/collar.hpp"
#include "bartnik/parallel.hpp"
#include "bartnik/path.hpp"
#include "bartnik/smoothstep.hpp"

using namespace bartnik;

namespace {

AxisymmetricPath test_path(std::size_t ns, std::size_t nt) {
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

}  // namespace

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(10000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; },
               Exec::Parallel);
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("curvature kernel: OpenMP and serial results are identical") {
  const auto path = test_path(65, 513);
  const auto par = gauss_curvature_grid(path, Exec::Parallel);
  const auto ser = gauss_curvature_grid_serial(path);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i] == ser[i]);
  }
}

TEST_CASE("collar leaf kernel: OpenMP and serial results are identical") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const auto path = PathDescriptor::make_direct(0.05, 0.95);

  CollarOptions par_opts;
  par_opts.exec = Exec::Parallel;
  CollarOptions ser_opts;
  ser_opts.exec = Exec::Serial;
  const auto a = build_simple_collar(d, path, par_opts);
  const auto b = build_simple_collar(d, path, ser_opts);
  REQUIRE(a.leaves.size() == b.leaves.size());
  for (std::size_t i = 0; i < a.leaves.size(); ++i) {
    CHECK(a.leaves[i].u == b.leaves[i].u);
    CHECK(a.leaves[i].H == b.leaves[i].H);
    CHECK(a.leaves[i].P == b.leaves[i].P);
    CHECK(a.leaves[i].mu == b.leaves[i].mu);
    CHECK(a.leaves[i].m_H == b.leaves[i].m_H);
    CHECK(a.leaves[i].dec_margin == b.leaves[i].dec_margin);
  }
}

TEST_CASE("explicit serial twin matches the dispatch") {
  const BartnikData d{1.0, 0.9, 0.4, true};
  const auto path = PathDescriptor::make_direct(0.05, 0.95);
  const auto rc = roundness_constants(path);
  auto slab_a = build_simple_collar(d, path);
  auto slab_b = slab_a;
  const auto table = build_leaf_table(path, rc);
  fill_leaves(slab_a, table, Exec::Parallel);
  fill_leaves_serial(slab_b, table);
  for (std::size_t i = 0; i < slab_a.leaves.size(); ++i) {
    CHECK(slab_a.leaves[i].mu == slab_b.leaves[i].mu);
    CHECK(slab_a.leaves[i].hcal2 == slab_b.leaves[i].hcal2);
  }
}
