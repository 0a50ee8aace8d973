#include <map>
#include <memory>

#include <benchmark/benchmark.h>

#include "phrecon/filtration.hpp"
#include "phrecon/kdtree.hpp"
#include "phrecon/kernels.hpp"
#include "phrecon/subdivision.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic.hpp"

using namespace phrecon;

namespace {

struct Scene {
  DelaunaySkeleton skeleton;
  SurfaceMesh control;
  Subdivision refined;
  kernels::BasisColumns columns;
  PointCloud targets;
  KdTree tree;
  kernels::Residuals residuals;

  explicit Scene(std::size_t n)
      : skeleton(delaunay3(synthetic::sample_sphere(n, 1.0, Vec3::Zero(), 0.01, 1))),
        control(fixtures::icosphere(3)),
        refined(loop_subdivide(control, 2)),
        columns(refined.basis),
        targets(synthetic::sample_sphere(n, 1.0, Vec3::Zero(), 0.01, 2)),
        tree(refined.mesh.vertices) {
    kernels::closest_residuals_serial(tree, refined.mesh.vertices, targets.points, residuals);
  }
};

Scene& scene(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<Scene>> cache;
  auto& s = cache[n];
  if (!s) s = std::make_unique<Scene>(n);
  return *s;
}

template <bool Parallel>
void circumradii(benchmark::State& state) {
  auto& s = scene(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(s.skeleton.tetrahedra.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::tetra_circumradii_parallel(s.skeleton.cloud.points, s.skeleton.tetrahedra, out);
    else kernels::tetra_circumradii_serial(s.skeleton.cloud.points, s.skeleton.tetrahedra, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

template <bool Parallel>
void apply_basis(benchmark::State& state) {
  auto& s = scene(static_cast<std::size_t>(state.range(0)));
  std::vector<Vec3> out(s.refined.mesh.vertices.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::apply_basis_parallel(s.refined.basis, s.control.vertices, out);
    else kernels::apply_basis_serial(s.refined.basis, s.control.vertices, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void closest_residuals(benchmark::State& state) {
  auto& s = scene(static_cast<std::size_t>(state.range(0)));
  kernels::Residuals out;
  for (auto _ : state) {
    if constexpr (Parallel) kernels::closest_residuals_parallel(s.tree, s.refined.mesh.vertices, s.targets.points, out);
    else kernels::closest_residuals_serial(s.tree, s.refined.mesh.vertices, s.targets.points, out);
    benchmark::DoNotOptimize(out.sum_sq);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.targets.size()));
}

template <bool Parallel>
void distribute(benchmark::State& state) {
  auto& s = scene(static_cast<std::size_t>(state.range(0)));
  std::vector<Vec3> numer(s.control.vertices.size());
  std::vector<double> weight(s.control.vertices.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::distribute_parallel(s.columns, s.residuals, numer, weight);
    else kernels::distribute_serial(s.refined.basis, s.residuals, numer, weight);
    benchmark::DoNotOptimize(numer.data());
  }
}

}  // namespace

BENCHMARK(circumradii<false>)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(circumradii<true>)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(apply_basis<false>)->Arg(20000)->Unit(benchmark::kMicrosecond);
BENCHMARK(apply_basis<true>)->Arg(20000)->Unit(benchmark::kMicrosecond);
BENCHMARK(closest_residuals<false>)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(closest_residuals<true>)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(distribute<false>)->Arg(20000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(distribute<true>)->Arg(20000)->Arg(100000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
