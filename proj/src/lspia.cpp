#include "phrecon/lspia.hpp"

#include <cmath>
#include <stdexcept>

#include "phrecon/errors.hpp"
#include "phrecon/kdtree.hpp"

namespace phrecon {

PointCloud neighbor_subset(const PointCloud& cloud, std::span<const Vec3> cycle_vertices) {
  if (cycle_vertices.empty()) throw std::invalid_argument("neighbor_subset needs at least one cycle vertex");
  if (cloud.size() < 2) throw std::invalid_argument("neighbor_subset needs at least two cloud points");
  const KdTree cloud_tree(cloud.points);
  double total = 0.0;
  for (const Vec3& v : cycle_vertices) total += std::sqrt(cloud_tree.nearest_other(v).dist2);
  const double d_avg = total / double(cycle_vertices.size());

  const KdTree cycle_tree(cycle_vertices);
  PointCloud out;
  for (std::size_t j = 0; j < cloud.size(); ++j)
    if (std::sqrt(cycle_tree.nearest(cloud.points[j]).dist2) <= d_avg) out.push_back(cloud.points[j], cloud.ids[j]);
  if (out.empty()) throw EmptySubset("no cloud point lies within the average spacing of the cycle");
  return out;
}

namespace {

class Lspia {
 public:
  Lspia(const SubdivisionBasis& basis, const PointCloud& targets) : basis_(basis), columns_(basis), targets_(targets) {
    if (targets.empty()) throw std::invalid_argument("LSPIA needs at least one target point");
    refined_.resize(static_cast<std::size_t>(basis.rows()));
  }

  // Residuals of the targets against the surface of `control`.
  double measure(const std::vector<Vec3>& control) {
    kernels::apply_basis_parallel(basis_, control, refined_);
    const KdTree tree(refined_);
    kernels::closest_residuals_parallel(tree, refined_, targets_.points, residuals_);
    return std::sqrt(residuals_.sum_sq / double(targets_.size()));
  }

  // Moves `control` by the last measured residuals; returns frozen count.
  std::size_t update(std::vector<Vec3>& control) {
    std::vector<Vec3> numer(control.size());
    std::vector<double> weight(control.size());
    kernels::distribute_parallel(columns_, residuals_, numer, weight);
    std::size_t frozen = 0;
    for (std::size_t i = 0; i < control.size(); ++i) {
      if (weight[i] > 0.0) control[i] += numer[i] / weight[i];
      else ++frozen;
    }
    return frozen;
  }

  const std::vector<Vec3>& refined() const { return refined_; }

 private:
  const SubdivisionBasis& basis_;
  kernels::BasisColumns columns_;
  const PointCloud& targets_;
  std::vector<Vec3> refined_;
  kernels::Residuals residuals_;
};

}  // namespace

LspiaStep lspia_step(const SurfaceMesh& control, const SubdivisionBasis& basis, const PointCloud& targets) {
  if (static_cast<std::size_t>(basis.cols()) != control.vertices.size())
    throw std::invalid_argument("basis does not match the control mesh");
  Lspia lspia(basis, targets);
  LspiaStep out;
  out.control = control;
  out.rms = lspia.measure(control.vertices);
  out.frozen = lspia.update(out.control.vertices);
  return out;
}

FitReport fit(const SurfaceMesh& control, const PointCloud& targets, int levels, double eps, int max_iters) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be nonnegative");
  const Subdivision sub = loop_subdivide(control, levels);
  Lspia lspia(sub.basis, targets);

  FitReport report;
  report.final_control = control;
  auto& pts = report.final_control.vertices;
  report.rms_history.push_back(lspia.measure(pts));
  for (int k = 1; k <= max_iters; ++k) {
    report.frozen = lspia.update(pts);
    const double prev = report.rms_history.back();
    const double e = lspia.measure(pts);
    report.rms_history.push_back(e);
    report.iterations = static_cast<std::size_t>(k);
    if (prev == 0.0 || std::abs(e / prev - 1.0) < eps) {
      report.converged = true;
      break;
    }
  }
  report.refined = sub.mesh;
  report.refined.vertices = lspia.refined();
  report.refined.update_flags();
  return report;
}

}  // namespace phrecon
