#pragma once

#include <span>
#include <vector>

#include "phrecon/mesh.hpp"
#include "phrecon/point_cloud.hpp"
#include "phrecon/subdivision.hpp"

namespace phrecon {

/// Points of `cloud` within d_avg of their nearest cycle vertex, where d_avg
/// is the mean distance from each cycle vertex to its nearest cloud point at
/// positive distance. Keeps cloud order and provenance ids. Throws
/// EmptySubset if nothing qualifies.
PointCloud neighbor_subset(const PointCloud& cloud, std::span<const Vec3> cycle_vertices);

struct LspiaStep {
  SurfaceMesh control;
  /// RMS of the residuals the update was computed from.
  double rms = 0.0;
  /// Control vertices with zero aggregate weight, left in place.
  std::size_t frozen = 0;
};

/// One LSPIA update: every target is matched to its closest refined vertex
/// v_j, the residual p_j - v_j is spread over the control vertices with that
/// vertex's basis coefficients, and each control vertex moves by the weighted
/// mean of the residuals it receives.
LspiaStep lspia_step(const SurfaceMesh& control, const SubdivisionBasis& basis, const PointCloud& targets);

struct FitReport {
  std::size_t iterations = 0;
  /// RMS before the first update and after each one.
  std::vector<double> rms_history;
  bool converged = false;
  SurfaceMesh final_control;
  /// Subdivided final control mesh.
  SurfaceMesh refined;
  /// Frozen control vertices in the last update.
  std::size_t frozen = 0;
};

/// Repeats lspia_step on the Loop basis of `control` until
/// |e_k / e_{k-1} - 1| < eps (or e_{k-1} = 0), or max_iters updates.
FitReport fit(const SurfaceMesh& control, const PointCloud& targets, int levels, double eps, int max_iters);

}  // namespace phrecon
