#pragma once

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "phrecon/delaunay.hpp"
#include "phrecon/kdtree.hpp"
#include "phrecon/point_cloud.hpp"

// Data-parallel inner loops. Every kernel has a serial reference next to its
// OpenMP version; the library calls the parallel ones, tests check them
// against the references, and bench/ times both.
namespace phrecon::kernels {

/// Rows: refined vertices; columns: control vertices.
using BasisMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, Id>;
using BasisColumns = Eigen::SparseMatrix<double, Eigen::ColMajor, Id>;

/// Squared circumradius of each tetrahedron.
void tetra_circumradii_serial(std::span<const Vec3> points, std::span<const Tetrahedron> tets,
                              std::span<double> out);
void tetra_circumradii_parallel(std::span<const Vec3> points, std::span<const Tetrahedron> tets,
                                std::span<double> out);

/// out = basis * control.
void apply_basis_serial(const BasisMatrix& basis, std::span<const Vec3> control, std::span<Vec3> out);
void apply_basis_parallel(const BasisMatrix& basis, std::span<const Vec3> control, std::span<Vec3> out);

struct Residuals {
  std::vector<Id> nearest;  // closest refined vertex of each target
  std::vector<Vec3> delta;  // target minus that vertex
  double sum_sq = 0.0;      // summed in target order
};

/// Closest refined vertex and residual for every target. `tree` indexes `refined`.
void closest_residuals_serial(const KdTree& tree, std::span<const Vec3> refined,
                              std::span<const Vec3> targets, Residuals& out);
void closest_residuals_parallel(const KdTree& tree, std::span<const Vec3> refined,
                                std::span<const Vec3> targets, Residuals& out);

/// Per control vertex i: numer[i] = sum_j a_{j,i} delta_j and
/// weight[i] = sum_j a_{j,i}, where a_{j,.} is the basis row of target j's
/// closest refined vertex.
void distribute_serial(const BasisMatrix& basis, const Residuals& residuals, std::span<Vec3> numer,
                       std::span<double> weight);
/// Same sums, grouped per refined vertex and then gathered per control vertex
/// in a fixed order, so results are identical for any thread count.
void distribute_parallel(const BasisColumns& basis, const Residuals& residuals, std::span<Vec3> numer,
                         std::span<double> weight);

}  // namespace phrecon::kernels
