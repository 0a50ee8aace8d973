#include "phrecon/kernels.hpp"

#include <cstddef>

namespace phrecon::kernels {
namespace {

double circumradius2(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 u = b - a, v = c - a, w = d - a;
  const Vec3 offset =
      (u.squaredNorm() * v.cross(w) + v.squaredNorm() * w.cross(u) + w.squaredNorm() * u.cross(v)) /
      (2.0 * u.dot(v.cross(w)));
  return offset.squaredNorm();
}

Vec3 row_times(const BasisMatrix& basis, Id row, std::span<const Vec3> control) {
  Vec3 acc = Vec3::Zero();
  for (BasisMatrix::InnerIterator it(basis, row); it; ++it) acc += it.value() * control[it.col()];
  return acc;
}

}  // namespace

void tetra_circumradii_serial(std::span<const Vec3> points, std::span<const Tetrahedron> tets,
                              std::span<double> out) {
  for (std::size_t i = 0; i < tets.size(); ++i) {
    const auto& t = tets[i];
    out[i] = circumradius2(points[t[0]], points[t[1]], points[t[2]], points[t[3]]);
  }
}

void tetra_circumradii_parallel(std::span<const Vec3> points, std::span<const Tetrahedron> tets,
                                std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(tets.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& t = tets[i];
    out[i] = circumradius2(points[t[0]], points[t[1]], points[t[2]], points[t[3]]);
  }
}

void apply_basis_serial(const BasisMatrix& basis, std::span<const Vec3> control, std::span<Vec3> out) {
  for (Id r = 0; r < basis.rows(); ++r) out[r] = row_times(basis, r, control);
}

void apply_basis_parallel(const BasisMatrix& basis, std::span<const Vec3> control, std::span<Vec3> out) {
  const Id rows = static_cast<Id>(basis.rows());
#pragma omp parallel for schedule(static)
  for (Id r = 0; r < rows; ++r) out[r] = row_times(basis, r, control);
}

void closest_residuals_serial(const KdTree& tree, std::span<const Vec3> refined,
                              std::span<const Vec3> targets, Residuals& out) {
  out.nearest.resize(targets.size());
  out.delta.resize(targets.size());
  out.sum_sq = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const Id v = tree.nearest(targets[j]).index;
    out.nearest[j] = v;
    out.delta[j] = targets[j] - refined[v];
    out.sum_sq += out.delta[j].squaredNorm();
  }
}

void closest_residuals_parallel(const KdTree& tree, std::span<const Vec3> refined,
                                std::span<const Vec3> targets, Residuals& out) {
  out.nearest.resize(targets.size());
  out.delta.resize(targets.size());
  const auto m = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t j = 0; j < m; ++j) {
    const Id v = tree.nearest(targets[j]).index;
    out.nearest[j] = v;
    out.delta[j] = targets[j] - refined[v];
  }
  // Serial sum keeps the bits identical to the reference.
  out.sum_sq = 0.0;
  for (const Vec3& d : out.delta) out.sum_sq += d.squaredNorm();
}

void distribute_serial(const BasisMatrix& basis, const Residuals& residuals, std::span<Vec3> numer,
                       std::span<double> weight) {
  std::fill(numer.begin(), numer.end(), Vec3::Zero());
  std::fill(weight.begin(), weight.end(), 0.0);
  for (std::size_t j = 0; j < residuals.nearest.size(); ++j) {
    for (BasisMatrix::InnerIterator it(basis, residuals.nearest[j]); it; ++it) {
      numer[it.col()] += it.value() * residuals.delta[j];
      weight[it.col()] += it.value();
    }
  }
}

void distribute_parallel(const BasisColumns& basis, const Residuals& residuals, std::span<Vec3> numer,
                         std::span<double> weight) {
  const std::size_t refined = static_cast<std::size_t>(basis.rows());
  std::vector<Vec3> bucket(refined, Vec3::Zero());
  std::vector<double> count(refined, 0.0);
  for (std::size_t j = 0; j < residuals.nearest.size(); ++j) {
    bucket[residuals.nearest[j]] += residuals.delta[j];
    count[residuals.nearest[j]] += 1.0;
  }
  const Id cols = static_cast<Id>(basis.cols());
#pragma omp parallel for schedule(dynamic, 64)
  for (Id i = 0; i < cols; ++i) {
    Vec3 n = Vec3::Zero();
    double w = 0.0;
    for (BasisColumns::InnerIterator it(basis, i); it; ++it) {
      if (count[it.row()] == 0.0) continue;
      n += it.value() * bucket[it.row()];
      w += it.value() * count[it.row()];
    }
    numer[i] = n;
    weight[i] = w;
  }
}

}  // namespace phrecon::kernels
