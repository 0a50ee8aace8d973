#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace phrecon {

using Vec3 = Eigen::Vector3d;

/// Index type for points, simplices and mesh elements.
using Id = std::int32_t;
inline constexpr Id kNoId = -1;

/// Ordered 3D points. `ids[i]` is the provenance index of `points[i]` (its
/// position in the source file, or in the cloud it was extracted from).
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<std::int64_t> ids;

  PointCloud() = default;
  explicit PointCloud(std::vector<Vec3> pts);

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void push_back(const Vec3& p, std::int64_t id);
};

struct DeduplicatedCloud {
  /// Unique points in order of first appearance; each keeps the provenance id
  /// of its first occurrence.
  PointCloud cloud;
  /// For each input point, the index of its representative in `cloud`.
  std::vector<Id> source_to_unique;
};

/// Merges bitwise-identical points.
DeduplicatedCloud deduplicate(const PointCloud& input);

}  // namespace phrecon
