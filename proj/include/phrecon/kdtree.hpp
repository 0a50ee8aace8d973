#pragma once

#include <limits>
#include <span>
#include <vector>

#include "phrecon/point_cloud.hpp"

namespace phrecon {

/// Static 3D k-d tree. Queries are deterministic: among equidistant points
/// the smallest index wins, independent of tree shape.
class KdTree {
 public:
  struct Hit {
    Id index = kNoId;
    double dist2 = std::numeric_limits<double>::infinity();
  };

  KdTree() = default;
  explicit KdTree(std::span<const Vec3> points);

  std::size_t size() const { return points_.size(); }

  Hit nearest(const Vec3& q) const;
  /// Nearest point at strictly positive distance from q.
  Hit nearest_other(const Vec3& q) const;
  /// Indices of all points within `radius` (inclusive), ascending.
  std::vector<Id> within(const Vec3& q, double radius) const;

 private:
  static constexpr std::size_t kLeaf = 8;

  void build(std::size_t lo, std::size_t hi);
  template <typename Accept>
  void search(std::size_t lo, std::size_t hi, const Vec3& q, Hit& best, const Accept& accept) const;
  void collect(std::size_t lo, std::size_t hi, const Vec3& q, double r2, std::vector<Id>& out) const;

  std::vector<Vec3> points_;  // permuted copy
  std::vector<Id> index_;     // permuted position -> original index
  std::vector<signed char> split_;
};

}  // namespace phrecon
