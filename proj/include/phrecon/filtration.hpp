#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "phrecon/delaunay.hpp"
#include "phrecon/point_cloud.hpp"

namespace phrecon {

/// A simplex of dimension 0..3 with its filtration value (alpha radius).
struct Simplex {
  int dim = 0;
  /// Ascending vertex ids; entries past `dim` are kNoId.
  std::array<Id, 4> vertices{kNoId, kNoId, kNoId, kNoId};
  double value = 0.0;

  std::span<const Id> verts() const { return {vertices.data(), static_cast<std::size_t>(dim + 1)}; }

  static Simplex make(std::span<const Id> verts, double value);
};

/// All simplices of a Delaunay tetrahedralization, without values.
struct DelaunaySkeleton {
  /// Deduplicated input; simplex vertex ids index into `cloud.points`.
  PointCloud cloud;
  /// Input point index -> vertex id.
  std::vector<Id> source_to_unique;
  std::vector<std::array<Id, 2>> edges;
  std::vector<std::array<Id, 3>> triangles;
  std::vector<Tetrahedron> tetrahedra;
};

/// Simplices ordered by (value, dim, vertex tuple), with codim-1 faces and
/// cofaces indexed by position in that order.
class Filtration {
 public:
  Filtration() = default;

  /// Sorts the simplices and indexes their faces. Every codim-1 face of every
  /// simplex must be present with a value not exceeding the simplex's.
  static Filtration from_simplices(std::vector<Simplex> simplices, PointCloud cloud = {});

  std::size_t size() const { return simplices_.size(); }
  const Simplex& operator[](Id i) const { return simplices_[static_cast<std::size_t>(i)]; }
  const std::vector<Simplex>& simplices() const { return simplices_; }

  std::span<const Id> faces(Id i) const {
    return {face_ids_.data() + 4 * static_cast<std::size_t>(i),
            static_cast<std::size_t>(simplices_[i].dim + (simplices_[i].dim > 0 ? 1 : 0))};
  }
  std::span<const Id> cofaces(Id i) const {
    return {coface_ids_.data() + coface_offsets_[i],
            static_cast<std::size_t>(coface_offsets_[i + 1] - coface_offsets_[i])};
  }

  /// Filtration position of the simplex with these (ascending) vertices, or kNoId.
  Id find(std::span<const Id> vertices) const;

  /// Number of simplices with value <= r (the length of the r-prefix).
  std::size_t prefix_length(double r) const;

  std::size_t count(int dim) const { return by_dim_[dim].size(); }
  /// Simplex ids of one dimension, in lexicographic vertex order.
  std::span<const Id> of_dim(int dim) const { return by_dim_[dim]; }

  const PointCloud& cloud() const { return cloud_; }
  const Vec3& point(Id v) const { return cloud_.points[static_cast<std::size_t>(v)]; }
  bool has_geometry() const { return !cloud_.empty(); }

 private:
  std::vector<Simplex> simplices_;
  std::vector<Id> face_ids_;
  std::vector<Id> coface_offsets_;
  std::vector<Id> coface_ids_;
  std::array<std::vector<Id>, 4> by_dim_;
  PointCloud cloud_;
};

/// Delaunay complex of the cloud after merging duplicate points.
DelaunaySkeleton delaunay3(const PointCloud& cloud, std::uint64_t insertion_seed = 0);

/// Assigns each Delaunay simplex the smallest radius r at which the restricted
/// balls of its vertices intersect, and sorts into a filtration.
Filtration alpha_values(const DelaunaySkeleton& skeleton);

inline Filtration alpha_filtration(const PointCloud& cloud, std::uint64_t insertion_seed = 0) {
  return alpha_values(delaunay3(cloud, insertion_seed));
}

}  // namespace phrecon
