#pragma once

#include <array>
#include <vector>

#include "phrecon/cycles.hpp"
#include "phrecon/filtration.hpp"

namespace phrecon {

using Triangle = std::array<Id, 3>;
using EdgeKey = std::array<Id, 2>;  // ascending

/// Indexed triangle mesh.
struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> faces;
  /// Every edge has at most two faces and every vertex fan is connected.
  bool manifold = false;
  /// Every edge has exactly two faces.
  bool closed = false;

  /// Recomputes `manifold` and `closed` from the faces.
  void update_flags();
  std::size_t edge_count() const;
  long euler_characteristic() const;
  /// Sorted unique edges.
  std::vector<EdgeKey> edges() const;
};

/// Vertices of a triangle set whose incident faces, linked through shared
/// edges at the vertex, fall into more than one fan. Ascending.
std::vector<Id> nonmanifold_vertices(const std::vector<Triangle>& triangles);
/// Edges with more than two incident triangles. Ascending.
std::vector<EdgeKey> nonmanifold_edges(const std::vector<Triangle>& triangles);

/// The same tests on a 2-chain; ids are point ids of the filtration.
std::vector<Id> find_nonmanifold_vertices(const Chain& cycle, const Filtration& filtration);
std::vector<EdgeKey> find_nonmanifold_edges(const Chain& cycle, const Filtration& filtration);

/// Mesh of the boundary of a 3-chain. Vertices are the points used, in
/// ascending point id; when the filtration carries coordinates, each face is
/// oriented with its normal pointing out of the volume.
struct VolumeMesh {
  SurfaceMesh mesh;
  std::vector<Id> point_of_vertex;  // mesh vertex -> filtration point id
};
VolumeMesh mesh_from_volume(const Filtration& filtration, const Chain& volume);

struct CleanedCycle {
  /// Volume after deleting the offending tetrahedra, and its boundary.
  PersistentVolume volume;
  VolumeMesh surface;
  std::size_t removed_tetrahedra = 0;
  /// Number of passes over (vertex pass, edge pass) until nothing was flagged.
  int rounds = 0;
};

/// Deletes every tetrahedron of the volume that contains a non-manifold vertex
/// of its boundary, then every one that contains a non-manifold edge, and
/// repeats both until neither is found. Throws EmptiedVolume if no
/// tetrahedron remains.
CleanedCycle clean_cycle(const PersistentVolume& pv, const Filtration& filtration);

}  // namespace phrecon
