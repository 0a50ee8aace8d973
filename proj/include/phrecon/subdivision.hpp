#pragma once

#include "phrecon/kernels.hpp"
#include "phrecon/mesh.hpp"

namespace phrecon {

/// Sparse map from control vertices to refined vertices; each row is an
/// affine combination with nonnegative coefficients.
using SubdivisionBasis = kernels::BasisMatrix;

struct LoopLevel {
  std::vector<Triangle> faces;
  /// (V + E) x V stencil matrix of this level.
  SubdivisionBasis stencil;
};

/// One level of Loop subdivision on a closed manifold. Refined vertices are
/// the old vertices followed by one per edge, edges in ascending
/// (min, max) order. Each face (a, b, c) becomes (a, ab, ca), (b, bc, ab),
/// (c, ca, bc), (ab, bc, ca).
LoopLevel loop_level(std::size_t vertex_count, const std::vector<Triangle>& faces);

struct Subdivision {
  SurfaceMesh mesh;
  SubdivisionBasis basis;
};

/// `levels` rounds of Loop subdivision. The basis is the product of the
/// per-level stencils; refined positions are basis * control positions.
/// Throws NotManifold unless the control mesh is a closed manifold.
Subdivision loop_subdivide(const SurfaceMesh& control, int levels);

}  // namespace phrecon
