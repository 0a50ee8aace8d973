#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "phrecon/point_cloud.hpp"

namespace phrecon {

using Tetrahedron = std::array<Id, 4>;

/// Delaunay tetrahedralization of distinct points.
///
/// Incremental Bowyer-Watson insertion with an infinite vertex closing the
/// convex hull. All decisions use exact predicates; cospherical and coplanar
/// configurations are resolved by a symbolic perturbation that ranks points by
/// index, so the result is the unique triangulation of the perturbed set and
/// does not depend on `insertion_seed` (which only shuffles insertion order).
///
/// Returns the finite tetrahedra as ascending vertex quadruples in
/// lexicographic order. Throws DegenerateInput when the points do not span 3D.
std::vector<Tetrahedron> delaunay_tetrahedra(std::span<const Vec3> points,
                                             std::uint64_t insertion_seed = 0);

}  // namespace phrecon
