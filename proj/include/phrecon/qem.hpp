#pragma once

#include <optional>
#include <string>

#include "phrecon/mesh.hpp"

namespace phrecon {

struct QemResult {
  SurfaceMesh mesh;
  std::size_t collapses = 0;
  /// Set when no admissible collapse was left before reaching the budget.
  std::optional<std::string> warning;
};

/// Quadric-error edge-collapse simplification of a closed manifold mesh down
/// to at most ceil(target_ratio * faces) faces. A collapse is admissible when
/// it passes the link condition (the endpoints share exactly the two opposite
/// vertices as neighbours), leaves more than four vertices, and flips or
/// flattens no surrounding face. Topology and closedness are preserved.
/// Throws NotManifold if the input is not a closed manifold and
/// std::invalid_argument unless 0 < target_ratio < 1.
QemResult qem_simplify(const SurfaceMesh& mesh, double target_ratio);

}  // namespace phrecon
