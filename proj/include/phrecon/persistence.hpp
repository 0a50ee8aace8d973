#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "phrecon/filtration.hpp"

namespace phrecon {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  /// Filtration position of the simplex that creates the class.
  Id pos_simplex = kNoId;
  /// Filtration position of the simplex that kills it; kNoId when essential.
  Id neg_simplex = kNoId;

  bool essential() const { return neg_simplex == kNoId; }
  double persistence() const { return death - birth; }
};

struct PersistenceDiagram {
  /// Sorted by (dim, birth, death, pos_simplex).
  std::vector<PersistencePair> pairs;

  std::vector<PersistencePair> of_dim(int dim) const;
};

/// Z2 persistence of the filtration by column reduction of the boundary
/// matrix, processing dimensions top-down with clearing. Pairs of zero
/// persistence are kept.
PersistenceDiagram compute_persistence(const Filtration& filtration);

/// Betti numbers (b0, b1, b2) of the prefix {value <= r}: the pairs with
/// birth <= r < death.
std::array<std::size_t, 3> betti_numbers(const PersistenceDiagram& diagram, double r);
std::array<std::size_t, 3> betti_numbers(const Filtration& filtration, double r);

}  // namespace phrecon
