#pragma once

#include <vector>

#include "phrecon/filtration.hpp"
#include "phrecon/persistence.hpp"

namespace phrecon {

/// Z2 chain: the simplices with coefficient 1, as ascending filtration
/// positions of a single dimension.
struct Chain {
  int dim = 0;
  std::vector<Id> simplices;

  std::size_t size() const { return simplices.size(); }
  bool empty() const { return simplices.empty(); }
  bool contains(Id s) const;
  bool operator==(const Chain&) const = default;
};

/// Z2 sum (symmetric difference) of two chains of the same dimension.
Chain operator+(const Chain& a, const Chain& b);

Chain boundary(const Filtration& filtration, const Chain& chain);

struct PersistentVolume {
  PersistencePair pair;
  Chain volume;  // dimension 3
  Chain cycle;   // boundary of volume
};

/// Smallest 3-chain that contains the negative simplex of `pair`, has its
/// other tetrahedra strictly between the pair's simplices in filtration order,
/// whose boundary avoids every triangle strictly between them, and whose
/// boundary contains the positive simplex.
///
/// The constraints tie the two cofaces of each such triangle together, so the
/// tetrahedra reachable from the negative simplex across them form a block
/// that every feasible chain contains. That block is returned, extended by the
/// smallest other closed block when needed to put the positive simplex on the
/// boundary. Ties between equally small extensions go to the lexicographically
/// smaller id sequence.
///
/// Throws InternalInconsistency if no feasible chain exists and
/// std::invalid_argument if a relevant triangle has more than two candidate
/// cofaces (the complex does not embed in R^3).
PersistentVolume persistent_volume(const Filtration& filtration, const PersistencePair& pair);

Chain volume_optimal_cycle(const Filtration& filtration, const PersistentVolume& pv);

}  // namespace phrecon
