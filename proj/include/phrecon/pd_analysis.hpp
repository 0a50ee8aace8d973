#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phrecon/persistence.hpp"

namespace phrecon {

/// Finite pairs of one dimension with positive persistence, in diagram order,
/// together with their distance from the diagonal.
struct ProjectedPairs {
  std::vector<PersistencePair> pairs;
  std::vector<double> persistence;  // |b - d| / sqrt(2)
};

/// Projects the finite, positive-persistence pairs of `dim` onto the line
/// y = -x. Throws EmptyDiagram when there are none.
ProjectedPairs project_persistence(const PersistenceDiagram& diagram, int dim = 2);

struct SignificanceSplit {
  /// Indices into the projected list.
  std::vector<std::size_t> significant;
  std::vector<std::size_t> noise;
  /// Smallest significant persistence.
  double threshold = 0.0;
  std::optional<std::string> warning;
};

/// Exact two-cluster partition of 1D values minimizing the within-cluster sum
/// of squares; the cluster with the larger values is significant.
SignificanceSplit split_significant(const std::vector<double>& persistences);

}  // namespace phrecon
