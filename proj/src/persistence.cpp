#include "phrecon/persistence.hpp"

#include <algorithm>
#include <tuple>

namespace phrecon {
namespace {

// Columns are ascending lists of face positions; the pivot is the last entry.
void add_column(std::vector<Id>& target, const std::vector<Id>& source, std::vector<Id>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

std::vector<PersistencePair> PersistenceDiagram::of_dim(int dim) const {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs)
    if (p.dim == dim) out.push_back(p);
  return out;
}

PersistenceDiagram compute_persistence(const Filtration& f) {
  const std::size_t n = f.size();
  // pivot_owner[i]: the column whose reduced pivot is i.
  std::vector<Id> pivot_owner(n, kNoId);
  std::vector<char> negative(n, 0);
  std::vector<std::vector<Id>> reduced(n);
  std::vector<Id> scratch;

  for (int dim = 3; dim >= 1; --dim) {
    std::vector<Id> columns(f.of_dim(dim).begin(), f.of_dim(dim).end());
    std::sort(columns.begin(), columns.end());
    for (Id j : columns) {
      // Clearing: a pivot of a higher column is positive and reduces to zero.
      if (pivot_owner[j] != kNoId) continue;
      std::vector<Id> col(f.faces(j).begin(), f.faces(j).end());
      while (!col.empty() && pivot_owner[col.back()] != kNoId) add_column(col, reduced[pivot_owner[col.back()]], scratch);
      if (col.empty()) continue;
      pivot_owner[col.back()] = j;
      negative[j] = 1;
      reduced[j] = std::move(col);
    }
    // Lower dimensions never touch these columns again.
    for (Id j : columns) std::vector<Id>().swap(reduced[j]);
  }

  PersistenceDiagram d;
  for (Id i = 0; i < static_cast<Id>(n); ++i) {
    // Negative simplices are reported through their partner; tetrahedra can
    // only be positive in abstract complexes that do not embed in R^3.
    if (negative[i] || f[i].dim == 3) continue;
    PersistencePair p;
    p.dim = f[i].dim;
    p.birth = f[i].value;
    p.pos_simplex = i;
    if (pivot_owner[i] != kNoId) {
      p.neg_simplex = pivot_owner[i];
      p.death = f[p.neg_simplex].value;
    }
    d.pairs.push_back(p);
  }
  std::sort(d.pairs.begin(), d.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    return std::tie(a.dim, a.birth, a.death, a.pos_simplex) < std::tie(b.dim, b.birth, b.death, b.pos_simplex);
  });
  return d;
}

std::array<std::size_t, 3> betti_numbers(const PersistenceDiagram& diagram, double r) {
  std::array<std::size_t, 3> b{};
  for (const auto& p : diagram.pairs)
    if (p.dim <= 2 && p.birth <= r && (p.essential() || r < p.death)) ++b[static_cast<std::size_t>(p.dim)];
  return b;
}

std::array<std::size_t, 3> betti_numbers(const Filtration& filtration, double r) {
  return betti_numbers(compute_persistence(filtration), r);
}

}  // namespace phrecon
