#include "phrecon/cycles.hpp"

#include <algorithm>
#include <stdexcept>

#include "phrecon/errors.hpp"

namespace phrecon {

bool Chain::contains(Id s) const { return std::binary_search(simplices.begin(), simplices.end(), s); }

Chain operator+(const Chain& a, const Chain& b) {
  if (a.dim != b.dim) throw std::invalid_argument("adding chains of different dimensions");
  Chain out{a.dim, {}};
  std::set_symmetric_difference(a.simplices.begin(), a.simplices.end(), b.simplices.begin(), b.simplices.end(),
                                std::back_inserter(out.simplices));
  return out;
}

Chain boundary(const Filtration& f, const Chain& chain) {
  if (chain.dim < 1) throw std::invalid_argument("boundary of a 0-chain");
  std::vector<Id> faces;
  for (Id s : chain.simplices)
    for (Id face : f.faces(s)) faces.push_back(face);
  std::sort(faces.begin(), faces.end());
  Chain out{chain.dim - 1, {}};
  for (std::size_t i = 0; i < faces.size();) {
    std::size_t j = i;
    while (j < faces.size() && faces[j] == faces[i]) ++j;
    if ((j - i) % 2 == 1) out.simplices.push_back(faces[i]);
    i = j;
  }
  return out;
}

namespace {

struct Blocks {
  const Filtration& f;
  Id pos, neg;

  bool candidate(Id t) const { return t == neg || (t > pos && t < neg); }
  bool constrained(Id tri) const { return tri > pos && tri < neg; }

  std::vector<Id> candidate_cofaces(Id tri) const {
    std::vector<Id> out;
    for (Id c : f.cofaces(tri))
      if (candidate(c)) out.push_back(c);
    if (out.size() > 2)
      throw std::invalid_argument("triangle with more than two cofaces; the complex does not embed in R^3");
    return out;
  }

  // Candidates reachable from `seed` across constrained triangles. Returns
  // false if the block is not closed: some constrained triangle on it has
  // only one candidate coface, so its boundary cannot avoid that triangle.
  bool grow(Id seed, std::vector<Id>& block) const {
    block.assign(1, seed);
    bool closed = true;
    for (std::size_t head = 0; head < block.size(); ++head) {
      for (Id tri : f.faces(block[head])) {
        if (!constrained(tri)) continue;
        const auto cof = candidate_cofaces(tri);
        if (cof.size() < 2) {
          closed = false;
          continue;
        }
        const Id other = cof[0] == block[head] ? cof[1] : cof[0];
        if (std::find(block.begin(), block.end(), other) == block.end()) block.push_back(other);
      }
    }
    std::sort(block.begin(), block.end());
    return closed;
  }
};

}  // namespace

PersistentVolume persistent_volume(const Filtration& f, const PersistencePair& pair) {
  if (pair.dim != 2 || pair.essential()) throw std::invalid_argument("persistent_volume needs a finite 2-dimensional pair");
  if (f[pair.pos_simplex].dim != 2 || f[pair.neg_simplex].dim != 3)
    throw std::invalid_argument("pair does not match the filtration");
  const Blocks blocks{f, pair.pos_simplex, pair.neg_simplex};

  PersistentVolume pv;
  pv.pair = pair;
  std::vector<Id> core;
  if (!blocks.grow(pair.neg_simplex, core))
    throw InternalInconsistency("persistent volume is infeasible: boundary cannot avoid the pair's interior");
  pv.volume = Chain{3, core};
  pv.cycle = boundary(f, pv.volume);

  if (!pv.cycle.contains(pair.pos_simplex)) {
    // Toggle the positive simplex with a closed block holding exactly one of
    // its candidate cofaces.
    std::vector<Id> best;
    const auto cofaces = blocks.candidate_cofaces(pair.pos_simplex);
    for (Id c : cofaces) {
      if (std::binary_search(core.begin(), core.end(), c)) continue;
      std::vector<Id> extra;
      if (!blocks.grow(c, extra)) continue;
      const auto held = std::count_if(cofaces.begin(), cofaces.end(),
                                      [&](Id t) { return std::binary_search(extra.begin(), extra.end(), t); });
      if (held != 1) continue;
      const Chain merged = pv.volume + Chain{3, extra};
      if (best.empty() || merged.size() < best.size() || (merged.size() == best.size() && merged.simplices < best))
        best = merged.simplices;
    }
    if (best.empty()) throw InternalInconsistency("persistent volume is infeasible: positive simplex off the boundary");
    pv.volume = Chain{3, best};
    pv.cycle = boundary(f, pv.volume);
  }
  return pv;
}

Chain volume_optimal_cycle(const Filtration& f, const PersistentVolume& pv) { return boundary(f, pv.volume); }

}  // namespace phrecon
