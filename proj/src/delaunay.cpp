#include "phrecon/delaunay.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "phrecon/errors.hpp"
#include "phrecon/predicates.hpp"

namespace phrecon {
namespace {

constexpr Id kInfinite = -1;

// Vertices are stored so that replacing the infinite vertex (if any) by a
// point beyond the opposite hull face gives a positively oriented tetrahedron.
// n[i] is the cell across the face opposite v[i].
struct Cell {
  std::array<Id, 4> v;
  std::array<Id, 4> n;
};

struct FaceRef {
  Id cell;
  int slot;
};

std::uint64_t spread_bits(std::uint64_t x) {
  x &= 0x1fffff;
  x = (x | x << 32) & 0x1f00000000ffffULL;
  x = (x | x << 16) & 0x1f0000ff0000ffULL;
  x = (x | x << 8) & 0x100f00f00f00f00fULL;
  x = (x | x << 4) & 0x10c30c30c30c30c3ULL;
  x = (x | x << 2) & 0x1249249249249249ULL;
  return x;
}

class Triangulator {
 public:
  explicit Triangulator(std::span<const Vec3> pts) : pts_(pts) {}

  void build(std::uint64_t seed);
  std::vector<Tetrahedron> finite_tetrahedra() const;

 private:
  const Vec3& P(Id i) const { return pts_[static_cast<std::size_t>(i)]; }

  static int infinite_slot(const Cell& c) {
    for (int i = 0; i < 4; ++i)
      if (c.v[i] == kInfinite) return i;
    return -1;
  }

  int orient_with(const Cell& c, int slot, Id p) const {
    std::array<Id, 4> v = c.v;
    v[slot] = p;
    return predicates::orient3d(P(v[0]), P(v[1]), P(v[2]), P(v[3]));
  }

  bool in_conflict(const Cell& c, Id p) const;
  bool finite_conflict_perturbed(const Cell& c, Id p) const;
  bool hull_conflict_perturbed(const Cell& c, int inf, Id p) const;

  Id locate(Id p, Id start);
  void insert(Id p);
  Id allocate(const Cell& c);
  void link_new_cells(std::span<const Id> cells, Id apex);
  std::vector<Id> insertion_order(std::span<const Id> rest, std::uint64_t seed) const;

  std::span<const Vec3> pts_;
  std::vector<Cell> cells_;
  std::vector<char> alive_;
  std::vector<Id> free_;
  std::vector<std::uint32_t> visit_;
  std::vector<char> conflict_flag_;
  std::uint32_t epoch_ = 0;
  Id last_ = 0;
  std::minstd_rand walk_rng_{12345};

  std::vector<Id> stack_, conflict_, created_;
  std::vector<FaceRef> boundary_;
};

bool Triangulator::in_conflict(const Cell& c, Id p) const {
  const int inf = infinite_slot(c);
  if (inf < 0) {
    const int s = predicates::insphere(P(c.v[0]), P(c.v[1]), P(c.v[2]), P(c.v[3]), P(p));
    if (s != 0) return s > 0;
    return finite_conflict_perturbed(c, p);
  }
  const int o = orient_with(c, inf, p);
  if (o != 0) return o > 0;
  return hull_conflict_perturbed(c, inf, p);
}

// Cospherical case. Higher indices carry larger symbolic perturbations; the
// leading nonzero term is the orientation of the tetrahedron in which the
// highest-ranked vertex is replaced by p. Two terms always suffice for
// distinct points.
bool Triangulator::finite_conflict_perturbed(const Cell& c, Id p) const {
  std::array<Id, 5> ranked = {c.v[0], c.v[1], c.v[2], c.v[3], p};
  std::sort(ranked.begin(), ranked.end(), std::greater<>());
  for (int k = 0; k < 2; ++k) {
    const Id x = ranked[k];
    if (x == p) return false;
    const int slot = static_cast<int>(std::find(c.v.begin(), c.v.end(), x) - c.v.begin());
    const int o = orient_with(c, slot, p);
    if (o != 0) return o > 0;
  }
  throw InternalInconsistency("symbolic perturbation failed to break a cospherical tie");
}

// p lies in the plane of a hull face: the same scheme one dimension down,
// against the circumcircle of the face.
bool Triangulator::hull_conflict_perturbed(const Cell& c, int inf, Id p) const {
  std::array<Id, 3> face{};
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != inf) face[k++] = c.v[i];
  const int s = predicates::coplanar_incircle(P(face[0]), P(face[1]), P(face[2]), P(p));
  if (s != 0) return s > 0;
  std::array<Id, 4> ranked = {face[0], face[1], face[2], p};
  std::sort(ranked.begin(), ranked.end(), std::greater<>());
  for (int k = 0; k < 3; ++k) {
    const Id x = ranked[k];
    if (x == p) return false;
    std::array<Id, 3> moved = face;
    *std::find(moved.begin(), moved.end(), x) = p;
    const int o = predicates::coplanar_orientation_agreement(P(face[0]), P(face[1]), P(face[2]),
                                                             P(moved[0]), P(moved[1]), P(moved[2]));
    if (o != 0) return o > 0;
  }
  throw InternalInconsistency("symbolic perturbation failed to break a cocircular tie");
}

Id Triangulator::locate(Id p, Id start) {
  Id c = start;
  if (const int inf = infinite_slot(cells_[c]); inf >= 0) c = cells_[c].n[inf];
  Id prev = kNoId;
  for (;;) {
    const Cell& cell = cells_[c];
    if (infinite_slot(cell) >= 0) return c;
    const int offset = static_cast<int>(walk_rng_() & 3u);
    bool moved = false;
    for (int k = 0; k < 4; ++k) {
      const int i = (offset + k) & 3;
      const Id next = cell.n[i];
      if (next == prev) continue;
      if (orient_with(cell, i, p) < 0) {
        prev = c;
        c = next;
        moved = true;
        break;
      }
    }
    if (!moved) return c;
  }
}

Id Triangulator::allocate(const Cell& c) {
  Id id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    cells_[id] = c;
    alive_[id] = 1;
  } else {
    id = static_cast<Id>(cells_.size());
    cells_.push_back(c);
    alive_.push_back(1);
    visit_.push_back(0);
    conflict_flag_.push_back(0);
  }
  return id;
}

// Pairs up the faces of freshly created cells that contain `apex`. Each such
// face is identified by its two other vertices.
void Triangulator::link_new_cells(std::span<const Id> cells, Id apex) {
  struct Entry {
    std::uint64_t key;
    Id cell;
    int slot;
  };
  std::vector<Entry> entries;
  entries.reserve(cells.size() * 3);
  for (Id id : cells) {
    const Cell& c = cells_[id];
    const int apex_slot = static_cast<int>(std::find(c.v.begin(), c.v.end(), apex) - c.v.begin());
    for (int j = 0; j < 4; ++j) {
      if (j == apex_slot) continue;
      std::array<Id, 2> rim{};
      for (int k = 0, m = 0; k < 4; ++k)
        if (k != j && k != apex_slot) rim[m++] = c.v[k];
      const auto [a, b] = std::minmax(rim[0], rim[1]);
      const auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a + 1)) << 32) |
                       static_cast<std::uint32_t>(b + 1);
      entries.push_back({key, id, j});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.key < y.key || (x.key == y.key && x.cell < y.cell);
  });
  if (entries.size() % 2 != 0) throw InternalInconsistency("cavity boundary is not closed");
  for (std::size_t i = 0; i < entries.size(); i += 2) {
    if (entries[i].key != entries[i + 1].key)
      throw InternalInconsistency("cavity boundary is not a topological sphere");
    cells_[entries[i].cell].n[entries[i].slot] = entries[i + 1].cell;
    cells_[entries[i + 1].cell].n[entries[i + 1].slot] = entries[i].cell;
  }
}

void Triangulator::insert(Id p) {
  const Id start = locate(p, last_);
  if (++epoch_ == 0) {
    std::fill(visit_.begin(), visit_.end(), 0u);
    epoch_ = 1;
  }
  stack_.clear();
  conflict_.clear();
  boundary_.clear();
  visit_[start] = epoch_;
  conflict_flag_[start] = 1;
  stack_.push_back(start);
  while (!stack_.empty()) {
    const Id c = stack_.back();
    stack_.pop_back();
    conflict_.push_back(c);
    for (int i = 0; i < 4; ++i) {
      const Id nb = cells_[c].n[i];
      if (visit_[nb] != epoch_) {
        visit_[nb] = epoch_;
        conflict_flag_[nb] = in_conflict(cells_[nb], p) ? 1 : 0;
        if (conflict_flag_[nb]) {
          stack_.push_back(nb);
          continue;
        }
      }
      if (!conflict_flag_[nb]) boundary_.push_back({c, i});
    }
  }

  created_.clear();
  for (const FaceRef& f : boundary_) {
    Cell nc = cells_[f.cell];
    const Id outside = nc.n[f.slot];
    nc.v[f.slot] = p;
    const Id id = allocate(nc);
    created_.push_back(id);
    Cell& out = cells_[outside];
    for (int j = 0; j < 4; ++j)
      if (out.n[j] == f.cell) out.n[j] = id;
    if (infinite_slot(nc) < 0 &&
        predicates::orient3d(P(nc.v[0]), P(nc.v[1]), P(nc.v[2]), P(nc.v[3])) <= 0)
      throw InternalInconsistency("degenerate tetrahedron created during insertion");
  }
  link_new_cells(created_, p);
  for (Id c : conflict_) {
    alive_[c] = 0;
    free_.push_back(c);
  }
  last_ = created_.front();
}

std::vector<Id> Triangulator::insertion_order(std::span<const Id> rest, std::uint64_t seed) const {
  std::vector<Id> order(rest.begin(), rest.end());
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  Vec3 lo = P(order.empty() ? 0 : order[0]), hi = lo;
  for (Id i : order) {
    lo = lo.cwiseMin(P(i));
    hi = hi.cwiseMax(P(i));
  }
  const Vec3 extent = (hi - lo).cwiseMax(Vec3::Constant(1e-300));
  auto morton = [&](Id i) {
    const Vec3 t = (P(i) - lo).cwiseQuotient(extent) * double((1 << 21) - 1);
    return spread_bits(std::uint64_t(t.x())) | spread_bits(std::uint64_t(t.y())) << 1 |
           spread_bits(std::uint64_t(t.z())) << 2;
  };

  // Biased randomized insertion: rounds of doubling size, each sorted along a
  // space-filling curve so that consecutive walks stay short.
  std::size_t begin = 0, round = std::max<std::size_t>(order.size() / 64, 16);
  std::vector<std::pair<std::uint64_t, Id>> keyed;
  std::vector<std::size_t> bounds;
  for (std::size_t remaining = order.size(); remaining > 0;) {
    const std::size_t len = remaining > 2 * round ? remaining / 2 : remaining;
    bounds.push_back(len);
    remaining -= len;
  }
  std::reverse(bounds.begin(), bounds.end());
  for (std::size_t len : bounds) {
    keyed.clear();
    for (std::size_t k = begin; k < begin + len; ++k) keyed.emplace_back(morton(order[k]), order[k]);
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < len; ++k) order[begin + k] = keyed[k].second;
    begin += len;
  }
  return order;
}

void Triangulator::build(std::uint64_t seed) {
  const Id n = static_cast<Id>(pts_.size());
  if (n < 4) throw DegenerateInput("need at least 4 points, got " + std::to_string(n));

  // First affinely independent quadruple in index order.
  const Id i0 = 0;
  Id i1 = 1, i2 = kNoId, i3 = kNoId;
  for (Id j = 2; j < n && i2 == kNoId; ++j)
    if (predicates::coplanar_orientation_agreement(P(i0), P(i1), P(j), P(i0), P(i1), P(j)) != 0) i2 = j;
  if (i2 == kNoId) throw DegenerateInput("all points are collinear");
  int o = 0;
  for (Id j = i2 + 1; j < n && i3 == kNoId; ++j)
    if ((o = predicates::orient3d(P(i0), P(i1), P(i2), P(j))) != 0) i3 = j;
  if (i3 == kNoId) throw DegenerateInput("all points are coplanar");

  Cell first{{i0, i1, i2, i3}, {kNoId, kNoId, kNoId, kNoId}};
  if (o < 0) std::swap(first.v[0], first.v[1]);
  cells_.reserve(static_cast<std::size_t>(n) * 8);
  const Id root = allocate(first);
  std::vector<Id> hull;
  for (int k = 0; k < 4; ++k) {
    Cell h = first;
    h.v[k] = kInfinite;
    // Beyond face k the orientation flips; swap two finite slots to restore it.
    const int a = (k + 1) & 3, b = (k + 2) & 3;
    std::swap(h.v[a], h.v[b]);
    h.n = {kNoId, kNoId, kNoId, kNoId};
    const Id id = allocate(h);
    cells_[id].n[k] = root;
    cells_[root].n[k] = id;
    hull.push_back(id);
  }
  link_new_cells(hull, kInfinite);
  last_ = root;

  std::vector<Id> rest;
  rest.reserve(static_cast<std::size_t>(n));
  for (Id j = 0; j < n; ++j)
    if (j != i0 && j != i1 && j != i2 && j != i3) rest.push_back(j);
  for (Id p : insertion_order(rest, seed)) insert(p);
}

std::vector<Tetrahedron> Triangulator::finite_tetrahedra() const {
  std::vector<Tetrahedron> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!alive_[i] || infinite_slot(cells_[i]) >= 0) continue;
    Tetrahedron t = cells_[i].v;
    std::sort(t.begin(), t.end());
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Tetrahedron> delaunay_tetrahedra(std::span<const Vec3> points, std::uint64_t insertion_seed) {
  std::vector<Vec3> sorted(points.begin(), points.end());
  const auto lex = [](const Vec3& a, const Vec3& b) {
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
  };
  std::sort(sorted.begin(), sorted.end(), lex);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("delaunay_tetrahedra: duplicate points");
  Triangulator tri(points);
  tri.build(insertion_seed);
  return tri.finite_tetrahedra();
}

}  // namespace phrecon
