#include "phrecon/mesh.hpp"

#include <algorithm>
#include <numeric>

#include "phrecon/errors.hpp"
#include "phrecon/predicates.hpp"

namespace phrecon {
namespace {

std::vector<EdgeKey> edge_list(const std::vector<Triangle>& triangles) {
  std::vector<EdgeKey> edges;
  edges.reserve(3 * triangles.size());
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) {
      const auto [a, b] = std::minmax(t[k], t[(k + 1) % 3]);
      edges.push_back({a, b});
    }
  std::sort(edges.begin(), edges.end());
  return edges;
}

struct UnionFind {
  std::vector<Id> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Id find(Id x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Id a, Id b) { parent[find(a)] = find(b); }
};

std::vector<Triangle> chain_triangles(const Chain& cycle, const Filtration& f) {
  if (cycle.dim != 2) throw std::invalid_argument("expected a 2-chain");
  std::vector<Triangle> out;
  out.reserve(cycle.size());
  for (Id s : cycle.simplices) {
    const auto v = f[s].verts();
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

}  // namespace

std::vector<EdgeKey> SurfaceMesh::edges() const {
  auto e = edge_list(faces);
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

std::size_t SurfaceMesh::edge_count() const { return edges().size(); }

long SurfaceMesh::euler_characteristic() const {
  std::vector<char> used(vertices.size(), 0);
  for (const auto& t : faces)
    for (Id v : t) used[v] = 1;
  const long v = std::count(used.begin(), used.end(), 1);
  return v - static_cast<long>(edge_count()) + static_cast<long>(faces.size());
}

void SurfaceMesh::update_flags() {
  const auto all = edge_list(faces);
  bool every_two = !faces.empty(), at_most_two = true;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    every_two = every_two && j - i == 2;
    at_most_two = at_most_two && j - i <= 2;
    i = j;
  }
  bool proper = true;
  for (const auto& t : faces) proper = proper && t[0] != t[1] && t[1] != t[2] && t[0] != t[2];
  manifold = proper && at_most_two && nonmanifold_vertices(faces).empty();
  closed = proper && every_two;
}

std::vector<Id> nonmanifold_vertices(const std::vector<Triangle>& triangles) {
  // (vertex, other endpoint of an edge at the vertex, face) incidences.
  struct Inc {
    Id v, w, face;
    auto operator<=>(const Inc&) const = default;
  };
  std::vector<Inc> inc;
  inc.reserve(6 * triangles.size());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto& t = triangles[i];
    for (int k = 0; k < 3; ++k) {
      const Id f = static_cast<Id>(i);
      inc.push_back({t[k], t[(k + 1) % 3], f});
      inc.push_back({t[k], t[(k + 2) % 3], f});
    }
  }
  std::sort(inc.begin(), inc.end());
  UnionFind uf(triangles.size());
  std::vector<Id> out;
  for (std::size_t i = 0; i < inc.size();) {
    std::size_t j = i;
    while (j < inc.size() && inc[j].v == inc[i].v) ++j;
    // Faces sharing the edge (v, w) are adjacent in the fan of v.
    for (std::size_t k = i + 1; k < j; ++k)
      if (inc[k].w == inc[k - 1].w) uf.unite(inc[k].face, inc[k - 1].face);
    const Id root = uf.find(inc[i].face);
    for (std::size_t k = i + 1; k < j; ++k)
      if (uf.find(inc[k].face) != root) {
        out.push_back(inc[i].v);
        break;
      }
    // Reset the faces touched so the next vertex starts from singletons.
    for (std::size_t k = i; k < j; ++k) uf.parent[inc[k].face] = inc[k].face;
    i = j;
  }
  return out;
}

std::vector<EdgeKey> nonmanifold_edges(const std::vector<Triangle>& triangles) {
  const auto all = edge_list(triangles);
  std::vector<EdgeKey> out;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    if (j - i > 2) out.push_back(all[i]);
    i = j;
  }
  return out;
}

std::vector<Id> find_nonmanifold_vertices(const Chain& cycle, const Filtration& f) {
  return nonmanifold_vertices(chain_triangles(cycle, f));
}

std::vector<EdgeKey> find_nonmanifold_edges(const Chain& cycle, const Filtration& f) {
  return nonmanifold_edges(chain_triangles(cycle, f));
}

VolumeMesh mesh_from_volume(const Filtration& f, const Chain& volume) {
  const Chain cycle = boundary(f, volume);
  VolumeMesh out;
  for (Id tri : cycle.simplices)
    for (Id v : f[tri].verts()) out.point_of_vertex.push_back(v);
  std::sort(out.point_of_vertex.begin(), out.point_of_vertex.end());
  out.point_of_vertex.erase(std::unique(out.point_of_vertex.begin(), out.point_of_vertex.end()),
                            out.point_of_vertex.end());
  auto local = [&](Id p) {
    return static_cast<Id>(std::lower_bound(out.point_of_vertex.begin(), out.point_of_vertex.end(), p) -
                           out.point_of_vertex.begin());
  };
  if (f.has_geometry())
    for (Id p : out.point_of_vertex) out.mesh.vertices.push_back(f.point(p));

  for (Id tri : cycle.simplices) {
    auto v = f[tri].verts();
    Triangle t{v[0], v[1], v[2]};
    if (f.has_geometry()) {
      // The one tetrahedron of the volume on this face lies behind it.
      for (Id tet : f.cofaces(tri)) {
        if (!volume.contains(tet)) continue;
        Id apex = kNoId;
        for (Id x : f[tet].verts())
          if (x != t[0] && x != t[1] && x != t[2]) apex = x;
        if (predicates::orient3d(f.point(t[0]), f.point(t[1]), f.point(t[2]), f.point(apex)) > 0)
          std::swap(t[1], t[2]);
        break;
      }
    }
    out.mesh.faces.push_back({local(t[0]), local(t[1]), local(t[2])});
  }
  out.mesh.update_flags();
  return out;
}

CleanedCycle clean_cycle(const PersistentVolume& pv, const Filtration& f) {
  CleanedCycle out;
  out.volume = pv;
  Chain& vol = out.volume.volume;

  auto remove_if_touching = [&](auto touches) {
    const std::size_t before = vol.size();
    std::erase_if(vol.simplices, [&](Id tet) { return touches(f[tet].verts()); });
    out.removed_tetrahedra += before - vol.size();
    if (vol.empty()) throw EmptiedVolume("non-manifold cleanup removed every tetrahedron of the volume");
    return before != vol.size();
  };

  for (;;) {
    ++out.rounds;
    bool changed = false;
    const auto bad_vertices = find_nonmanifold_vertices(boundary(f, vol), f);
    if (!bad_vertices.empty()) {
      changed |= remove_if_touching([&](std::span<const Id> tet) {
        return std::any_of(tet.begin(), tet.end(),
                           [&](Id v) { return std::binary_search(bad_vertices.begin(), bad_vertices.end(), v); });
      });
    }
    const auto bad_edges = find_nonmanifold_edges(boundary(f, vol), f);
    if (!bad_edges.empty()) {
      changed |= remove_if_touching([&](std::span<const Id> tet) {
        for (int a = 0; a < 4; ++a)
          for (int b = a + 1; b < 4; ++b)
            if (std::binary_search(bad_edges.begin(), bad_edges.end(), EdgeKey{tet[a], tet[b]})) return true;
        return false;
      });
    }
    if (!changed) break;
  }
  out.volume.cycle = boundary(f, vol);
  out.surface = mesh_from_volume(f, vol);
  return out;
}

}  // namespace phrecon
