#pragma once

// Hand-built filtrations and meshes used by several test targets.

#include <array>
#include <cmath>
#include <numbers>
#include <map>
#include <set>
#include <random>
#include <string>
#include <vector>

#include "phrecon/cycles.hpp"
#include "phrecon/filtration.hpp"
#include "phrecon/mesh.hpp"
#include "support/oracles.hpp"

namespace phrecon::fixtures {

/// Builds a filtration from (vertex names, value) entries, e.g. {"ABC", 1.0}.
/// Vertex ids are letter offsets from 'A'.
inline Filtration lettered(const std::vector<std::pair<std::string, double>>& entries) {
  std::vector<Simplex> simplices;
  for (const auto& [name, value] : entries) {
    std::vector<Id> v;
    for (char c : name) v.push_back(c - 'A');
    simplices.push_back(Simplex::make(v, value));
  }
  return Filtration::from_simplices(std::move(simplices));
}

inline Id lookup(const Filtration& f, const std::string& name) {
  std::vector<Id> v;
  for (char c : name) v.push_back(c - 'A');
  return f.find(v);
}

/// Five triangles at r0 = 0, [ABC] at r1 = 1, [BCD] at r2 = 2, [ABCD] at
/// r3 = 3 and [BCDE] at r4 = 4.
inline Filtration five_vertex_example() {
  std::vector<std::pair<std::string, double>> e;
  for (const char* v : {"A", "B", "C", "D", "E"}) e.emplace_back(v, 0.0);
  for (const char* s : {"AB", "AC", "AD", "BC", "BD", "BE", "CD", "CE", "DE"}) e.emplace_back(s, 0.0);
  for (const char* s : {"ABD", "ACD", "BCE", "BDE", "CDE"}) e.emplace_back(s, 0.0);
  e.emplace_back("ABC", 1.0);
  e.emplace_back("BCD", 2.0);
  e.emplace_back("ABCD", 3.0);
  e.emplace_back("BCDE", 4.0);
  return lettered(e);
}

/// All faces of the given top simplices, each entering at `value`.
inline std::vector<Simplex> closure(const std::vector<std::vector<Id>>& tops, double value) {
  std::map<std::vector<Id>, double> all;
  for (auto t : tops) {
    std::sort(t.begin(), t.end());
    const int n = static_cast<int>(t.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<Id> s;
      for (int k = 0; k < n; ++k)
        if (mask & (1 << k)) s.push_back(t[k]);
      all.emplace(s, value);
    }
  }
  std::vector<Simplex> out;
  for (const auto& [s, v] : all) out.push_back(Simplex::make(s, v));
  return out;
}

/// Prefix {value <= r} as a plain complex for the rank oracle.
inline oracle::Complex prefix_complex(const Filtration& f, double r) {
  oracle::Complex k;
  for (const Simplex& s : f.simplices())
    if (s.value <= r) k.simplices[s.dim].emplace_back(s.verts().begin(), s.verts().end());
  return k;
}

/// Delaunay complex of `cloud` with random filtration values made monotone
/// over faces, giving pairings unlike those of alpha values.
inline Filtration random_valued_delaunay(const PointCloud& cloud, std::uint64_t seed) {
  const auto sk = delaunay3(cloud);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::map<std::vector<Id>, double> value;
  auto face_max = [&](const std::vector<Id>& s) {
    double m = 0.0;
    for (std::size_t drop = 0; drop < s.size() && s.size() > 1; ++drop) {
      std::vector<Id> f;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (k != drop) f.push_back(s[k]);
      m = std::max(m, value.at(f));
    }
    return m;
  };
  std::vector<Simplex> out;
  auto add = [&](std::vector<Id> s) {
    const double v = std::max(u(rng), face_max(s));
    value[s] = v;
    out.push_back(Simplex::make(s, v));
  };
  for (Id v = 0; v < static_cast<Id>(sk.cloud.size()); ++v) add({v});
  for (const auto& e : sk.edges) add({e.begin(), e.end()});
  for (const auto& t : sk.triangles) add({t.begin(), t.end()});
  for (const auto& t : sk.tetrahedra) add({t.begin(), t.end()});
  return Filtration::from_simplices(std::move(out), sk.cloud);
}

inline SurfaceMesh finish(SurfaceMesh m) {
  m.update_flags();
  return m;
}

inline SurfaceMesh tetrahedron_shell() {
  SurfaceMesh m;
  m.vertices = {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
  m.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return finish(m);
}

inline SurfaceMesh octahedron() {
  SurfaceMesh m;
  m.vertices = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};
  m.faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return finish(m);
}

inline SurfaceMesh icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  SurfaceMesh m;
  m.vertices = {Vec3(-1, t, 0), Vec3(1, t, 0), Vec3(-1, -t, 0), Vec3(1, -t, 0), Vec3(0, -1, t), Vec3(0, 1, t),
                Vec3(0, -1, -t), Vec3(0, 1, -t), Vec3(t, 0, -1), Vec3(t, 0, 1), Vec3(-t, 0, -1), Vec3(-t, 0, 1)};
  for (auto& v : m.vertices) v.normalize();
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
             {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  return finish(m);
}

/// Icosahedron refined by midpoint splits, projected to the sphere of `radius`.
inline SurfaceMesh icosphere(int levels, double radius = 1.0) {
  SurfaceMesh m = icosahedron();
  for (int l = 0; l < levels; ++l) {
    std::map<EdgeKey, Id> mid;
    auto midpoint = [&](Id a, Id b) {
      const EdgeKey k{std::min(a, b), std::max(a, b)};
      if (auto it = mid.find(k); it != mid.end()) return it->second;
      m.vertices.push_back((0.5 * (m.vertices[a] + m.vertices[b])).normalized());
      return mid[k] = static_cast<Id>(m.vertices.size() - 1);
    };
    std::vector<Triangle> faces;
    for (const auto& t : m.faces) {
      const Id ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
      faces.push_back({t[0], ab, ca});
      faces.push_back({t[1], bc, ab});
      faces.push_back({t[2], ca, bc});
      faces.push_back({ab, bc, ca});
    }
    m.faces = std::move(faces);
  }
  for (auto& v : m.vertices) v *= radius;
  return finish(m);
}

/// Torus around the z axis from an n x m grid, 2nm triangles.
inline SurfaceMesh torus_mesh(int n, int m, double major, double minor) {
  SurfaceMesh out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const double u = 2 * std::numbers::pi * i / n, v = 2 * std::numbers::pi * j / m;
      out.vertices.emplace_back((major + minor * std::cos(v)) * std::cos(u), (major + minor * std::cos(v)) * std::sin(u),
                                minor * std::sin(v));
    }
  auto at = [&](int i, int j) { return static_cast<Id>(((i + n) % n) * m + (j + m) % m); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      out.faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      out.faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  return finish(out);
}

/// Filtration holding the closure of the given tetrahedra over `points`.
inline Filtration tetrahedra_complex(const std::vector<Vec3>& points, const std::vector<std::vector<Id>>& tets) {
  return Filtration::from_simplices(closure(tets, 0.0), PointCloud(points));
}

/// A persistent volume holding the given tetrahedra; the pair is a placeholder.
inline PersistentVolume volume_of(const Filtration& f, const std::vector<Id>& tets) {
  PersistentVolume pv;
  pv.volume = Chain{3, tets};
  std::sort(pv.volume.simplices.begin(), pv.volume.simplices.end());
  pv.cycle = boundary(f, pv.volume);
  pv.pair = PersistencePair{2, 0.0, 1.0, pv.cycle.simplices.front(), pv.volume.simplices.back()};
  return pv;
}

/// Volumes in a Delaunay complex made of random blobs that touch in pinched
/// vertices or edges. Returns only volumes whose boundary is non-manifold.
struct PinchedFixture {
  Filtration filtration;
  PersistentVolume volume;
};
inline PinchedFixture pinched_volume(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    const std::size_t n = 40 + rng() % 40;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
    Filtration f = alpha_filtration(PointCloud(pts));
    const auto tets = f.of_dim(3);
    // Grow a few blobs by random walks across shared faces.
    std::set<Id> chosen;
    const int blobs = 2 + static_cast<int>(rng() % 3);
    for (int b = 0; b < blobs; ++b) {
      Id cur = tets[rng() % tets.size()];
      const int steps = 1 + static_cast<int>(rng() % 6);
      for (int s = 0; s < steps; ++s) {
        chosen.insert(cur);
        const auto faces = f.faces(cur);
        const Id tri = faces[rng() % faces.size()];
        const auto cof = f.cofaces(tri);
        if (cof.size() == 2) cur = cof[0] == cur ? cof[1] : cof[0];
      }
    }
    std::vector<Id> vol(chosen.begin(), chosen.end());
    const Chain cyc = boundary(f, Chain{3, vol});
    if (find_nonmanifold_vertices(cyc, f).empty() && find_nonmanifold_edges(cyc, f).empty()) continue;
    PersistentVolume pv = volume_of(f, vol);
    return {std::move(f), std::move(pv)};
  }
}

}  // namespace phrecon::fixtures
