#include "phrecon/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "phrecon/errors.hpp"
#include "phrecon/kernels.hpp"

namespace phrecon {
namespace {

bool order_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.vertices < b.vertices;
}

template <std::size_t N>
Id index_of(const std::vector<std::array<Id, N>>& sorted, const std::array<Id, N>& key) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
  if (it == sorted.end() || *it != key) return kNoId;
  return static_cast<Id>(it - sorted.begin());
}

// Squared radius and center of the smallest sphere through a triangle.
std::pair<double, Vec3> triangle_circumsphere(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 u = b - a, v = c - a;
  const Vec3 n = u.cross(v);
  const Vec3 offset = (v.squaredNorm() * n.cross(u) + u.squaredNorm() * v.cross(n)) / (2.0 * n.squaredNorm());
  return {offset.squaredNorm(), a + offset};
}

}  // namespace

Simplex Simplex::make(std::span<const Id> verts, double value) {
  Simplex s;
  s.dim = static_cast<int>(verts.size()) - 1;
  std::copy(verts.begin(), verts.end(), s.vertices.begin());
  std::sort(s.vertices.begin(), s.vertices.begin() + verts.size());
  s.value = value;
  return s;
}

Filtration Filtration::from_simplices(std::vector<Simplex> simplices, PointCloud cloud) {
  Filtration f;
  std::sort(simplices.begin(), simplices.end(), order_less);
  f.simplices_ = std::move(simplices);
  f.cloud_ = std::move(cloud);
  const std::size_t n = f.simplices_.size();

  for (std::size_t i = 0; i < n; ++i) {
    const Simplex& s = f.simplices_[i];
    if (s.dim < 0 || s.dim > 3) throw std::invalid_argument("simplex dimension out of range");
    for (int k = 1; k <= s.dim; ++k)
      if (s.vertices[k - 1] >= s.vertices[k]) throw std::invalid_argument("repeated vertex in simplex");
    f.by_dim_[s.dim].push_back(static_cast<Id>(i));
  }
  for (auto& ids : f.by_dim_) {
    std::sort(ids.begin(), ids.end(),
              [&](Id a, Id b) { return f.simplices_[a].vertices < f.simplices_[b].vertices; });
    for (std::size_t k = 1; k < ids.size(); ++k)
      if (f.simplices_[ids[k - 1]].vertices == f.simplices_[ids[k]].vertices)
        throw std::invalid_argument("duplicate simplex");
  }

  f.face_ids_.assign(4 * n, kNoId);
  std::vector<Id> coface_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Simplex& s = f.simplices_[i];
    if (s.dim == 0) continue;
    for (int drop = 0; drop <= s.dim; ++drop) {
      std::array<Id, 3> face{};
      for (int k = 0, m = 0; k <= s.dim; ++k)
        if (k != drop) face[m++] = s.vertices[k];
      const Id id = f.find({face.data(), static_cast<std::size_t>(s.dim)});
      if (id == kNoId) throw std::invalid_argument("simplex is missing a face");
      if (static_cast<std::size_t>(id) >= i)
        throw std::invalid_argument("face does not precede its coface in the filtration");
      f.face_ids_[4 * i + static_cast<std::size_t>(drop)] = id;
      ++coface_count[id];
    }
    std::sort(f.face_ids_.begin() + 4 * i, f.face_ids_.begin() + 4 * i + s.dim + 1);
  }

  f.coface_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) f.coface_offsets_[i + 1] = f.coface_offsets_[i] + coface_count[i];
  f.coface_ids_.assign(static_cast<std::size_t>(f.coface_offsets_[n]), kNoId);
  std::vector<Id> fill(f.coface_offsets_.begin(), f.coface_offsets_.end() - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (Id face : f.faces(static_cast<Id>(i))) f.coface_ids_[fill[face]++] = static_cast<Id>(i);
  return f;
}

Id Filtration::find(std::span<const Id> vertices) const {
  if (vertices.empty() || vertices.size() > 4) return kNoId;
  const auto& ids = by_dim_[vertices.size() - 1];
  std::array<Id, 4> key{kNoId, kNoId, kNoId, kNoId};
  std::copy(vertices.begin(), vertices.end(), key.begin());
  const auto it = std::lower_bound(ids.begin(), ids.end(), key,
                                   [&](Id a, const std::array<Id, 4>& k) { return simplices_[a].vertices < k; });
  if (it == ids.end() || simplices_[*it].vertices != key) return kNoId;
  return *it;
}

std::size_t Filtration::prefix_length(double r) const {
  const auto it = std::upper_bound(simplices_.begin(), simplices_.end(), r,
                                   [](double x, const Simplex& s) { return x < s.value; });
  return static_cast<std::size_t>(it - simplices_.begin());
}

DelaunaySkeleton delaunay3(const PointCloud& cloud, std::uint64_t insertion_seed) {
  DeduplicatedCloud dedup = deduplicate(cloud);
  DelaunaySkeleton sk;
  sk.tetrahedra = delaunay_tetrahedra(dedup.cloud.points, insertion_seed);
  sk.cloud = std::move(dedup.cloud);
  sk.source_to_unique = std::move(dedup.source_to_unique);

  sk.triangles.reserve(sk.tetrahedra.size() * 4);
  for (const auto& t : sk.tetrahedra) {
    sk.triangles.push_back({t[1], t[2], t[3]});
    sk.triangles.push_back({t[0], t[2], t[3]});
    sk.triangles.push_back({t[0], t[1], t[3]});
    sk.triangles.push_back({t[0], t[1], t[2]});
  }
  std::sort(sk.triangles.begin(), sk.triangles.end());
  sk.triangles.erase(std::unique(sk.triangles.begin(), sk.triangles.end()), sk.triangles.end());

  sk.edges.reserve(sk.triangles.size() * 3);
  for (const auto& t : sk.triangles) {
    sk.edges.push_back({t[1], t[2]});
    sk.edges.push_back({t[0], t[2]});
    sk.edges.push_back({t[0], t[1]});
  }
  std::sort(sk.edges.begin(), sk.edges.end());
  sk.edges.erase(std::unique(sk.edges.begin(), sk.edges.end()), sk.edges.end());
  return sk;
}

Filtration alpha_values(const DelaunaySkeleton& sk) {
  const auto& pts = sk.cloud.points;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Values are squared radii until the end; sqrt is monotone so the order
  // and the face inequalities survive the conversion.
  std::vector<double> tet_value(sk.tetrahedra.size());
  kernels::tetra_circumradii_parallel(pts, sk.tetrahedra, tet_value);

  // A simplex whose smallest circumsphere holds no vertex of a coface gets its
  // circumradius; otherwise it is attached and enters with its first coface.
  std::vector<double> tri_value(sk.triangles.size(), kInf);
  std::vector<char> tri_gabriel(sk.triangles.size(), 1);
  std::vector<std::pair<double, Vec3>> tri_sphere(sk.triangles.size());
  for (std::size_t i = 0; i < sk.triangles.size(); ++i) {
    const auto& t = sk.triangles[i];
    tri_sphere[i] = triangle_circumsphere(pts[t[0]], pts[t[1]], pts[t[2]]);
  }
  for (std::size_t ti = 0; ti < sk.tetrahedra.size(); ++ti) {
    const auto& t = sk.tetrahedra[ti];
    for (int drop = 0; drop < 4; ++drop) {
      std::array<Id, 3> face{};
      for (int k = 0, m = 0; k < 4; ++k)
        if (k != drop) face[m++] = t[k];
      const Id f = index_of(sk.triangles, face);
      tri_value[f] = std::min(tri_value[f], tet_value[ti]);
      const auto& [r2, center] = tri_sphere[f];
      if ((pts[t[drop]] - center).squaredNorm() < r2) tri_gabriel[f] = 0;
    }
  }
  for (std::size_t i = 0; i < sk.triangles.size(); ++i)
    if (tri_gabriel[i]) tri_value[i] = std::min(tri_value[i], tri_sphere[i].first);

  std::vector<double> edge_value(sk.edges.size(), kInf);
  std::vector<char> edge_gabriel(sk.edges.size(), 1);
  for (std::size_t ti = 0; ti < sk.triangles.size(); ++ti) {
    const auto& t = sk.triangles[ti];
    for (int drop = 0; drop < 3; ++drop) {
      std::array<Id, 2> e{};
      for (int k = 0, m = 0; k < 3; ++k)
        if (k != drop) e[m++] = t[k];
      const Id ei = index_of(sk.edges, e);
      edge_value[ei] = std::min(edge_value[ei], tri_value[ti]);
      const Vec3& o = pts[t[drop]];
      if ((o - pts[e[0]]).dot(o - pts[e[1]]) < 0.0) edge_gabriel[ei] = 0;
    }
  }
  for (std::size_t i = 0; i < sk.edges.size(); ++i) {
    if (edge_gabriel[i]) {
      const auto& e = sk.edges[i];
      edge_value[i] = std::min(edge_value[i], 0.25 * (pts[e[0]] - pts[e[1]]).squaredNorm());
    }
  }

  std::vector<Simplex> all;
  all.reserve(pts.size() + sk.edges.size() + sk.triangles.size() + sk.tetrahedra.size());
  for (std::size_t v = 0; v < pts.size(); ++v) {
    const Id id = static_cast<Id>(v);
    all.push_back(Simplex::make({&id, 1}, 0.0));
  }
  for (std::size_t i = 0; i < sk.edges.size(); ++i)
    all.push_back(Simplex::make(sk.edges[i], std::sqrt(edge_value[i])));
  for (std::size_t i = 0; i < sk.triangles.size(); ++i)
    all.push_back(Simplex::make(sk.triangles[i], std::sqrt(tri_value[i])));
  for (std::size_t i = 0; i < sk.tetrahedra.size(); ++i)
    all.push_back(Simplex::make(sk.tetrahedra[i], std::sqrt(tet_value[i])));
  return Filtration::from_simplices(std::move(all), sk.cloud);
}

}  // namespace phrecon
