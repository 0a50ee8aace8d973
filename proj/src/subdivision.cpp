#include "phrecon/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "phrecon/errors.hpp"

namespace phrecon {
namespace {

double loop_beta(std::size_t n) {
  const double c = 3.0 / 8.0 + 0.25 * std::cos(2.0 * std::numbers::pi / double(n));
  return (5.0 / 8.0 - c * c) / double(n);
}

}  // namespace

LoopLevel loop_level(std::size_t vertex_count, const std::vector<Triangle>& faces) {
  // (edge, apex) for every face corner.
  struct Corner {
    EdgeKey edge;
    Id apex;
    auto operator<=>(const Corner&) const = default;
  };
  std::vector<Corner> corners;
  corners.reserve(3 * faces.size());
  for (const auto& t : faces)
    for (int k = 0; k < 3; ++k) {
      const auto [a, b] = std::minmax(t[k], t[(k + 1) % 3]);
      corners.push_back({{a, b}, t[(k + 2) % 3]});
    }
  std::sort(corners.begin(), corners.end());
  if (corners.size() % 2 != 0) throw NotManifold("Loop subdivision needs a closed manifold");
  const std::size_t edge_count = corners.size() / 2;
  for (std::size_t e = 0; e < edge_count; ++e) {
    const auto& c0 = corners[2 * e];
    const auto& c1 = corners[2 * e + 1];
    const bool next_same = 2 * e + 2 < corners.size() && corners[2 * e + 2].edge == c0.edge;
    if (c0.edge != c1.edge || next_same) throw NotManifold("Loop subdivision needs every edge on exactly two faces");
  }

  std::vector<std::vector<Id>> ring(vertex_count);
  for (std::size_t e = 0; e < edge_count; ++e) {
    const auto& edge = corners[2 * e].edge;
    ring[edge[0]].push_back(edge[1]);
    ring[edge[1]].push_back(edge[0]);
  }

  std::vector<Eigen::Triplet<double, Id>> entries;
  entries.reserve(vertex_count * 7 + edge_count * 4);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    const std::size_t n = ring[v].size();
    if (n == 0) {
      entries.emplace_back(static_cast<Id>(v), static_cast<Id>(v), 1.0);
      continue;
    }
    const double beta = loop_beta(n);
    entries.emplace_back(static_cast<Id>(v), static_cast<Id>(v), 1.0 - double(n) * beta);
    for (Id w : ring[v]) entries.emplace_back(static_cast<Id>(v), w, beta);
  }
  for (std::size_t e = 0; e < edge_count; ++e) {
    const Id row = static_cast<Id>(vertex_count + e);
    const auto& c = corners[2 * e];
    entries.emplace_back(row, c.edge[0], 3.0 / 8.0);
    entries.emplace_back(row, c.edge[1], 3.0 / 8.0);
    entries.emplace_back(row, c.apex, 1.0 / 8.0);
    entries.emplace_back(row, corners[2 * e + 1].apex, 1.0 / 8.0);
  }

  LoopLevel level;
  level.stencil.resize(static_cast<Id>(vertex_count + edge_count), static_cast<Id>(vertex_count));
  level.stencil.setFromTriplets(entries.begin(), entries.end());

  auto edge_vertex = [&](Id a, Id b) {
    const EdgeKey key{std::min(a, b), std::max(a, b)};
    const auto it = std::lower_bound(corners.begin(), corners.end(), Corner{key, std::numeric_limits<Id>::min()});
    return static_cast<Id>(vertex_count + static_cast<std::size_t>(it - corners.begin()) / 2);
  };
  level.faces.reserve(4 * faces.size());
  for (const auto& t : faces) {
    const Id ab = edge_vertex(t[0], t[1]), bc = edge_vertex(t[1], t[2]), ca = edge_vertex(t[2], t[0]);
    level.faces.push_back({t[0], ab, ca});
    level.faces.push_back({t[1], bc, ab});
    level.faces.push_back({t[2], ca, bc});
    level.faces.push_back({ab, bc, ca});
  }
  return level;
}

Subdivision loop_subdivide(const SurfaceMesh& control, int levels) {
  if (levels < 0) throw std::invalid_argument("levels must be nonnegative");
  SurfaceMesh checked = control;
  checked.update_flags();
  if (!checked.closed || !checked.manifold) throw NotManifold("Loop subdivision needs a closed manifold mesh");

  const Id n = static_cast<Id>(control.vertices.size());
  Subdivision out;
  out.basis.resize(n, n);
  out.basis.setIdentity();
  std::vector<Triangle> faces = control.faces;
  std::size_t count = control.vertices.size();
  for (int l = 0; l < levels; ++l) {
    LoopLevel level = loop_level(count, faces);
    out.basis = (level.stencil * out.basis).pruned();
    faces = std::move(level.faces);
    count = static_cast<std::size_t>(level.stencil.rows());
  }
  out.basis.makeCompressed();
  out.mesh.faces = std::move(faces);
  out.mesh.vertices.resize(count);
  kernels::apply_basis_parallel(out.basis, control.vertices, out.mesh.vertices);
  out.mesh.update_flags();
  return out;
}

}  // namespace phrecon
