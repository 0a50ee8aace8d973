#include "phrecon/qem.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <Eigen/LU>

#include "phrecon/errors.hpp"

namespace phrecon {
namespace {

using Quadric = Eigen::Matrix4d;

Quadric plane_quadric(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 n = (b - a).cross(c - a);
  const double len = n.norm();
  if (len == 0.0) return Quadric::Zero();
  n /= len;
  const Eigen::Vector4d p(n.x(), n.y(), n.z(), -n.dot(a));
  return p * p.transpose();
}

double quadric_error(const Quadric& q, const Vec3& x) {
  const Eigen::Vector4d h(x.x(), x.y(), x.z(), 1.0);
  return std::max(0.0, h.dot(q * h));
}

struct Candidate {
  double cost;
  Id u, v;
  std::uint32_t stamp_u, stamp_v;
  Vec3 target;
  bool operator>(const Candidate& o) const {
    if (cost != o.cost) return cost > o.cost;
    if (u != o.u) return u > o.u;
    return v > o.v;
  }
};

class Simplifier {
 public:
  explicit Simplifier(const SurfaceMesh& m) : pos_(m.vertices), faces_(m.faces) {
    const std::size_t n = pos_.size();
    quadric_.assign(n, Quadric::Zero());
    incident_.resize(n);
    stamp_.assign(n, 0);
    alive_face_.assign(faces_.size(), 1);
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      const auto& t = faces_[i];
      const Quadric q = plane_quadric(pos_[t[0]], pos_[t[1]], pos_[t[2]]);
      for (Id v : t) {
        quadric_[v] += q;
        incident_[v].push_back(static_cast<Id>(i));
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (!incident_[v].empty()) ++alive_vertices_;
    alive_faces_ = faces_.size();
  }

  std::size_t run(std::size_t target_faces) {
    for (Id v = 0; v < static_cast<Id>(pos_.size()); ++v) push_edges_of(v);
    std::size_t collapses = 0;
    while (alive_faces_ > target_faces && !heap_.empty()) {
      const Candidate c = heap_.top();
      heap_.pop();
      if (c.stamp_u != stamp_[c.u] || c.stamp_v != stamp_[c.v]) continue;
      if (!admissible(c.u, c.v, c.target)) continue;
      collapse(c.u, c.v, c.target);
      ++collapses;
    }
    return collapses;
  }

  SurfaceMesh result() const {
    SurfaceMesh out;
    std::vector<Id> remap(pos_.size(), kNoId);
    for (std::size_t v = 0; v < pos_.size(); ++v) {
      if (incident_[v].empty()) continue;
      remap[v] = static_cast<Id>(out.vertices.size());
      out.vertices.push_back(pos_[v]);
    }
    for (std::size_t i = 0; i < faces_.size(); ++i)
      if (alive_face_[i]) out.faces.push_back({remap[faces_[i][0]], remap[faces_[i][1]], remap[faces_[i][2]]});
    out.update_flags();
    return out;
  }

  std::size_t alive_faces() const { return alive_faces_; }

 private:
  std::vector<Id> neighbours(Id v) const {
    std::vector<Id> out;
    for (Id f : incident_[v])
      for (Id w : faces_[f])
        if (w != v) out.push_back(w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void push_edges_of(Id v) {
    for (Id w : neighbours(v)) {
      const Id a = std::min(v, w), b = std::max(v, w);
      const Quadric q = quadric_[a] + quadric_[b];
      Vec3 target = 0.5 * (pos_[a] + pos_[b]);
      double cost = quadric_error(q, target);
      const Eigen::Matrix3d A = q.topLeftCorner<3, 3>();
      const Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
      const double len = (pos_[a] - pos_[b]).norm();
      if (lu.isInvertible() && lu.rcond() > 1e-10) {
        const Vec3 x = lu.solve(-q.topRightCorner<3, 1>());
        // Keep the optimum only when it stays near the edge.
        if ((x - target).norm() <= 2.0 * len) {
          const double e = quadric_error(q, x);
          if (e <= cost) {
            cost = e;
            target = x;
          }
        }
      }
      for (const Vec3& x : {pos_[a], pos_[b]}) {
        const double e = quadric_error(q, x);
        if (e < cost) {
          cost = e;
          target = x;
        }
      }
      heap_.push({cost, a, b, stamp_[a], stamp_[b], target});
    }
  }

  bool admissible(Id u, Id v, const Vec3& target) const {
    if (alive_vertices_ <= 4) return false;
    // Link condition: the common neighbours are exactly the two apexes of
    // the faces on edge uv.
    std::vector<Id> apex;
    for (Id f : incident_[u]) {
      const auto& t = faces_[f];
      if (std::find(t.begin(), t.end(), v) == t.end()) continue;
      for (Id w : t)
        if (w != u && w != v) apex.push_back(w);
    }
    if (apex.size() != 2) return false;
    const auto nu = neighbours(u), nv = neighbours(v);
    std::vector<Id> common;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
    std::sort(apex.begin(), apex.end());
    if (common != apex) return false;

    // Faces that survive must keep their orientation and not collapse flat.
    for (Id x : {u, v}) {
      for (Id f : incident_[x]) {
        const auto& t = faces_[f];
        if (std::find(t.begin(), t.end(), x == u ? v : u) != t.end()) continue;
        std::array<Vec3, 3> before{pos_[t[0]], pos_[t[1]], pos_[t[2]]};
        std::array<Vec3, 3> after = before;
        for (int k = 0; k < 3; ++k)
          if (t[k] == x) after[k] = target;
        const Vec3 n0 = (before[1] - before[0]).cross(before[2] - before[0]);
        const Vec3 n1 = (after[1] - after[0]).cross(after[2] - after[0]);
        if (n1.dot(n0) <= 0.0) return false;
        // Reject slivers: the new normal must keep a fair share of its length.
        const double e = std::max({(after[1] - after[0]).squaredNorm(), (after[2] - after[1]).squaredNorm(),
                                   (after[0] - after[2]).squaredNorm()});
        if (n1.squaredNorm() < 1e-12 * e * e) return false;
      }
    }
    return true;
  }

  void collapse(Id u, Id v, const Vec3& target) {
    pos_[u] = target;
    quadric_[u] += quadric_[v];
    std::vector<Id> keep;
    for (Id f : incident_[u]) {
      auto& t = faces_[f];
      if (std::find(t.begin(), t.end(), v) != t.end()) {
        kill(f, u, v);
        continue;
      }
      keep.push_back(f);
    }
    for (Id f : incident_[v]) {
      if (!alive_face_[f]) continue;
      for (Id& w : faces_[f])
        if (w == v) w = u;
      keep.push_back(f);
    }
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    incident_[u] = std::move(keep);
    incident_[v].clear();
    --alive_vertices_;
    ++stamp_[u];
    ++stamp_[v];
    for (Id w : neighbours(u)) ++stamp_[w];
    push_edges_of(u);
    for (Id w : neighbours(u)) push_edges_of(w);
  }

  void kill(Id f, Id u, Id v) {
    alive_face_[f] = 0;
    --alive_faces_;
    for (Id w : faces_[f]) {
      if (w == u || w == v) continue;
      std::erase(incident_[w], f);
    }
  }

  std::vector<Vec3> pos_;
  std::vector<Triangle> faces_;
  std::vector<Quadric> quadric_;
  std::vector<std::vector<Id>> incident_;
  std::vector<std::uint32_t> stamp_;
  std::vector<char> alive_face_;
  std::size_t alive_vertices_ = 0;
  std::size_t alive_faces_ = 0;
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<Candidate>> heap_;
};

}  // namespace

QemResult qem_simplify(const SurfaceMesh& mesh, double target_ratio) {
  if (!(target_ratio > 0.0 && target_ratio < 1.0)) throw std::invalid_argument("target_ratio must lie in (0, 1)");
  SurfaceMesh checked = mesh;
  checked.update_flags();
  if (!checked.manifold || !checked.closed) throw NotManifold("QEM simplification needs a closed manifold mesh");

  const auto budget = static_cast<std::size_t>(std::ceil(target_ratio * double(mesh.faces.size())));
  Simplifier s(checked);
  QemResult out;
  out.collapses = s.run(budget);
  out.mesh = s.result();
  if (out.mesh.faces.size() > budget)
    out.warning = "simplification stopped at " + std::to_string(out.mesh.faces.size()) + " faces, above the budget of " +
                  std::to_string(budget) + ": no collapse left that preserves topology";
  return out;
}

}  // namespace phrecon
