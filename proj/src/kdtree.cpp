#include "phrecon/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace phrecon {

KdTree::KdTree(std::span<const Vec3> points) {
  index_.resize(points.size());
  std::iota(index_.begin(), index_.end(), 0);
  points_.assign(points.begin(), points.end());
  split_.assign(points.size(), -1);
  build(0, points.size());
  std::vector<Vec3> permuted(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) permuted[k] = points[static_cast<std::size_t>(index_[k])];
  points_ = std::move(permuted);
}

// Until the final permutation in the constructor, points_ holds the input in
// original order and index_ is sorted in place.
void KdTree::build(std::size_t lo, std::size_t hi) {
  if (hi - lo <= kLeaf) return;
  Vec3 mn = points_[index_[lo]], mx = mn;
  for (std::size_t k = lo + 1; k < hi; ++k) {
    mn = mn.cwiseMin(points_[index_[k]]);
    mx = mx.cwiseMax(points_[index_[k]]);
  }
  int dim = 0;
  (mx - mn).maxCoeff(&dim);
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(lo), index_.begin() + static_cast<std::ptrdiff_t>(mid),
                   index_.begin() + static_cast<std::ptrdiff_t>(hi), [&](Id a, Id b) {
                     const double ca = points_[a][dim], cb = points_[b][dim];
                     return ca < cb || (ca == cb && a < b);
                   });
  split_[mid] = static_cast<signed char>(dim);
  build(lo, mid);
  build(mid + 1, hi);
}

template <typename Accept>
void KdTree::search(std::size_t lo, std::size_t hi, const Vec3& q, Hit& best, const Accept& accept) const {
  auto consider = [&](std::size_t k) {
    const double d2 = (points_[k] - q).squaredNorm();
    if (!accept(d2)) return;
    if (d2 < best.dist2 || (d2 == best.dist2 && index_[k] < best.index)) best = {index_[k], d2};
  };
  if (hi - lo <= kLeaf) {
    for (std::size_t k = lo; k < hi; ++k) consider(k);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const int dim = split_[mid];
  const double diff = q[dim] - points_[mid][dim];
  consider(mid);
  if (diff < 0) {
    search(lo, mid, q, best, accept);
    if (diff * diff <= best.dist2) search(mid + 1, hi, q, best, accept);
  } else {
    search(mid + 1, hi, q, best, accept);
    if (diff * diff <= best.dist2) search(lo, mid, q, best, accept);
  }
}

KdTree::Hit KdTree::nearest(const Vec3& q) const {
  Hit best;
  search(0, points_.size(), q, best, [](double) { return true; });
  return best;
}

KdTree::Hit KdTree::nearest_other(const Vec3& q) const {
  Hit best;
  search(0, points_.size(), q, best, [](double d2) { return d2 > 0.0; });
  return best;
}

void KdTree::collect(std::size_t lo, std::size_t hi, const Vec3& q, double r2, std::vector<Id>& out) const {
  if (hi - lo <= kLeaf) {
    for (std::size_t k = lo; k < hi; ++k)
      if ((points_[k] - q).squaredNorm() <= r2) out.push_back(index_[k]);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const int dim = split_[mid];
  const double diff = q[dim] - points_[mid][dim];
  if ((points_[mid] - q).squaredNorm() <= r2) out.push_back(index_[mid]);
  if (diff <= 0 || diff * diff <= r2) collect(lo, mid, q, r2, out);
  if (diff >= 0 || diff * diff <= r2) collect(mid + 1, hi, q, r2, out);
}

std::vector<Id> KdTree::within(const Vec3& q, double radius) const {
  std::vector<Id> out;
  collect(0, points_.size(), q, radius * radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace phrecon
