#include "phrecon/point_cloud.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace phrecon {

PointCloud::PointCloud(std::vector<Vec3> pts) : points(std::move(pts)) {
  ids.resize(points.size());
  std::iota(ids.begin(), ids.end(), std::int64_t{0});
}

void PointCloud::push_back(const Vec3& p, std::int64_t id) {
  points.push_back(p);
  ids.push_back(id);
}

DeduplicatedCloud deduplicate(const PointCloud& input) {
  const std::size_t n = input.size();
  std::vector<Id> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](Id i) {
    const Vec3& p = input.points[i];
    return std::make_tuple(p.x(), p.y(), p.z(), i);
  };
  std::sort(order.begin(), order.end(), [&](Id a, Id b) { return key(a) < key(b); });

  // Representative of each run of equal coordinates is its smallest index,
  // which the secondary sort key puts first.
  std::vector<Id> rep(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Id i = order[k];
    if (k > 0 && input.points[order[k - 1]] == input.points[i]) {
      rep[i] = rep[order[k - 1]];
    } else {
      rep[i] = i;
    }
  }

  DeduplicatedCloud out;
  out.source_to_unique.assign(n, kNoId);
  for (std::size_t i = 0; i < n; ++i) {
    if (rep[i] == static_cast<Id>(i)) {
      out.source_to_unique[i] = static_cast<Id>(out.cloud.size());
      out.cloud.push_back(input.points[i], input.ids.empty() ? std::int64_t(i) : input.ids[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.source_to_unique[i] = out.source_to_unique[rep[i]];
  return out;
}

}  // namespace phrecon
