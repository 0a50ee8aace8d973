#include "phrecon/pd_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phrecon/errors.hpp"

namespace phrecon {

ProjectedPairs project_persistence(const PersistenceDiagram& diagram, int dim) {
  ProjectedPairs out;
  for (const auto& p : diagram.pairs) {
    if (p.dim != dim || p.essential() || !(p.death > p.birth)) continue;
    out.pairs.push_back(p);
    out.persistence.push_back(std::abs(p.birth - p.death) / std::sqrt(2.0));
  }
  if (out.pairs.empty())
    throw EmptyDiagram("no finite " + std::to_string(dim) + "-dimensional pair with positive persistence");
  return out;
}

SignificanceSplit split_significant(const std::vector<double>& values) {
  SignificanceSplit split;
  const std::size_t n = values.size();
  if (n == 0) return split;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  // Split point k: order[0..k) is noise, order[k..n) significant. SSE from
  // prefix sums of values shifted by their mean, which keeps cancellation small.
  std::size_t best_k = 0;
  if (n > 1) {
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / double(n);
    std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = values[order[i]] - mean;
      s1[i + 1] = s1[i] + x;
      s2[i + 1] = s2[i] + x * x;
    }
    auto sse = [&](std::size_t lo, std::size_t hi) {
      const double m = double(hi - lo);
      const double s = s1[hi] - s1[lo];
      return std::max(0.0, (s2[hi] - s2[lo]) - s * s / m);
    };
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < n; ++k) {
      // Equal values must land in the same cluster.
      if (values[order[k - 1]] == values[order[k]]) continue;
      const double cost = sse(0, k) + sse(k, n);
      if (cost < best) {
        best = cost;
        best_k = k;
      }
    }
  }
  split.noise.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_k));
  split.significant.assign(order.begin() + static_cast<std::ptrdiff_t>(best_k), order.end());
  std::sort(split.noise.begin(), split.noise.end());
  std::sort(split.significant.begin(), split.significant.end());
  split.threshold = values[order[best_k]];

  const double lo = values[order.front()], hi = values[order.back()];
  if (n > 1 && hi < 2.0 * lo)
    split.warning = "persistence values span less than a factor of 2; the significant/noise split is ambiguous";
  return split;
}

}  // namespace phrecon
