#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "phrecon/errors.hpp"
#include "phrecon/pd_analysis.hpp"

using namespace phrecon;

namespace {

PersistenceDiagram diagram_of(const std::vector<std::pair<double, double>>& bd, int dim = 2) {
  PersistenceDiagram d;
  Id id = 0;
  for (auto [b, death] : bd) d.pairs.push_back({dim, b, death, id++, id++});
  return d;
}

double sse(const std::vector<double>& v) {
  if (v.empty()) return 0;
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

// Exhaustive minimum over every split position of the sorted values.
double best_split_sse(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double best = sse(v);
  for (std::size_t k = 1; k < v.size(); ++k)
    best = std::min(best, sse({v.begin(), v.begin() + k}) + sse({v.begin() + k, v.end()}));
  return best;
}

double split_sse(const std::vector<double>& v, const SignificanceSplit& s) {
  std::vector<double> a, b;
  for (auto i : s.significant) a.push_back(v[i]);
  for (auto i : s.noise) b.push_back(v[i]);
  return sse(a) + sse(b);
}

}  // namespace

TEST_CASE("projection onto the anti-diagonal") {
  auto p = project_persistence(diagram_of({{1, 3}}));
  CHECK(p.persistence[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  p = project_persistence(diagram_of({{0.1, 2.0}, {0.2, 0.25}}));
  CHECK(p.persistence[0] == doctest::Approx(1.9 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(p.persistence[1] == doctest::Approx(0.05 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("diagonal, essential and other-dimension pairs are dropped") {
  PersistenceDiagram d = diagram_of({{0.5, 0.5}, {0.1, 0.9}});
  d.pairs.push_back({2, 0.3, kInfinity, 10, kNoId});
  d.pairs.push_back({1, 0.0, 5.0, 12, 13});
  const auto p = project_persistence(d);
  REQUIRE(p.pairs.size() == 1);
  CHECK(p.pairs[0].birth == 0.1);
  CHECK_THROWS_AS(project_persistence(diagram_of({{0.5, 0.5}})), EmptyDiagram);
  CHECK_THROWS_AS(project_persistence(PersistenceDiagram{}), EmptyDiagram);
}

TEST_CASE("well separated clusters") {
  const std::vector<double> v{2.0, 1.9, 0.05, 0.04, 0.06};
  const auto s = split_significant(v);
  CHECK(s.significant == std::vector<std::size_t>{0, 1});
  CHECK(s.noise == std::vector<std::size_t>{2, 3, 4});
  CHECK(s.threshold == 1.9);
  CHECK_FALSE(s.warning);
}

TEST_CASE("single value is significant") {
  const auto s = split_significant({1.0});
  CHECK(s.significant == std::vector<std::size_t>{0});
  CHECK(s.noise.empty());
}

TEST_CASE("three large among 47 small") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> small(0.01, 0.1), large(1.0, 1.5);
  std::vector<double> v;
  for (int i = 0; i < 47; ++i) v.push_back(small(rng));
  for (std::size_t at : {5, 20, 40}) v.insert(v.begin() + static_cast<std::ptrdiff_t>(at), large(rng));
  const auto s = split_significant(v);
  CHECK(s.significant == std::vector<std::size_t>{5, 20, 40});
  CHECK(split_sse(v, s) == doctest::Approx(best_split_sse(v)).epsilon(1e-12));
}

TEST_CASE("split is optimal, monotone and scale equivariant") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % (trial < 280 ? 60 : 1000);
    std::vector<double> v(n);
    std::exponential_distribution<double> e(1.0 + trial % 5);
    for (auto& x : v) x = e(rng);
    if (trial % 7 == 0)
      for (auto& x : v) x = std::round(x * 4) / 4;  // many ties
    const auto s = split_significant(v);
    CHECK(s.significant.size() + s.noise.size() == n);
    REQUIRE_FALSE(s.significant.empty());
    CHECK(split_sse(v, s) <= best_split_sse(v) + 1e-9 * (1 + best_split_sse(v)));
    double min_sig = kInfinity, max_noise = -kInfinity;
    for (auto i : s.significant) min_sig = std::min(min_sig, v[i]);
    for (auto i : s.noise) max_noise = std::max(max_noise, v[i]);
    CHECK(min_sig > max_noise);
    const double c = 0.001 + double(trial);
    std::vector<double> scaled(v);
    for (auto& x : scaled) x *= c;
    const auto t = split_significant(scaled);
    CHECK(t.significant == s.significant);
  }
}

TEST_CASE("ambiguous spread triggers a warning") {
  const auto s = split_significant({1.0, 1.2, 1.5});
  CHECK(s.warning);
  CHECK_FALSE(s.significant.empty());
}
