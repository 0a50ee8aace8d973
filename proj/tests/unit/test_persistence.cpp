#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "phrecon/persistence.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic.hpp"

using namespace phrecon;

TEST_CASE("two points at distance d") {
  const double d = 1.7;
  std::vector<Simplex> s{Simplex::make(std::vector<Id>{0}, 0.0), Simplex::make(std::vector<Id>{1}, 0.0),
                         Simplex::make(std::vector<Id>{0, 1}, d / 2)};
  const auto pd = compute_persistence(Filtration::from_simplices(s));
  const auto zero = pd.of_dim(0);
  REQUIRE(zero.size() == 2);
  CHECK(zero[0].birth == 0.0);
  CHECK(zero[0].death == d / 2);
  CHECK(zero[1].birth == 0.0);
  CHECK(zero[1].essential());
  CHECK(zero[1].death == kInfinity);
  CHECK(pd.pairs.size() == 2);
}

TEST_CASE("tetrahedron boundary filled by its interior") {
  auto s = fixtures::closure({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}, 0.0);
  s.push_back(Simplex::make(std::vector<Id>{1, 2, 3}, 0.5));
  s.push_back(Simplex::make(std::vector<Id>{0, 1, 2, 3}, 0.8));
  const auto f = Filtration::from_simplices(s);
  const auto two = compute_persistence(f).of_dim(2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].birth == 0.5);
  CHECK(two[0].death == 0.8);
  CHECK(f[two[0].neg_simplex].dim == 3);
}

TEST_CASE("five-vertex example pairs [ABC] with [BCDE]") {
  const auto f = fixtures::five_vertex_example();
  const auto two = compute_persistence(f).of_dim(2);
  REQUIRE(two.size() == 2);
  const auto it = std::find_if(two.begin(), two.end(), [](const PersistencePair& p) { return p.birth == 1.0; });
  REQUIRE(it != two.end());
  CHECK(it->death == 4.0);
  CHECK(it->pos_simplex == fixtures::lookup(f, "ABC"));
  CHECK(it->neg_simplex == fixtures::lookup(f, "BCDE"));
  const auto other = std::find_if(two.begin(), two.end(), [](const PersistencePair& p) { return p.birth == 2.0; });
  REQUIRE(other != two.end());
  CHECK(other->pos_simplex == fixtures::lookup(f, "BCD"));
  CHECK(other->neg_simplex == fixtures::lookup(f, "ABCD"));
}

TEST_CASE("betti numbers of small complexes") {
  SUBCASE("discrete points") {
    const auto f = alpha_filtration(synthetic::random_cube(9, 5));
    CHECK(betti_numbers(f, 0.0) == std::array<std::size_t, 3>{9, 0, 0});
  }
  SUBCASE("octahedron surface") {
    // Vertices 0/1 on x, 2/3 on y, 4/5 on z; one triangle per octant.
    std::vector<std::vector<Id>> faces;
    for (Id x : {0, 1})
      for (Id y : {2, 3})
        for (Id z : {4, 5}) faces.push_back({x, y, z});
    const auto f = Filtration::from_simplices(fixtures::closure(faces, 0.0));
    const auto b = betti_numbers(f, 0.0);
    CHECK(b == std::array<std::size_t, 3>{1, 0, 1});
    CHECK(b == oracle::betti(fixtures::prefix_complex(f, 0.0)));
  }
  SUBCASE("full Delaunay complex is contractible") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto f = alpha_filtration(synthetic::random_cube(12, seed));
      CHECK(betti_numbers(f, kInfinity) == std::array<std::size_t, 3>{1, 0, 0});
      CHECK(oracle::betti(fixtures::prefix_complex(f, kInfinity)) == std::array<std::size_t, 3>{1, 0, 0});
    }
  }
}

TEST_CASE("pairs agree with the rank oracle on random clouds") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto cloud = synthetic::random_cube(6 + trial % 7, 1000 + trial);
    const auto f = alpha_filtration(cloud);
    const auto pd = compute_persistence(f);
    std::set<double> values;
    for (const auto& s : f.simplices()) values.insert(s.value);
    for (double r : values) {
      CHECK(betti_numbers(pd, r) == oracle::betti(fixtures::prefix_complex(f, r)));
    }
  }
}

TEST_CASE("pairing structure") {
  const auto f = alpha_filtration(synthetic::sample_sphere(400, 1.0, Vec3::Zero(), 0.02, 9));
  const auto pd = compute_persistence(f);
  std::set<Id> seen;
  std::size_t essential0 = 0;
  for (const auto& p : pd.pairs) {
    CHECK(p.birth <= p.death);
    CHECK(f[p.pos_simplex].dim == p.dim);
    CHECK(seen.insert(p.pos_simplex).second);
    if (p.essential()) {
      CHECK(p.dim == 0);
      ++essential0;
    } else {
      CHECK(f[p.neg_simplex].dim == p.dim + 1);
      CHECK(seen.insert(p.neg_simplex).second);
    }
  }
  CHECK(essential0 == 1);
  // Every simplex is accounted for exactly once.
  CHECK(seen.size() == f.size());
  CHECK(std::is_sorted(pd.pairs.begin(), pd.pairs.end(), [](const auto& a, const auto& b) {
    return a.dim < b.dim || (a.dim == b.dim && a.birth < b.birth);
  }));
}
