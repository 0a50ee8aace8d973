#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "phrecon/delaunay.hpp"
#include "phrecon/errors.hpp"
#include "phrecon/filtration.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace phrecon;

namespace {

double tet_volume(const std::vector<Vec3>& p, const Tetrahedron& t) {
  return std::abs((p[t[1]] - p[t[0]]).cross(p[t[2]] - p[t[0]]).dot(p[t[3]] - p[t[0]])) / 6.0;
}

// Checks that `tets` tiles a region without gaps inside and that every
// circumsphere is empty: faces are shared by at most two tetrahedra lying on
// opposite sides, and unshared faces have every point weakly on one side.
void check_delaunay(const std::vector<Vec3>& p, const std::vector<Tetrahedron>& tets, double tol) {
  std::map<std::array<Id, 3>, std::vector<Id>> face_owner;
  for (std::size_t i = 0; i < tets.size(); ++i) {
    const auto& t = tets[i];
    REQUIRE(std::is_sorted(t.begin(), t.end()));
    REQUIRE(oracle::orient(p[t[0]], p[t[1]], p[t[2]], p[t[3]]) != 0);
    for (std::size_t q = 0; q < p.size(); ++q) {
      const auto in = oracle::inside_sphere(p[t[0]], p[t[1]], p[t[2]], p[t[3]], p[q]);
      REQUIRE(in <= tol);
    }
    for (int drop = 0; drop < 4; ++drop) {
      std::array<Id, 3> f{};
      for (int k = 0, m = 0; k < 4; ++k)
        if (k != drop) f[m++] = t[k];
      face_owner[f].push_back(t[drop]);
    }
  }
  for (const auto& [f, opp] : face_owner) {
    REQUIRE(opp.size() <= 2);
    const auto side0 = oracle::orient(p[f[0]], p[f[1]], p[f[2]], p[opp[0]]);
    if (opp.size() == 2) {
      CHECK(side0 * oracle::orient(p[f[0]], p[f[1]], p[f[2]], p[opp[1]]) < 0);
    } else {
      for (const Vec3& q : p) CHECK(side0 * oracle::orient(p[f[0]], p[f[1]], p[f[2]], q) >= -tol);
    }
  }
}

std::set<Tetrahedron> brute_force_delaunay(const std::vector<Vec3>& p) {
  std::set<Tetrahedron> out;
  const Id n = static_cast<Id>(p.size());
  for (Id a = 0; a < n; ++a)
    for (Id b = a + 1; b < n; ++b)
      for (Id c = b + 1; c < n; ++c)
        for (Id d = c + 1; d < n; ++d) {
          if (oracle::orient(p[a], p[b], p[c], p[d]) == 0) continue;
          bool empty = true;
          for (Id q = 0; q < n && empty; ++q)
            if (q != a && q != b && q != c && q != d && oracle::inside_sphere(p[a], p[b], p[c], p[d], p[q]) > 0)
              empty = false;
          if (empty) out.insert({a, b, c, d});
        }
  return out;
}

std::vector<Vec3> regular_tet() {
  return {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, std::sqrt(3.0) / 2, 0),
          Vec3(0.5, std::sqrt(3.0) / 6, std::sqrt(2.0 / 3.0))};
}

}  // namespace

TEST_CASE("regular tetrahedron is a single cell") {
  const auto sk = delaunay3(PointCloud(regular_tet()));
  CHECK(sk.tetrahedra.size() == 1);
  CHECK(sk.triangles.size() == 4);
  CHECK(sk.edges.size() == 6);
  CHECK(sk.cloud.size() == 4);
}

TEST_CASE("cube corners match the empty-sphere oracle") {
  auto cloud = synthetic::grid(2, 2, 2, 1.0);
  const auto tets = delaunay_tetrahedra(cloud.points);
  CHECK((tets.size() == 5 || tets.size() == 6));
  double volume = 0;
  for (const auto& t : tets) volume += tet_volume(cloud.points, t);
  CHECK(volume == doctest::Approx(1.0).epsilon(1e-12));
  check_delaunay(cloud.points, tets, 1e-9);
}

TEST_CASE("dimension-deficient inputs are rejected") {
  CHECK_THROWS_AS(delaunay3(PointCloud({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)})), DegenerateInput);
  CHECK_THROWS_AS(delaunay3(PointCloud({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0), Vec3(3, 0, 0)})),
                  DegenerateInput);
  CHECK_THROWS_AS(delaunay3(synthetic::grid(3, 3, 1, 1.0)), DegenerateInput);
  // Duplicates do not count towards the four points.
  CHECK_THROWS_AS(delaunay3(PointCloud({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 1, 0)})),
                  DegenerateInput);
}

TEST_CASE("random clouds equal the brute-force Delaunay tetrahedralization") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cloud = synthetic::random_cube(18 + seed, 100 + seed);
    const auto tets = delaunay_tetrahedra(cloud.points, seed);
    const std::set<Tetrahedron> got(tets.begin(), tets.end());
    CHECK(got == brute_force_delaunay(cloud.points));
  }
}

TEST_CASE("grids tile the box and are independent of insertion order") {
  const auto cloud = synthetic::grid(4, 4, 4, 1.0);
  const auto ref = delaunay_tetrahedra(cloud.points, 0);
  double volume = 0;
  for (const auto& t : ref) volume += tet_volume(cloud.points, t);
  CHECK(volume == doctest::Approx(27.0).epsilon(1e-12));
  check_delaunay(cloud.points, ref, 1e-9);
  for (std::uint64_t seed = 1; seed < 6; ++seed) CHECK(delaunay_tetrahedra(cloud.points, seed) == ref);

  const auto sk = delaunay3(cloud);
  const long euler = static_cast<long>(sk.cloud.size()) - static_cast<long>(sk.edges.size()) +
                     static_cast<long>(sk.triangles.size()) - static_cast<long>(sk.tetrahedra.size());
  CHECK(euler == 1);
}

TEST_CASE("cospherical points are handled deterministically") {
  // All integer points on the sphere of radius 5: exactly cospherical.
  std::vector<Vec3> p;
  for (int x = -5; x <= 5; ++x)
    for (int y = -5; y <= 5; ++y)
      for (int z = -5; z <= 5; ++z)
        if (x * x + y * y + z * z == 25) p.emplace_back(x, y, z);
  REQUIRE(p.size() == 30);
  const auto ref = delaunay_tetrahedra(p, 0);
  check_delaunay(p, ref, 1e-9);
  for (std::uint64_t seed = 1; seed < 8; ++seed) CHECK(delaunay_tetrahedra(p, seed) == ref);
}

TEST_CASE("larger random clouds are seed independent") {
  const auto cloud = synthetic::sample_sphere(2000, 1.0, Vec3::Zero(), 0.01, 7);
  const auto a = delaunay_tetrahedra(cloud.points, 1);
  const auto b = delaunay_tetrahedra(cloud.points, 99);
  CHECK(a == b);
  double volume = 0;
  for (const auto& t : a) volume += tet_volume(cloud.points, t);
  CHECK(volume > 3.5);
  CHECK(volume < 4.4);
}

TEST_CASE("duplicates are merged and mapped") {
  PointCloud cloud(regular_tet());
  cloud.push_back(cloud.points[2], 4);
  cloud.push_back(cloud.points[0], 5);
  const auto sk = delaunay3(cloud);
  CHECK(sk.cloud.size() == 4);
  CHECK(sk.source_to_unique == std::vector<Id>{0, 1, 2, 3, 2, 0});
  CHECK(sk.tetrahedra.size() == 1);
}

TEST_CASE("alpha values of isolated edges and the regular tetrahedron") {
  SUBCASE("edge between distant neighbours") {
    PointCloud cloud({Vec3(0, 0, 0), Vec3(1.5, 0, 0), Vec3(0.7, 6, 0), Vec3(0.7, 2, 6)});
    const auto f = alpha_filtration(cloud);
    const std::array<Id, 2> e{0, 1};
    CHECK(f[f.find(e)].value == doctest::Approx(0.75).epsilon(1e-15));
    for (Id v = 0; v < 4; ++v) CHECK(f[f.find(std::array<Id, 1>{v})].value == 0.0);
  }
  SUBCASE("regular tetrahedron") {
    const auto f = alpha_filtration(PointCloud(regular_tet()));
    REQUIRE(f.count(3) == 1);
    CHECK(f[f.of_dim(3)[0]].value == doctest::Approx(std::sqrt(6.0) / 4).epsilon(1e-12));
    for (Id t : f.of_dim(2)) CHECK(f[t].value == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
    for (Id e : f.of_dim(1)) CHECK(f[e].value == doctest::Approx(0.5).epsilon(1e-12));
  }
}

namespace {

// Smallest distance from the vertices of σ to a point that is equidistant from
// them and no closer to any other point: the radius at which the restricted
// balls of σ's vertices first meet. Sampled on a grid over the bisector set.
double sampled_alpha(const std::vector<Vec3>& p, const std::vector<Id>& s, int res, double extent) {
  const Vec3 a = p[s[0]];
  auto valid = [&](const Vec3& y, double r2) {
    for (std::size_t q = 0; q < p.size(); ++q)
      if (std::find(s.begin(), s.end(), Id(q)) == s.end() && (p[q] - y).squaredNorm() < r2 * (1 - 1e-12)) return false;
    return true;
  };
  double best = std::numeric_limits<double>::infinity();
  if (s.size() == 3) {
    const Vec3 u = p[s[1]] - a, v = p[s[2]] - a, n = u.cross(v);
    const Vec3 c = a + (v.squaredNorm() * n.cross(u) + u.squaredNorm() * v.cross(n)) / (2 * n.squaredNorm());
    const Vec3 dir = n.normalized();
    for (int i = -res; i <= res; ++i) {
      const Vec3 y = c + dir * (extent * i / res);
      const double r2 = (y - a).squaredNorm();
      if (valid(y, r2)) best = std::min(best, std::sqrt(r2));
    }
  } else {
    // Coarse grid, then repeated finer grids around the best sample found.
    const Vec3 dir = (p[s[1]] - a).normalized();
    const Vec3 e1 = dir.unitOrthogonal(), e2 = dir.cross(e1);
    Vec3 center = 0.5 * (a + p[s[1]]);
    double span = extent;
    for (int round = 0; round < 16; ++round) {
      Vec3 best_y = center;
      for (int i = -res; i <= res; ++i)
        for (int j = -res; j <= res; ++j) {
          const Vec3 y = center + e1 * (span * i / res) + e2 * (span * j / res);
          const double r2 = (y - a).squaredNorm();
          if (valid(y, r2) && std::sqrt(r2) < best) {
            best = std::sqrt(r2);
            best_y = y;
          }
        }
      if (!std::isfinite(best)) break;
      center = best_y;
      span *= 0.5;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("regular tetrahedron faces match the sampled oracle") {
  const auto f = alpha_filtration(PointCloud(regular_tet()));
  const auto& p = f.cloud().points;
  for (int dim : {1, 2})
    for (Id id : f.of_dim(dim)) {
      const auto v = f[id].verts();
      const double sampled = sampled_alpha(p, {v.begin(), v.end()}, dim == 2 ? 20000 : 400, 2.0);
      CHECK(f[id].value <= sampled + 1e-12);
      CHECK(sampled - f[id].value <= 1e-3);
    }
}

TEST_CASE("alpha values agree with sampled restricted-ball intersections") {
  int compared = 0, missed = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto cloud = synthetic::random_cube(8, 40 + seed);
    const auto f = alpha_filtration(cloud);
    const auto& p = f.cloud().points;
    for (int dim : {1, 2}) {
      for (Id id : f.of_dim(dim)) {
        const auto v = f[id].verts();
        const std::vector<Id> s(v.begin(), v.end());
        const int res = dim == 2 ? 200000 : 150;
        const double extent = dim == 2 ? 20.0 : 4.0;
        const double sampled = sampled_alpha(p, s, res, extent);
        // Thin Voronoi faces can slip between samples; those stay infinite.
        if (!std::isfinite(sampled)) {
          ++missed;
          continue;
        }
        ++compared;
        // Grid spacing bounds the sampling error from above.
        CHECK(f[id].value <= sampled + 1e-12);
        CHECK(sampled - f[id].value <= (dim == 2 ? 2e-4 : 1e-4));
      }
    }
  }
  CHECK(compared > 4 * missed);
}

TEST_CASE("alpha filtration is monotone, closed under faces, and deterministic") {
  const auto cloud = synthetic::sample_sphere(500, 1.0, Vec3::Zero(), 0.02, 3);
  const auto f = alpha_filtration(cloud, 1);
  for (Id i = 0; i < static_cast<Id>(f.size()); ++i) {
    if (i > 0) CHECK(f[i - 1].value <= f[i].value);
    for (Id face : f.faces(i)) {
      CHECK(face < i);
      CHECK(f[face].value <= f[i].value);
    }
  }
  const auto g = alpha_filtration(cloud, 2);
  REQUIRE(f.size() == g.size());
  bool same = true;
  for (Id i = 0; i < static_cast<Id>(f.size()); ++i)
    same = same && f[i].vertices == g[i].vertices && f[i].value == g[i].value;
  CHECK(same);
  for (double r : {0.0, 0.01, 0.05, 0.1, 1.0}) {
    const std::size_t n = f.prefix_length(r);
    for (Id i = 0; i < static_cast<Id>(n); ++i)
      for (Id face : f.faces(i)) CHECK(static_cast<std::size_t>(face) < n);
  }
}
