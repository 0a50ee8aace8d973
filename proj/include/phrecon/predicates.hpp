#pragma once

#include "phrecon/point_cloud.hpp"

// Exact geometric predicates. Each is evaluated in double precision first and
// falls back to exact rational arithmetic when the result is within the
// rounding error bound, so the returned sign is always the sign of the exact
// determinant of the (exactly representable) inputs.
namespace phrecon::predicates {

/// Sign of ((b - a) x (c - a)) . (d - a): +1 when d lies on the side the
/// right-handed normal of (a, b, c) points to.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// For a tetrahedron with orient3d(a, b, c, d) > 0: +1 if e is strictly inside
/// its circumsphere, -1 if strictly outside, 0 if cospherical.
int insphere(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e);

/// For p coplanar with the non-collinear triangle (a, b, c): +1 if p is strictly
/// inside its circumcircle, -1 outside, 0 on it.
int coplanar_incircle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p);

/// Relative orientation of two non-degenerate coplanar triangles: sign of the
/// dot product of their normals (0 if the first is degenerate).
int coplanar_orientation_agreement(const Vec3& a0, const Vec3& b0, const Vec3& c0,
                                   const Vec3& a1, const Vec3& b1, const Vec3& c1);

/// Counters for the slow path, exposed for tests and benchmarks.
struct Stats {
  std::size_t orient_exact = 0;
  std::size_t insphere_exact = 0;
};
Stats& stats();

}  // namespace phrecon::predicates
