#include "phrecon/predicates.hpp"

#include <cmath>
#include <limits>

#include <gmpxx.h>

namespace phrecon::predicates {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;
// Generous multiples of Shewchuk's first-stage bounds; a loose bound only
// costs extra exact evaluations.
constexpr double kOrientBound = 32.0 * kEps;
constexpr double kInsphereBound = 128.0 * kEps;

thread_local Stats g_stats;

template <typename T>
struct V3 {
  T x, y, z;
};

template <typename T>
V3<T> sub(const Vec3& p, const Vec3& q) {
  return {T(p.x()) - T(q.x()), T(p.y()) - T(q.y()), T(p.z()) - T(q.z())};
}

template <typename T>
T det3(const V3<T>& u, const V3<T>& v, const V3<T>& w) {
  return u.x * (v.y * w.z - v.z * w.y) + u.y * (v.z * w.x - v.x * w.z) +
         u.z * (v.x * w.y - v.y * w.x);
}

double perm3(const V3<double>& u, const V3<double>& v, const V3<double>& w) {
  using std::abs;
  return abs(u.x) * (abs(v.y * w.z) + abs(v.z * w.y)) + abs(u.y) * (abs(v.z * w.x) + abs(v.x * w.z)) +
         abs(u.z) * (abs(v.x * w.y) + abs(v.y * w.x));
}

template <typename T>
T lift(const V3<T>& u) {
  return u.x * u.x + u.y * u.y + u.z * u.z;
}

// det of the 4x4 matrix with rows (u, |u|^2) for the four relative vectors,
// expanded along the lifted column.
template <typename T>
T det4_lifted(const V3<T>& p1, const V3<T>& p2, const V3<T>& p3, const V3<T>& p4) {
  return -lift(p1) * det3(p2, p3, p4) + lift(p2) * det3(p1, p3, p4) - lift(p3) * det3(p1, p2, p4) +
         lift(p4) * det3(p1, p2, p3);
}

template <typename T>
int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int sign_of(const mpq_class& v) { return sgn(v); }

int orient_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  ++g_stats.orient_exact;
  return sign_of(det3(sub<mpq_class>(b, a), sub<mpq_class>(c, a), sub<mpq_class>(d, a)));
}

int insphere_exact(const V3<mpq_class>& p1, const V3<mpq_class>& p2, const V3<mpq_class>& p3,
                   const V3<mpq_class>& p4) {
  ++g_stats.insphere_exact;
  return -sign_of(det4_lifted(p1, p2, p3, p4));
}

V3<mpq_class> cross(const V3<mpq_class>& u, const V3<mpq_class>& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

}  // namespace

Stats& stats() { return g_stats; }

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const auto u = sub<double>(b, a);
  const auto v = sub<double>(c, a);
  const auto w = sub<double>(d, a);
  const double det = det3(u, v, w);
  const double bound = kOrientBound * perm3(u, v, w);
  if (det > bound) return 1;
  if (det < -bound) return -1;
  return orient_exact(a, b, c, d);
}

int insphere(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e) {
  const auto p1 = sub<double>(b, a);
  const auto p2 = sub<double>(c, a);
  const auto p3 = sub<double>(d, a);
  const auto p4 = sub<double>(e, a);
  const double det = det4_lifted(p1, p2, p3, p4);
  const double perm = lift(p1) * perm3(p2, p3, p4) + lift(p2) * perm3(p1, p3, p4) +
                      lift(p3) * perm3(p1, p2, p4) + lift(p4) * perm3(p1, p2, p3);
  const double bound = kInsphereBound * perm;
  if (det > bound) return -1;
  if (det < -bound) return 1;
  return insphere_exact(sub<mpq_class>(b, a), sub<mpq_class>(c, a), sub<mpq_class>(d, a),
                        sub<mpq_class>(e, a));
}

int coplanar_incircle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
  // The sphere through a, b, c and a + n (n the triangle normal) cuts the
  // plane in the circumcircle, so the in-sphere sign decides the in-circle one.
  const auto u = sub<mpq_class>(b, a);
  const auto v = sub<mpq_class>(c, a);
  const auto n = cross(u, v);
  return insphere_exact(u, v, n, sub<mpq_class>(p, a));
}

int coplanar_orientation_agreement(const Vec3& a0, const Vec3& b0, const Vec3& c0, const Vec3& a1,
                                   const Vec3& b1, const Vec3& c1) {
  const auto n0 = cross(sub<mpq_class>(b0, a0), sub<mpq_class>(c0, a0));
  const auto n1 = cross(sub<mpq_class>(b1, a1), sub<mpq_class>(c1, a1));
  return sgn(n0.x * n1.x + n0.y * n1.y + n0.z * n1.z);
}

}  // namespace phrecon::predicates
