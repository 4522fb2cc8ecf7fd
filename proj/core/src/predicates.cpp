#include "predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace alphamag::geometry {

namespace {

// Floating-point expansions: non-overlapping components in increasing
// magnitude order, zeros eliminated. An empty expansion is zero.
using Expansion = std::vector<double>;

constexpr double kEpsilon = 0x1p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kInCircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  y = b - (x - a);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

Expansion grow(const Expansion& e, double b) {
  Expansion h;
  h.reserve(e.size() + 1);
  double q = b;
  for (double component : e) {
    double sum = 0.0;
    double err = 0.0;
    two_sum(q, component, sum, err);
    if (err != 0.0) h.push_back(err);
    q = sum;
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

Expansion add(const Expansion& e, const Expansion& f) {
  Expansion h = e;
  for (double component : f) h = grow(h, component);
  return h;
}

Expansion negate(Expansion e) {
  for (double& c : e) c = -c;
  return e;
}

Expansion scale(const Expansion& e, double b) {
  Expansion h;
  if (e.empty() || b == 0.0) return h;
  h.reserve(2 * e.size());
  double q = 0.0;
  double err = 0.0;
  two_product(e[0], b, q, err);
  if (err != 0.0) h.push_back(err);
  for (std::size_t i = 1; i < e.size(); ++i) {
    double hi = 0.0;
    double lo = 0.0;
    two_product(e[i], b, hi, lo);
    double sum = 0.0;
    two_sum(q, lo, sum, err);
    if (err != 0.0) h.push_back(err);
    fast_two_sum(hi, sum, q, err);
    if (err != 0.0) h.push_back(err);
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

Expansion multiply(const Expansion& e, const Expansion& f) {
  const Expansion& longer = e.size() >= f.size() ? e : f;
  const Expansion& shorter = e.size() >= f.size() ? f : e;
  Expansion result;
  for (double component : shorter) result = add(result, scale(longer, component));
  return result;
}

Expansion difference(double a, double b) {
  double x = 0.0;
  double y = 0.0;
  two_sum(a, -b, x, y);
  Expansion e;
  if (y != 0.0) e.push_back(y);
  if (x != 0.0) e.push_back(x);
  return e;
}

int sign(const Expansion& e) {
  if (e.empty()) return 0;
  return e.back() > 0.0 ? 1 : -1;
}

int orient2d_exact(Vec2 a, Vec2 b, Vec2 c) {
  const Expansion acx = difference(a.x, c.x);
  const Expansion bcy = difference(b.y, c.y);
  const Expansion acy = difference(a.y, c.y);
  const Expansion bcx = difference(b.x, c.x);
  return sign(add(multiply(acx, bcy), negate(multiply(acy, bcx))));
}

int incircle_exact(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Expansion adx = difference(a.x, d.x);
  const Expansion ady = difference(a.y, d.y);
  const Expansion bdx = difference(b.x, d.x);
  const Expansion bdy = difference(b.y, d.y);
  const Expansion cdx = difference(c.x, d.x);
  const Expansion cdy = difference(c.y, d.y);

  const Expansion alift = add(multiply(adx, adx), multiply(ady, ady));
  const Expansion blift = add(multiply(bdx, bdx), multiply(bdy, bdy));
  const Expansion clift = add(multiply(cdx, cdx), multiply(cdy, cdy));

  const Expansion bc = add(multiply(bdx, cdy), negate(multiply(cdx, bdy)));
  const Expansion ca = add(multiply(cdx, ady), negate(multiply(adx, cdy)));
  const Expansion ab = add(multiply(adx, bdy), negate(multiply(bdx, ady)));

  return sign(add(add(multiply(alift, bc), multiply(blift, ca)), multiply(clift, ab)));
}

}  // namespace

PredicateStats& predicate_stats() {
  thread_local PredicateStats stats;
  return stats;
}

int orient2d(Vec2 a, Vec2 b, Vec2 c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  ++predicate_stats().orient_exact;
  return orient2d_exact(a, b, c);
}

int incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double adx = a.x - d.x;
  const double bdx = b.x - d.x;
  const double cdx = c.x - d.x;
  const double ady = a.y - d.y;
  const double bdy = b.y - d.y;
  const double cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy;
  const double cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady;
  const double adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy;
  const double bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kInCircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  ++predicate_stats().incircle_exact;
  return incircle_exact(a, b, c, d);
}

int incircle_perturbed(Vec2 a, Vec2 b, Vec2 c, Vec2 d, std::uint32_t ia, std::uint32_t ib, std::uint32_t ic,
                       std::uint32_t id) {
  const int exact = incircle(a, b, c, d);
  if (exact != 0) return exact;
  ++predicate_stats().symbolic;

  // Expanding the lifted 4x4 determinant along the lifting column, the
  // coefficient of the lift of each row is a signed orientation of the
  // other three rows. The point with the largest index carries the
  // dominant perturbation; the first non-vanishing coefficient decides.
  struct Row {
    std::uint32_t index;
    int coefficient_sign;
  };
  std::array<Row, 4> rows = {{
      {ia, orient2d(b, c, d)},
      {ib, -orient2d(a, c, d)},
      {ic, orient2d(a, b, d)},
      {id, -orient2d(a, b, c)},
  }};
  std::sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) { return l.index > r.index; });
  for (const Row& row : rows) {
    if (row.coefficient_sign != 0) return row.coefficient_sign;
  }
  return 0;  // unreachable for a non-degenerate triangle a, b, c
}

}  // namespace alphamag::geometry
