#pragma once

#include <cstdint>

namespace alphamag::geometry {

struct Vec2 {
  double x;
  double y;
};

/// Sign of the orientation determinant: +1 when a, b, c turn counter-clockwise,
/// -1 clockwise, 0 collinear. Exact for all finite inputs.
int orient2d(Vec2 a, Vec2 b, Vec2 c);

/// Sign of the in-circle determinant for counter-clockwise a, b, c:
/// +1 when d lies strictly inside their circumcircle, 0 on it. Exact.
int incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// In-circle test that never returns 0. Exact ties are resolved by lifting
/// each point by an infinitesimal amount that grows with its index, so the
/// resulting triangulation is unique for a given point order.
int incircle_perturbed(Vec2 a, Vec2 b, Vec2 c, Vec2 d, std::uint32_t ia, std::uint32_t ib, std::uint32_t ic,
                       std::uint32_t id);

/// Counts of predicate calls that fell through the floating-point filter.
struct PredicateStats {
  std::uint64_t orient_exact = 0;
  std::uint64_t incircle_exact = 0;
  std::uint64_t symbolic = 0;
};
PredicateStats& predicate_stats();

}  // namespace alphamag::geometry
