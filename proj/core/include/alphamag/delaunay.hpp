#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "alphamag/metric.hpp"

namespace alphamag {

using VertexId = std::uint32_t;

/// Delaunay triangulation of a planar cloud, without filtration values.
///
/// Triangles are counter-clockwise and listed in lexicographic order of their
/// sorted vertex ids; edges are sorted (lo, hi) pairs. Cocircular ties are
/// resolved symbolically by point index, so the result depends only on the
/// input order, never on floating-point noise or insertion order.
struct Triangulation {
  PointCloud cloud;
  std::vector<std::array<VertexId, 3>> triangles;
  std::vector<std::array<VertexId, 2>> edges;
  /// True when every point lies on one line; `edges` is then the path of
  /// consecutive points along that line and `triangles` is empty.
  bool collinear = false;
};

/// Incremental (Bowyer-Watson) construction with exact predicates. Points are
/// inserted along a Hilbert curve and located by a visibility walk.
/// Throws DimensionMismatch unless the cloud is planar.
Triangulation delaunay_2d(const PointCloud& cloud);

}  // namespace alphamag
