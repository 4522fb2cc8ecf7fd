#include "alphamag/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>

#include "alphamag/error.hpp"
#include "format.hpp"

namespace alphamag {

int FilteredComplex::max_dimension() const noexcept {
  int best = -1;
  for (std::size_t i = 0; i < size(); ++i) best = std::max(best, dimension(i));
  return best;
}

void FilteredComplex::add(std::span<const VertexId> vertices, double value) {
  vertices_.insert(vertices_.end(), vertices.begin(), vertices.end());
  offsets_.push_back(vertices_.size());
  values_.push_back(value);
}

void FilteredComplex::reserve(std::size_t simplices, std::size_t vertex_slots) {
  values_.reserve(simplices);
  offsets_.reserve(simplices + 1);
  vertices_.reserve(vertex_slots);
}

std::vector<std::size_t> FilteredComplex::counts_by_dimension() const {
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto d = static_cast<std::size_t>(dimension(i));
    if (counts.size() <= d) counts.resize(d + 1, 0);
    ++counts[d];
  }
  return counts;
}

namespace {

std::string simplex_key(std::span<const VertexId> vertices) {
  return std::string(reinterpret_cast<const char*>(vertices.data()), vertices.size_bytes());
}

}  // namespace

ComplexDiagnostics check_complex(const FilteredComplex& complex) {
  ComplexDiagnostics diag;
  std::unordered_map<std::string, double> value_of;
  value_of.reserve(complex.size());
  for (std::size_t i = 0; i < complex.size(); ++i) value_of.emplace(simplex_key(complex.simplex(i)), complex.value(i));

  std::vector<VertexId> facet;
  for (std::size_t i = 0; i < complex.size(); ++i) {
    const auto s = complex.simplex(i);
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      facet.clear();
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (k != drop) facet.push_back(s[k]);
      }
      const auto it = value_of.find(simplex_key(facet));
      if (it == value_of.end()) {
        if (diag.closed && diag.monotone) diag.first_violation = i;
        diag.closed = false;
      } else if (it->second > complex.value(i)) {
        if (diag.closed && diag.monotone) diag.first_violation = i;
        diag.monotone = false;
      }
    }
  }
  return diag;
}

namespace geometry {

namespace {

double half_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() == 1) return 0.5 * std::abs(b[0] - a[0]);
  return 0.5 * std::hypot(b[0] - a[0], b[1] - a[1]);
}

struct Disk {
  double cx;
  double cy;
  double r;
};

bool circumcenter(std::span<const double> a, std::span<const double> b, std::span<const double> c, Disk& out) {
  const double bx = b[0] - a[0];
  const double by = b[1] - a[1];
  const double cx = c[0] - a[0];
  const double cy = c[1] - a[1];
  const double d = 2.0 * (bx * cy - by * cx);
  if (d == 0.0) return false;
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  out = {a[0] + ux, a[1] + uy, std::hypot(ux, uy)};
  return true;
}

}  // namespace

double circumradius(std::span<const double> a, std::span<const double> b, std::span<const double> c, VertexId ia,
                    VertexId ib, VertexId ic) {
  std::array<std::pair<VertexId, std::span<const double>>, 3> p = {{{ia, a}, {ib, b}, {ic, c}}};
  std::sort(p.begin(), p.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  const auto& o = p[0].second;
  const double ux = p[1].second[0] - o[0];
  const double uy = p[1].second[1] - o[1];
  const double vx = p[2].second[0] - o[0];
  const double vy = p[2].second[1] - o[1];
  const double cross = std::abs(ux * vy - uy * vx);
  if (cross == 0.0) return std::numeric_limits<double>::infinity();
  const double lu = std::hypot(ux, uy);
  const double lv = std::hypot(vx, vy);
  const double lw = std::hypot(vx - ux, vy - uy);
  return lu * lv * lw / (2.0 * cross);
}

double min_enclosing_radius(const PointCloud& cloud, std::span<const VertexId> vertices) {
  if (vertices.size() <= 1) return 0.0;
  if (cloud.ambient_dim() == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    VertexId ilo = 0, ihi = 0;
    for (VertexId v : vertices) {
      if (cloud.coord(v, 0) < lo) lo = cloud.coord(v, 0), ilo = v;
      if (cloud.coord(v, 0) > hi) hi = cloud.coord(v, 0), ihi = v;
    }
    return half_length(cloud.point(std::min(ilo, ihi)), cloud.point(std::max(ilo, ihi)));
  }

  // Exhaustive over supports of size two and three; the smallest candidate
  // disk containing every vertex is the minimal enclosing disk.
  const auto encloses = [&](const Disk& disk) {
    const double slack = disk.r * 1e-12 + 1e-300;
    for (VertexId v : vertices) {
      if (std::hypot(cloud.coord(v, 0) - disk.cx, cloud.coord(v, 1) - disk.cy) > disk.r + slack) return false;
    }
    return true;
  };
  double best = std::numeric_limits<double>::infinity();
  const std::size_t k = vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto a = cloud.point(vertices[i]);
      const auto b = cloud.point(vertices[j]);
      const Disk disk{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), half_length(a, b)};
      if (disk.r < best && encloses(disk)) best = disk.r;
      for (std::size_t l = j + 1; l < k; ++l) {
        const auto c = cloud.point(vertices[l]);
        Disk circle{};
        if (!circumcenter(a, b, c, circle)) continue;
        const double r = circumradius(a, b, c, vertices[i], vertices[j], vertices[l]);
        if (r < best && encloses({circle.cx, circle.cy, std::max(r, circle.r)})) best = r;
      }
    }
  }
  return best;
}

}  // namespace geometry

FilteredComplex build_alpha_1d(const PointCloud& cloud) {
  if (cloud.ambient_dim() != 1) throw Error(Errc::dimension_mismatch, "build_alpha_1d needs points on a line");
  const std::size_t n = cloud.size();
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return cloud.coord(a, 0) < cloud.coord(b, 0); });

  FilteredComplex complex(ComplexKind::alpha, 1);
  complex.reserve(2 * n, 3 * n);
  for (VertexId v = 0; v < n; ++v) complex.add(std::span<const VertexId>(&v, 1), 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const VertexId a = order[i - 1];
    const VertexId b = order[i];
    const std::array<VertexId, 2> edge = {std::min(a, b), std::max(a, b)};
    complex.add(edge, 0.5 * (cloud.coord(b, 0) - cloud.coord(a, 0)));
  }
  return complex;
}

FilteredComplex alpha_filtration_2d(const Triangulation& triangulation) {
  const PointCloud& cloud = triangulation.cloud;
  const std::size_t n = cloud.size();
  FilteredComplex complex(ComplexKind::alpha, 2);
  complex.reserve(n + triangulation.edges.size() + triangulation.triangles.size(),
                  n + 2 * triangulation.edges.size() + 3 * triangulation.triangles.size());
  for (VertexId v = 0; v < n; ++v) complex.add(std::span<const VertexId>(&v, 1), 0.0);

  const auto& tris = triangulation.triangles;
  std::vector<double> tri_value(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& v = tris[t];
    tri_value[t] = geometry::circumradius(cloud.point(v[0]), cloud.point(v[1]), cloud.point(v[2]), v[0], v[1], v[2]);
  }

  // Incidence records (edge, opposite vertex, triangle), grouped by edge.
  struct Incidence {
    std::array<VertexId, 2> edge;
    VertexId opposite;
    std::uint32_t triangle;
  };
  std::vector<Incidence> inc;
  inc.reserve(3 * tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const VertexId u = tris[t][(i + 1) % 3];
      const VertexId w = tris[t][(i + 2) % 3];
      inc.push_back({{std::min(u, w), std::max(u, w)}, tris[t][i], static_cast<std::uint32_t>(t)});
    }
  }
  std::sort(inc.begin(), inc.end(), [](const Incidence& l, const Incidence& r) { return l.edge < r.edge; });

  const auto& edges = triangulation.edges;
  std::vector<double> edge_value(edges.size());
  std::vector<char> attached(edges.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> edge_inc(edges.size(), {0, 0});
  std::size_t cursor = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto a = cloud.point(edges[e][0]);
    const auto b = cloud.point(edges[e][1]);
    const std::size_t begin = cursor;
    while (cursor < inc.size() && inc[cursor].edge == edges[e]) {
      const auto c = cloud.point(inc[cursor].opposite);
      const double dot = (c[0] - a[0]) * (c[0] - b[0]) + (c[1] - a[1]) * (c[1] - b[1]);
      if (dot < 0.0) attached[e] = 1;
      ++cursor;
    }
    edge_inc[e] = {begin, cursor};
    edge_value[e] = geometry::half_length(a, b);
  }

  // A triangle never enters before its Gabriel edges (guards the last ulp).
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (attached[e]) continue;
    for (std::size_t k = edge_inc[e].first; k < edge_inc[e].second; ++k) {
      tri_value[inc[k].triangle] = std::max(tri_value[inc[k].triangle], edge_value[e]);
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!attached[e]) continue;
    double v = std::numeric_limits<double>::infinity();
    for (std::size_t k = edge_inc[e].first; k < edge_inc[e].second; ++k) v = std::min(v, tri_value[inc[k].triangle]);
    edge_value[e] = v;
  }

  for (std::size_t e = 0; e < edges.size(); ++e) complex.add(edges[e], edge_value[e]);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    auto sorted = tris[t];
    std::sort(sorted.begin(), sorted.end());
    complex.add(sorted, tri_value[t]);
  }
  return complex;
}

FilteredComplex build_alpha(const PointCloud& cloud) {
  if (cloud.ambient_dim() == 1) return build_alpha_1d(cloud);
  return alpha_filtration_2d(delaunay_2d(cloud));
}

namespace {

// Calls fn(subset) for every subset of {0..n-1} with 1..max_size elements,
// by increasing size then lexicographically.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t max_size, Fn&& fn) {
  std::vector<VertexId> combo;
  for (std::size_t k = 1; k <= std::min(max_size, n); ++k) {
    combo.resize(k);
    std::iota(combo.begin(), combo.end(), VertexId{0});
    for (;;) {
      fn(std::span<const VertexId>(combo));
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
}

double binomial_sum(std::size_t n, std::size_t max_size) {
  double total = 0.0;
  double c = 1.0;
  for (std::size_t k = 1; k <= std::min(n, max_size); ++k) {
    c = c * static_cast<double>(n - k + 1) / static_cast<double>(k);
    total += c;
  }
  return total;
}

}  // namespace

FilteredComplex build_cech(const PointCloud& cloud, int max_dim) {
  if (cloud.size() > kCechMaxPoints) {
    throw Error(Errc::too_large, "brute-force Cech complex is limited to " + std::to_string(kCechMaxPoints) + " points");
  }
  if (max_dim < 0) throw Error(Errc::bad_config, "max_dim must be non-negative");
  FilteredComplex complex(ComplexKind::cech, cloud.ambient_dim());
  for_each_subset(cloud.size(), static_cast<std::size_t>(max_dim) + 1, [&](std::span<const VertexId> s) {
    complex.add(s, geometry::min_enclosing_radius(cloud, s));
  });
  return complex;
}

FilteredComplex build_rips(const DistanceMatrix& d, int max_dim) {
  if (max_dim < 0) throw Error(Errc::bad_config, "max_dim must be non-negative");
  const std::size_t n = d.size();
  const auto max_size = static_cast<std::size_t>(max_dim) + 1;
  if (max_size >= n && n > kRipsFullMaxPoints) {
    throw Error(Errc::too_large, "full Vietoris-Rips complex is limited to " + std::to_string(kRipsFullMaxPoints) +
                                     " points");
  }
  if (binomial_sum(n, max_size) > static_cast<double>(kRipsMaxSimplices)) {
    throw Error(Errc::too_large, "Vietoris-Rips complex would exceed " + std::to_string(kRipsMaxSimplices) +
                                     " simplices");
  }
  FilteredComplex complex(ComplexKind::rips, 0);
  for_each_subset(n, max_size, [&](std::span<const VertexId> s) {
    double diameter = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) diameter = std::max(diameter, d(s[i], s[j]));
    }
    complex.add(s, diameter);
  });
  return complex;
}

void write_complex_csv(std::ostream& out, const FilteredComplex& complex) {
  out << "dim,v0,v1,v2,filtration\n";
  std::string row;
  for (std::size_t i = 0; i < complex.size(); ++i) {
    const auto s = complex.simplex(i);
    row = std::to_string(complex.dimension(i));
    for (std::size_t k = 0; k < std::max<std::size_t>(3, s.size()); ++k) {
      row.push_back(',');
      if (k < s.size()) row += std::to_string(s[k]);
    }
    row.push_back(',');
    detail::append_real(row, complex.value(i));
    row.push_back('\n');
    out << row;
  }
}

}  // namespace alphamag
