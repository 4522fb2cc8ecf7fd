#include "alphamag/delaunay.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "alphamag/error.hpp"
#include "predicates.hpp"

namespace alphamag {

namespace {

using geometry::Vec2;

constexpr VertexId kInfinite = std::numeric_limits<VertexId>::max();
constexpr std::uint32_t kNoTriangle = std::numeric_limits<std::uint32_t>::max();

// Hilbert index of (x, y) on a 2^16 x 2^16 grid.
std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y) {
  constexpr std::uint32_t side = 1u << 16;
  std::uint64_t d = 0;
  for (std::uint32_t s = side / 2; s > 0; s /= 2) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = side - 1 - x;
        y = side - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

std::vector<VertexId> hilbert_order(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  double lo_x = cloud.coord(0, 0), hi_x = lo_x, lo_y = cloud.coord(0, 1), hi_y = lo_y;
  for (std::size_t i = 1; i < n; ++i) {
    lo_x = std::min(lo_x, cloud.coord(i, 0));
    hi_x = std::max(hi_x, cloud.coord(i, 0));
    lo_y = std::min(lo_y, cloud.coord(i, 1));
    hi_y = std::max(hi_y, cloud.coord(i, 1));
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double cells = span > 0 ? 65535.0 / span : 0.0;
  std::vector<std::pair<std::uint64_t, VertexId>> keyed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto qx = static_cast<std::uint32_t>((cloud.coord(i, 0) - lo_x) * cells);
    const auto qy = static_cast<std::uint32_t>((cloud.coord(i, 1) - lo_y) * cells);
    keyed[i] = {hilbert_index(std::min(qx, 65535u), std::min(qy, 65535u)), static_cast<VertexId>(i)};
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<VertexId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = keyed[i].second;
  return order;
}

class Builder {
 public:
  explicit Builder(const PointCloud& cloud) : cloud_(cloud) {
    visit_.reserve(2 * cloud.size() + 8);
    start_of_.assign(cloud.size() + 1, kNoTriangle);
  }

  // Returns false when all points are collinear.
  bool run() {
    const std::vector<VertexId> order = hilbert_order(cloud_);
    if (order.size() < 3) return false;
    const VertexId a = order[0];
    const VertexId b = order[1];
    std::size_t third = 2;
    while (third < order.size() && geometry::orient2d(at(a), at(b), at(order[third])) == 0) ++third;
    if (third == order.size()) return false;
    seed_triangle(a, b, order[third]);
    for (std::size_t i = 2; i < order.size(); ++i) {
      if (i != third) insert(order[i]);
    }
    return true;
  }

  std::vector<std::array<VertexId, 3>> finite_triangles() const {
    std::vector<std::array<VertexId, 3>> out;
    out.reserve(tris_.size() / 2);
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (!alive_[t] || is_ghost(static_cast<std::uint32_t>(t))) continue;
      out.push_back(tris_[t].v);
    }
    return out;
  }

 private:
  struct Tri {
    std::array<VertexId, 3> v;
    std::array<std::uint32_t, 3> nb;  // nb[i] is across the edge opposite v[i]
  };
  struct BoundaryEdge {
    VertexId a;
    VertexId b;
    std::uint32_t outside;
    std::uint32_t inside;
  };

  Vec2 at(VertexId i) const { return {cloud_.coord(i, 0), cloud_.coord(i, 1)}; }

  bool is_ghost(std::uint32_t t) const {
    const auto& v = tris_[t].v;
    return v[0] == kInfinite || v[1] == kInfinite || v[2] == kInfinite;
  }

  std::uint32_t allocate(const Tri& tri) {
    if (!free_.empty()) {
      const std::uint32_t t = free_.back();
      free_.pop_back();
      tris_[t] = tri;
      alive_[t] = 1;
      return t;
    }
    tris_.push_back(tri);
    alive_.push_back(1);
    visit_.push_back(0);
    return static_cast<std::uint32_t>(tris_.size() - 1);
  }

  void seed_triangle(VertexId a, VertexId b, VertexId c) {
    if (geometry::orient2d(at(a), at(b), at(c)) < 0) std::swap(b, c);
    const std::array<std::array<VertexId, 3>, 4> faces = {{
        {a, b, c},
        {c, b, kInfinite},
        {a, c, kInfinite},
        {b, a, kInfinite},
    }};
    std::array<std::uint32_t, 4> ids{};
    for (int f = 0; f < 4; ++f) ids[f] = allocate({faces[f], {kNoTriangle, kNoTriangle, kNoTriangle}});
    // Pair up directed edges u->w with w->u.
    for (int f = 0; f < 4; ++f) {
      for (int i = 0; i < 3; ++i) {
        const VertexId u = faces[f][(i + 1) % 3];
        const VertexId w = faces[f][(i + 2) % 3];
        for (int g = 0; g < 4; ++g) {
          for (int j = 0; j < 3; ++j) {
            if (faces[g][(j + 1) % 3] == w && faces[g][(j + 2) % 3] == u) tris_[ids[f]].nb[i] = ids[g];
          }
        }
      }
    }
    last_ = ids[0];
  }

  // Strictly between a and b, assuming a, b, p are collinear.
  bool inside_segment(Vec2 a, Vec2 b, Vec2 p) const {
    if (a.x != b.x) return (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x);
    return (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y);
  }

  bool in_conflict(std::uint32_t t, VertexId p) const {
    const auto& v = tris_[t].v;
    for (int k = 0; k < 3; ++k) {
      if (v[k] != kInfinite) continue;
      // Ghost (a, b, inf): the outside of hull edge a->b lies to its left.
      const Vec2 a = at(v[(k + 1) % 3]);
      const Vec2 b = at(v[(k + 2) % 3]);
      const int side = geometry::orient2d(a, b, at(p));
      if (side != 0) return side > 0;
      return inside_segment(a, b, at(p));
    }
    return geometry::incircle_perturbed(at(v[0]), at(v[1]), at(v[2]), at(p), v[0], v[1], v[2], p) > 0;
  }

  std::uint32_t next_random() {
    rng_ ^= rng_ << 13;
    rng_ ^= rng_ >> 17;
    rng_ ^= rng_ << 5;
    return rng_;
  }

  // Visibility walk. Returns a triangle in conflict with p: either the
  // finite triangle containing it or the ghost beyond the hull edge it
  // escaped through.
  std::uint32_t locate(VertexId p) {
    std::uint32_t t = alive_[last_] ? last_ : first_alive();
    if (is_ghost(t)) {
      for (int k = 0; k < 3; ++k) {
        if (tris_[t].v[k] == kInfinite) t = tris_[t].nb[k];
      }
    }
    const Vec2 q = at(p);
    for (;;) {
      if (is_ghost(t)) return t;
      const auto& tri = tris_[t];
      const std::uint32_t start = next_random() % 3;
      std::uint32_t next = kNoTriangle;
      for (std::uint32_t j = 0; j < 3; ++j) {
        const std::uint32_t i = (start + j) % 3;
        if (geometry::orient2d(at(tri.v[(i + 1) % 3]), at(tri.v[(i + 2) % 3]), q) < 0) {
          next = tri.nb[i];
          break;
        }
      }
      if (next == kNoTriangle) return t;
      t = next;
    }
  }

  std::uint32_t first_alive() const {
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (alive_[t]) return static_cast<std::uint32_t>(t);
    }
    return 0;
  }

  void insert(VertexId p) {
    const std::uint32_t seed = locate(p);
    assert(in_conflict(seed, p));

    ++stamp_;
    cavity_.clear();
    boundary_.clear();
    cavity_.push_back(seed);
    visit_[seed] = stamp_;
    conflict_.resize(tris_.size());
    conflict_[seed] = 1;
    for (std::size_t k = 0; k < cavity_.size(); ++k) {
      const std::uint32_t t = cavity_[k];
      for (int i = 0; i < 3; ++i) {
        const std::uint32_t n = tris_[t].nb[i];
        if (visit_[n] != stamp_) {
          visit_[n] = stamp_;
          conflict_[n] = in_conflict(n, p) ? 1 : 0;
          if (conflict_[n]) cavity_.push_back(n);
        }
        if (!conflict_[n]) boundary_.push_back({tris_[t].v[(i + 1) % 3], tris_[t].v[(i + 2) % 3], n, t});
      }
    }

    for (std::uint32_t t : cavity_) {
      alive_[t] = 0;
      free_.push_back(t);
    }

    const auto slot = [&](VertexId v) { return v == kInfinite ? cloud_.size() : static_cast<std::size_t>(v); };
    new_tris_.clear();
    for (const BoundaryEdge& e : boundary_) {
      const std::uint32_t t = allocate({{e.a, e.b, p}, {kNoTriangle, kNoTriangle, e.outside}});
      // Relink by the shared edge; a small hull can border one cavity
      // triangle across two edges.
      auto& outside = tris_[e.outside];
      for (int j = 0; j < 3; ++j) {
        if (outside.v[j] != e.a && outside.v[j] != e.b) outside.nb[j] = t;
      }
      start_of_[slot(e.a)] = t;
      new_tris_.push_back(t);
    }
    for (std::uint32_t t : new_tris_) {
      const std::uint32_t follower = start_of_[slot(tris_[t].v[1])];
      tris_[t].nb[0] = follower;
      tris_[follower].nb[1] = t;
    }
    last_ = new_tris_.front();
  }

  const PointCloud& cloud_;
  std::vector<Tri> tris_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> free_;
  std::vector<std::uint32_t> visit_;
  std::vector<std::uint8_t> conflict_;
  std::vector<std::uint32_t> start_of_;
  std::vector<std::uint32_t> cavity_;
  std::vector<BoundaryEdge> boundary_;
  std::vector<std::uint32_t> new_tris_;
  std::uint32_t stamp_ = 0;
  std::uint32_t last_ = 0;
  std::uint32_t rng_ = 2463534242u;
};

std::vector<std::array<VertexId, 2>> collinear_path(const PointCloud& cloud) {
  std::vector<VertexId> order(cloud.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (cloud.coord(a, 0) != cloud.coord(b, 0)) return cloud.coord(a, 0) < cloud.coord(b, 0);
    return cloud.coord(a, 1) < cloud.coord(b, 1);
  });
  std::vector<std::array<VertexId, 2>> edges;
  for (std::size_t i = 1; i < order.size(); ++i) {
    edges.push_back({std::min(order[i - 1], order[i]), std::max(order[i - 1], order[i])});
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

Triangulation delaunay_2d(const PointCloud& cloud) {
  if (cloud.ambient_dim() != 2) throw Error(Errc::dimension_mismatch, "Delaunay triangulation needs planar points");
  if (cloud.empty()) throw Error(Errc::empty_cloud, "cannot triangulate an empty cloud");

  Triangulation out;
  out.cloud = cloud;
  Builder builder(cloud);
  if (!builder.run()) {
    out.collinear = true;
    out.edges = collinear_path(cloud);
    return out;
  }

  auto triangles = builder.finite_triangles();
  // Canonical listing: rotate so the smallest id comes first (keeps CCW), then sort.
  for (auto& t : triangles) std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
  std::sort(triangles.begin(), triangles.end(), [](const auto& l, const auto& r) {
    auto ls = l, rs = r;
    std::sort(ls.begin(), ls.end());
    std::sort(rs.begin(), rs.end());
    return ls < rs;
  });

  std::vector<std::array<VertexId, 2>> edges;
  edges.reserve(3 * triangles.size());
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      const VertexId u = t[i];
      const VertexId w = t[(i + 1) % 3];
      edges.push_back({std::min(u, w), std::max(u, w)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  out.triangles = std::move(triangles);
  out.edges = std::move(edges);
  return out;
}

}  // namespace alphamag
