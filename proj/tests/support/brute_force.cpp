#include "brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace alphamag::testing {

namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t gf2_rank(std::vector<Bits> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t bits = rows.front().size() * 64;
  for (std::size_t col = 0; col < bits && rank < rows.size(); ++col) {
    const std::size_t word = col / 64;
    const std::uint64_t mask = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][word] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][word] & mask)) {
        for (std::size_t w = 0; w < rows[r].size(); ++w) rows[r][w] ^= rows[rank][w];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<std::size_t> gf2_betti(const FilteredComplex& complex, double eps) {
  const int top = std::max(0, complex.max_dimension());
  std::vector<std::vector<std::vector<VertexId>>> by_dim(top + 1);
  for (std::size_t i = 0; i < complex.size(); ++i) {
    if (complex.value(i) > eps) continue;
    auto s = complex.simplex(i);
    std::vector<VertexId> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    by_dim[complex.dimension(i)].push_back(std::move(v));
  }
  // rank of the boundary map from dimension k to k - 1
  std::vector<std::size_t> rank(top + 2, 0);
  for (int k = 1; k <= top; ++k) {
    std::map<std::vector<VertexId>, std::size_t> index;
    for (std::size_t j = 0; j < by_dim[k - 1].size(); ++j) index[by_dim[k - 1][j]] = j;
    const std::size_t words = (by_dim[k - 1].size() + 63) / 64 + 1;
    std::vector<Bits> rows;
    for (const auto& s : by_dim[k]) {
      Bits row(words, 0);
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<VertexId> face;
        for (std::size_t q = 0; q < s.size(); ++q) {
          if (q != drop) face.push_back(s[q]);
        }
        const std::size_t j = index.at(face);
        row[j / 64] ^= std::uint64_t{1} << (j % 64);
      }
      rows.push_back(std::move(row));
    }
    rank[k] = gf2_rank(std::move(rows));
  }
  std::vector<std::size_t> betti(top + 1);
  for (int k = 0; k <= top; ++k) betti[k] = by_dim[k].size() - rank[k] - rank[k + 1];
  return betti;
}

double voronoi_alpha_value(const PointCloud& cloud, std::span<const VertexId> simplex) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int dim = cloud.ambient_dim();
  const auto is_member = [&](std::size_t r) { return std::find(simplex.begin(), simplex.end(), r) != simplex.end(); };
  if (simplex.size() == 1) return 0.0;

  if (dim == 1) {
    if (simplex.size() != 2) return inf;
    const double a = cloud.coord(simplex[0], 0), b = cloud.coord(simplex[1], 0);
    const double m = 0.5 * (a + b), rad = 0.5 * std::abs(b - a);
    for (std::size_t r = 0; r < cloud.size(); ++r) {
      if (!is_member(r) && std::abs(cloud.coord(r, 0) - m) < rad) return inf;
    }
    return rad;
  }

  const auto px = [&](VertexId i) { return cloud.coord(i, 0); };
  const auto py = [&](VertexId i) { return cloud.coord(i, 1); };
  if (simplex.size() == 2) {
    const VertexId p = simplex[0], q = simplex[1];
    const double mx = 0.5 * (px(p) + px(q)), my = 0.5 * (py(p) + py(q));
    const double len = std::hypot(px(q) - px(p), py(q) - py(p));
    const double dx = -(py(q) - py(p)) / len, dy = (px(q) - px(p)) / len;
    double lo = -inf, hi = inf;
    for (std::size_t r = 0; r < cloud.size(); ++r) {
      if (is_member(r)) continue;
      // |x - p|^2 <= |x - r|^2 along x = m + s d is linear in s.
      const double rx = cloud.coord(r, 0) - px(p), ry = cloud.coord(r, 1) - py(p);
      const double coef = 2.0 * (dx * rx + dy * ry);
      const double rhs = (rx * rx + ry * ry) - 2.0 * ((mx - px(p)) * rx + (my - py(p)) * ry);
      if (coef > 0) {
        hi = std::min(hi, rhs / coef);
      } else if (coef < 0) {
        lo = std::max(lo, rhs / coef);
      } else if (rhs < 0) {
        return inf;
      }
    }
    if (lo > hi) return inf;
    const double s = std::clamp(0.0, lo, hi);
    return std::sqrt(0.25 * len * len + s * s);
  }

  if (simplex.size() == 3) {
    const VertexId a = simplex[0], b = simplex[1], c = simplex[2];
    const double bx = px(b) - px(a), by = py(b) - py(a), cx = px(c) - px(a), cy = py(c) - py(a);
    const double d = 2.0 * (bx * cy - by * cx);
    if (d == 0.0) return inf;
    const double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
    const double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
    const double rad = std::hypot(ux, uy);
    for (std::size_t r = 0; r < cloud.size(); ++r) {
      if (is_member(r)) continue;
      if (std::hypot(cloud.coord(r, 0) - px(a) - ux, cloud.coord(r, 1) - py(a) - uy) < rad * (1.0 - 1e-12)) {
        return inf;
      }
    }
    return rad;
  }
  return inf;
}

bool empty_circumcircle(const PointCloud& cloud, const std::array<VertexId, 3>& tri, double tol) {
  using L = long double;
  const L ax = cloud.coord(tri[0], 0), ay = cloud.coord(tri[0], 1);
  const L bx = cloud.coord(tri[1], 0) - ax, by = cloud.coord(tri[1], 1) - ay;
  const L cx = cloud.coord(tri[2], 0) - ax, cy = cloud.coord(tri[2], 1) - ay;
  const L d = 2 * (bx * cy - by * cx);
  const L ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
  const L uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
  const L rad = std::sqrt(ux * ux + uy * uy);
  for (std::size_t r = 0; r < cloud.size(); ++r) {
    if (r == tri[0] || r == tri[1] || r == tri[2]) continue;
    const L dx = cloud.coord(r, 0) - ax - ux, dy = cloud.coord(r, 1) - ay - uy;
    if (std::sqrt(dx * dx + dy * dy) < rad * (1 - static_cast<L>(tol))) return false;
  }
  return true;
}

double meb_radius_search(const PointCloud& cloud, std::span<const VertexId> subset) {
  const int dim = cloud.ambient_dim();
  const auto radius_at = [&](double x, double y) {
    double r = 0.0;
    for (VertexId i : subset) {
      const double dx = cloud.coord(i, 0) - x;
      const double dy = dim == 2 ? cloud.coord(i, 1) - y : 0.0;
      r = std::max(r, std::hypot(dx, dy));
    }
    return r;
  };
  double x0 = cloud.coord(subset[0], 0), x1 = x0, y0 = dim == 2 ? cloud.coord(subset[0], 1) : 0.0, y1 = y0;
  for (VertexId i : subset) {
    x0 = std::min(x0, cloud.coord(i, 0));
    x1 = std::max(x1, cloud.coord(i, 0));
    if (dim == 2) {
      y0 = std::min(y0, cloud.coord(i, 1));
      y1 = std::max(y1, cloud.coord(i, 1));
    }
  }
  const auto best_over_y = [&](double x) {
    double lo = y0, hi = y1;
    for (int it = 0; it < 90; ++it) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (radius_at(x, m1) < radius_at(x, m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    return radius_at(x, 0.5 * (lo + hi));
  };
  double lo = x0, hi = x1;
  for (int it = 0; it < 90; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (best_over_y(m1) < best_over_y(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return best_over_y(0.5 * (lo + hi));
}

bool same_barcode(const Barcode& a, const Barcode& b, double tol, std::string* why) {
  const auto significant = [tol](const Barcode& bc) {
    std::vector<Interval> out;
    for (const auto& iv : bc.intervals) {
      if (iv.essential() || iv.death - iv.birth > tol) out.push_back(iv);
    }
    std::sort(out.begin(), out.end(), [](const Interval& l, const Interval& r) {
      if (l.degree != r.degree) return l.degree < r.degree;
      if (l.birth != r.birth) return l.birth < r.birth;
      return l.death < r.death;
    });
    return out;
  };
  const auto x = significant(a), y = significant(b);
  const auto describe = [](const Interval& iv) {
    std::ostringstream s;
    s.precision(17);
    s << "H" << iv.degree << "[" << iv.birth << ", " << iv.death << ")";
    return s.str();
  };
  if (x.size() != y.size()) {
    if (why) *why = "sizes differ: " + std::to_string(x.size()) + " vs " + std::to_string(y.size());
    return false;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool deaths = (x[i].essential() && y[i].essential()) ||
                        (!x[i].essential() && !y[i].essential() && std::abs(x[i].death - y[i].death) <= tol);
    if (x[i].degree != y[i].degree || std::abs(x[i].birth - y[i].birth) > tol || !deaths) {
      if (why) *why = describe(x[i]) + " vs " + describe(y[i]);
      return false;
    }
  }
  return true;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

PointCloud random_cloud(Rng& rng, int dim, std::size_t n, double lo, double hi) {
  std::vector<double> flat(n * static_cast<std::size_t>(dim));
  for (auto& v : flat) v = uniform(rng, lo, hi);
  return make_point_cloud(dim, std::move(flat));
}

}  // namespace alphamag::testing
