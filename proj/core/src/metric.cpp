#include "alphamag/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "alphamag/error.hpp"
#include "format.hpp"

namespace alphamag {

PointCloud make_point_cloud(int ambient_dim, std::vector<double> flat_coords) {
  if (ambient_dim != 1 && ambient_dim != 2) {
    throw Error(Errc::dimension_mismatch, "ambient dimension must be 1 or 2");
  }
  if (flat_coords.empty()) throw Error(Errc::empty_cloud, "point list is empty");
  if (flat_coords.size() % ambient_dim != 0) {
    throw Error(Errc::dimension_mismatch, "coordinate count is not a multiple of the dimension");
  }
  const std::size_t n = flat_coords.size() / ambient_dim;
  const int d = ambient_dim;

  auto less = [&](std::size_t a, std::size_t b) {
    for (int k = 0; k < d; ++k) {
      const double u = flat_coords[a * d + k];
      const double v = flat_coords[b * d + k];
      if (u != v) return u < v;
    }
    return a < b;
  };
  auto same = [&](std::size_t a, std::size_t b) {
    for (int k = 0; k < d; ++k) {
      if (flat_coords[a * d + k] != flat_coords[b * d + k]) return false;
    }
    return true;
  };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), less);

  // Within a run of equal points the smallest index sorts first and is kept.
  std::vector<char> keep(n, 1);
  std::size_t removed = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (same(order[i - 1], order[i])) {
      keep[order[i]] = 0;
      ++removed;
    }
  }

  PointCloud cloud;
  cloud.dim_ = d;
  cloud.duplicates_removed_ = removed;
  if (removed == 0) {
    cloud.coords_ = std::move(flat_coords);
  } else {
    cloud.coords_.reserve((n - removed) * d);
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      for (int k = 0; k < d; ++k) cloud.coords_.push_back(flat_coords[i * d + k]);
    }
  }
  return cloud;
}

PointCloud make_point_cloud(const std::vector<std::vector<double>>& raw_points) {
  if (raw_points.empty()) throw Error(Errc::empty_cloud, "point list is empty");
  const std::size_t arity = raw_points.front().size();
  if (arity != 1 && arity != 2) {
    throw Error(Errc::dimension_mismatch, "points must have 1 or 2 coordinates");
  }
  std::vector<double> flat;
  flat.reserve(raw_points.size() * arity);
  for (const auto& p : raw_points) {
    if (p.size() != arity) throw Error(Errc::dimension_mismatch, "mixed point arity");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return make_point_cloud(static_cast<int>(arity), std::move(flat));
}

PointCloud make_point_cloud_1d(std::vector<double> xs) { return make_point_cloud(1, std::move(xs)); }

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw Error(Errc::bad_config, "distance matrix is not square");
  const Eigen::Index n = entries_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (entries_(i, i) != 0.0) throw Error(Errc::bad_config, "distance matrix has nonzero diagonal");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = entries_(i, j);
      if (!(v >= 0.0) || v != entries_(j, i)) {
        throw Error(Errc::bad_config, "distance matrix must be symmetric and non-negative");
      }
    }
  }
}

DistanceMatrix DistanceMatrix::scaled(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(Errc::invalid_scale, "scale must be positive");
  DistanceMatrix out;
  out.entries_ = entries_ * t;
  return out;
}

namespace {

double euclid(std::span<const double> a, std::span<const double> b) {
  if (a.size() == 1) return std::abs(a[0] - b[0]);
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

DistanceMatrix distance_matrix(const PointCloud& cloud) {
  const auto n = static_cast<Eigen::Index>(cloud.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = euclid(cloud.point(i), cloud.point(j));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(d));
}

PointCloud scale(const PointCloud& cloud, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(Errc::invalid_scale, "scale must be positive");
  PointCloud out = cloud;
  for (double& c : out.coords_) c *= t;
  return out;
}

namespace {

// Largest distance from a point of `from` to its nearest neighbour in `to`.
double directed_hausdorff(const PointCloud& from, const PointCloud& to) {
  if (from.ambient_dim() == 1) {
    std::vector<double> xs(to.coordinates().begin(), to.coordinates().end());
    std::sort(xs.begin(), xs.end());
    double worst = 0.0;
    for (double x : from.coordinates()) {
      auto it = std::lower_bound(xs.begin(), xs.end(), x);
      double best = std::numeric_limits<double>::infinity();
      if (it != xs.end()) best = *it - x;
      if (it != xs.begin()) best = std::min(best, x - *std::prev(it));
      worst = std::max(worst, best);
    }
    return worst;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size() && best > worst; ++j) {
      best = std::min(best, euclid(from.point(i), to.point(j)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(Errc::dimension_mismatch, "clouds live in different dimensions");
  }
  if (a.empty() || b.empty()) throw Error(Errc::empty_cloud, "Hausdorff distance of an empty cloud");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view field, std::size_t line_no) {
  field = trim(field);
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw Error(Errc::parse_error,
                "line " + std::to_string(line_no) + ": not a real number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) {
    throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": NaN/Inf coordinates are rejected");
  }
  return v;
}

}  // namespace

PointCloud read_point_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  int dim = 0;
  std::vector<double> flat;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    if (dim == 0) {
      if (row == "x") {
        dim = 1;
      } else if (row == "x,y") {
        dim = 2;
      } else {
        throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": expected header 'x' or 'x,y'");
      }
      continue;
    }
    const auto comma = row.find(',');
    if (dim == 1) {
      if (comma != std::string_view::npos) {
        throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": expected one column");
      }
      flat.push_back(parse_real(row, line_no));
    } else {
      if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
        throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": expected two columns");
      }
      flat.push_back(parse_real(row.substr(0, comma), line_no));
      flat.push_back(parse_real(row.substr(comma + 1), line_no));
    }
  }
  if (dim == 0) throw Error(Errc::parse_error, "missing header row");
  if (flat.empty()) throw Error(Errc::empty_cloud, "no points in CSV");
  return make_point_cloud(dim, std::move(flat));
}

PointCloud read_point_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  return read_point_csv(in);
}

void write_point_csv(std::ostream& out, const PointCloud& cloud, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << (cloud.ambient_dim() == 1 ? "x" : "x,y") << '\n';
  std::string buf;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    buf.clear();
    detail::append_real(buf, cloud.coord(i, 0));
    if (cloud.ambient_dim() == 2) {
      buf.push_back(',');
      detail::append_real(buf, cloud.coord(i, 1));
    }
    buf.push_back('\n');
    out << buf;
  }
}

}  // namespace alphamag
