#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace alphamag {

/// Finite point set in R^1 or R^2.
///
/// Coordinates are stored row-major in a flat buffer. Construction removes
/// exact duplicates (keeping the first occurrence) so that downstream
/// complexes always see distinct points with stable indices.
class PointCloud {
 public:
  PointCloud() = default;

  int ambient_dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  double coord(std::size_t i, int axis) const noexcept { return coords_[i * dim_ + axis]; }
  std::span<const double> coordinates() const noexcept { return coords_; }

  /// Number of exact duplicates dropped when the cloud was built.
  std::size_t duplicates_removed() const noexcept { return duplicates_removed_; }

  friend bool operator==(const PointCloud& a, const PointCloud& b) {
    return a.dim_ == b.dim_ && a.coords_ == b.coords_;
  }

 private:
  friend PointCloud make_point_cloud(int, std::vector<double>);
  friend PointCloud scale(const PointCloud&, double);

  int dim_ = 0;
  std::vector<double> coords_;
  std::size_t duplicates_removed_ = 0;
};

/// Builds a cloud from raw tuples. Throws EmptyCloud for an empty list and
/// DimensionMismatch when tuple arity is mixed or outside {1, 2}.
PointCloud make_point_cloud(const std::vector<std::vector<double>>& raw_points);

/// Same, from a flat row-major buffer of `ambient_dim`-tuples.
PointCloud make_point_cloud(int ambient_dim, std::vector<double> flat_coords);

/// Convenience for the common one-dimensional case.
PointCloud make_point_cloud_1d(std::vector<double> xs);

/// Symmetric matrix of pairwise distances with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  /// Validates symmetry, zero diagonal and non-negativity; throws BadConfig.
  explicit DistanceMatrix(Eigen::MatrixXd entries);

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }

  /// Distances multiplied by t (the metric space tX).
  DistanceMatrix scaled(double t) const;

 private:
  Eigen::MatrixXd entries_;
};

DistanceMatrix distance_matrix(const PointCloud& cloud);

/// Multiplies every coordinate by t > 0. Throws InvalidScale otherwise.
PointCloud scale(const PointCloud& cloud, double t);

/// Hausdorff distance between two clouds of the same ambient dimension.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

// CSV point format: header `x` or `x,y`, one point per row. Lines starting
// with '#' are comments. NaN/Inf and malformed rows raise ParseError.
PointCloud read_point_csv(std::istream& in);
PointCloud read_point_csv_file(const std::string& path);
void write_point_csv(std::ostream& out, const PointCloud& cloud, const std::string& comment = {});

}  // namespace alphamag
