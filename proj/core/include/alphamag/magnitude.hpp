#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "alphamag/metric.hpp"

namespace alphamag {

/// Similarity matrix zeta with entries exp(-D_ij).
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

struct Weighting {
  Eigen::VectorXd weights;
  double residual_inf = 0.0;     ///< ||zeta w - 1||_inf
  double min_pivot_ratio = 0.0;  ///< smallest |pivot| / max |entry| seen in the factorization
  double rcond = 0.0;            ///< reciprocal condition estimate (1-norm)
};

/// Default dense-solve size cap; larger inputs need `force`.
inline constexpr std::size_t kMagnitudeSizeCap = 4096;

/// Thresholds used to call a similarity matrix singular.
inline constexpr double kSingularResidual = 1e-8;
inline constexpr double kSingularPivot = 1e-13;

SimilarityMatrix similarity_matrix(const DistanceMatrix& d);

/// Solves zeta w = 1. Throws Error(Singular) when the factorization breaks
/// down, a pivot falls under kSingularPivot * max|zeta|, or the relative
/// residual exceeds kSingularResidual. Throws TooLarge above the size cap
/// unless `force` is set.
Weighting weighting(const SimilarityMatrix& z, bool force = false);

/// Non-throwing variant; std::nullopt means Singular.
std::optional<Weighting> try_weighting(const SimilarityMatrix& z, bool force = false);

double magnitude(const SimilarityMatrix& z, bool force = false);
double magnitude(const DistanceMatrix& d, bool force = false);
double magnitude(const PointCloud& cloud, bool force = false);

struct MagnitudeSample {
  double t = 0.0;
  std::optional<double> value;  ///< empty when tX has no weighting
  bool singular() const noexcept { return !value.has_value(); }
};

/// t -> |tX| over a strictly positive grid. Singular points are flagged,
/// not fatal. Throws BadConfig for non-positive grid entries.
std::vector<MagnitudeSample> magnitude_function(const DistanceMatrix& d, const std::vector<double>& t_grid,
                                                bool force = false, unsigned threads = 1);

/// Built-in shortest-path metrics that are not Euclidean point clouds.
struct DistanceFixture {
  std::string name;
  DistanceMatrix distances;
  std::vector<double> singular_t;  ///< scales where the weighting is known not to exist
};

/// Complete bipartite graph K_{3,2} with the shortest-path metric.
DistanceFixture k32_fixture();
/// 4-cycle with the shortest-path metric (a homogeneous space).
DistanceFixture cycle4_fixture();
/// Looks up a fixture by name ("k32", "cycle4"); throws BadConfig otherwise.
DistanceFixture fixture_by_name(const std::string& name);

}  // namespace alphamag
