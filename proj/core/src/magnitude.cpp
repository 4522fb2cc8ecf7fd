#include "alphamag/magnitude.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "alphamag/error.hpp"
#include "alphamag/parallel.hpp"

namespace alphamag {

SimilarityMatrix similarity_matrix(const DistanceMatrix& d) {
  return SimilarityMatrix((-d.entries().array()).exp().matrix());
}

namespace {

void check_cap(std::size_t n, bool force) {
  if (n > kMagnitudeSizeCap && !force) {
    throw Error(Errc::too_large, "dense magnitude solve is O(n^3); n = " + std::to_string(n) +
                                     " exceeds the cap of " + std::to_string(kMagnitudeSizeCap) +
                                     " (pass force to override)");
  }
}

}  // namespace

std::optional<Weighting> try_weighting(const SimilarityMatrix& z, bool force) {
  check_cap(z.size(), force);
  const Eigen::MatrixXd& m = z.entries();
  const Eigen::Index n = m.rows();
  if (n == 0) return std::nullopt;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double max_entry = m.cwiseAbs().maxCoeff();

  Weighting w;
  bool solved = false;

  // Similarity matrices of Euclidean sets are positive definite, so Cholesky
  // normally succeeds; partial-pivot LU covers the general case (K_{3,2}).
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) {
    const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
    const double min_pivot = diag.cwiseAbs2().minCoeff();
    if (min_pivot >= kSingularPivot * max_entry) {
      w.weights = llt.solve(ones);
      w.min_pivot_ratio = min_pivot / max_entry;
      w.rcond = llt.rcond();
      solved = true;
    }
  }
  if (!solved) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(min_pivot >= kSingularPivot * max_entry)) return std::nullopt;
    w.weights = lu.solve(ones);
    w.min_pivot_ratio = min_pivot / max_entry;
    w.rcond = lu.rcond();
  }

  if (!w.weights.allFinite()) return std::nullopt;
  w.residual_inf = (m * w.weights - ones).cwiseAbs().maxCoeff();
  // Relative residual: ||zeta w - 1|| / (||zeta|| ||w|| + ||1||) in the inf-norm.
  const double scale = m.cwiseAbs().rowwise().sum().maxCoeff() * w.weights.cwiseAbs().maxCoeff() + 1.0;
  if (w.residual_inf / scale > kSingularResidual) return std::nullopt;
  return w;
}

Weighting weighting(const SimilarityMatrix& z, bool force) {
  auto w = try_weighting(z, force);
  if (!w) throw Error(Errc::singular, "similarity matrix has no weighting");
  return *std::move(w);
}

double magnitude(const SimilarityMatrix& z, bool force) { return weighting(z, force).weights.sum(); }

double magnitude(const DistanceMatrix& d, bool force) {
  check_cap(d.size(), force);
  return magnitude(similarity_matrix(d), force);
}

double magnitude(const PointCloud& cloud, bool force) {
  check_cap(cloud.size(), force);
  return magnitude(distance_matrix(cloud), force);
}

std::vector<MagnitudeSample> magnitude_function(const DistanceMatrix& d, const std::vector<double>& t_grid,
                                                bool force, unsigned threads) {
  check_cap(d.size(), force);
  for (double t : t_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(Errc::bad_config, "t grid must be strictly positive");
  }
  std::vector<MagnitudeSample> out(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t i) {
    out[i].t = t_grid[i];
    if (auto w = try_weighting(similarity_matrix(d.scaled(t_grid[i])), force)) out[i].value = w->weights.sum();
  });
  return out;
}

DistanceFixture k32_fixture() {
  // Vertices 0..2 form one side, 3..4 the other.
  Eigen::MatrixXd m(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i == j) {
        m(i, j) = 0.0;
      } else {
        const bool same_side = (i < 3) == (j < 3);
        m(i, j) = same_side ? 2.0 : 1.0;
      }
    }
  }
  return {"k32", DistanceMatrix(std::move(m)), {std::log(std::numbers::sqrt2)}};
}

DistanceFixture cycle4_fixture() {
  Eigen::MatrixXd m(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int hop = std::abs(i - j);
      m(i, j) = std::min(hop, 4 - hop);
    }
  }
  return {"cycle4", DistanceMatrix(std::move(m)), {}};
}

DistanceFixture fixture_by_name(const std::string& name) {
  if (name == "k32") return k32_fixture();
  if (name == "cycle4") return cycle4_fixture();
  throw Error(Errc::bad_config, "unknown fixture '" + name + "' (expected k32 or cycle4)");
}

}  // namespace alphamag
