#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "alphamag/persistent_magnitude.hpp"
#include "alphamag/samplers.hpp"

namespace alphamag {

inline constexpr double kConvergenceThreshold = 1e-5;
inline constexpr double kDefaultWindowLow = 1.75;
inline constexpr double kDefaultWindowHighOffset = 2.0;
inline constexpr std::uint64_t kConvergenceStart = 1000;
inline constexpr std::uint64_t kConvergenceCap = 5000000;
inline constexpr std::size_t kMinWindowPoints = 10;
inline constexpr double kFeigenbaumWindowLow = 0.5;
inline constexpr double kFeigenbaumWindowHighOffset = 6.5;

struct ConvergenceReport {
  std::vector<std::pair<std::uint64_t, double>> sequence;  ///< (n, |X_n|_alpha at t = 1)
  bool converged = false;
  std::uint64_t final_n = 0;
  double threshold = kConvergenceThreshold;
  /// |last value - previous value|, or +inf with fewer than two entries.
  double last_difference = kInfinity;
};

/// n doubling from `start` while n <= cap.
std::vector<std::uint64_t> doubling_schedule(std::uint64_t start = kConvergenceStart,
                                             std::uint64_t cap = kConvergenceCap);

/// Samples spec at each n of the schedule and stops at the first successive
/// difference below threshold. Throws BadConfig for a schedule that is
/// shorter than 2 or not strictly increasing.
ConvergenceReport check_convergence(const SamplerSpec& spec, const std::vector<std::uint64_t>& n_schedule,
                                    double threshold = kConvergenceThreshold, unsigned threads = 1);

struct LogLogPoint {
  double log_t = 0.0;
  double log_magnitude = 0.0;
};

/// Natural-log pairs over log_grid(t_min, t_max, per_decade).
std::vector<LogLogPoint> loglog_curve(const PointCloud& cloud, double t_min, double t_max,
                                      double points_per_decade = kDefaultPointsPerDecade, unsigned threads = 1);
std::vector<LogLogPoint> loglog_curve(const MagnitudeFunction& f, double t_min, double t_max,
                                      double points_per_decade = kDefaultPointsPerDecade, unsigned threads = 1);
std::vector<LogLogPoint> loglog_curve(const MagnitudeCurve& curve);

struct DimensionEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double window_low = 0.0;   ///< natural log of t
  double window_high = 0.0;  ///< natural log of t
  double r_squared = 0.0;
  std::size_t n_used = 0;           ///< sample size the estimate refers to
  std::size_t points_in_window = 0;
};

/// ln(n) - 2.
double default_window_high(std::size_t n);

/// OLS of log|tX| on log t over log t in [window_low, window_high]. Throws
/// TooFewPoints with fewer than 10 curve points in the window and BadConfig
/// for an empty window.
DimensionEstimate estimate_dimension(const std::vector<LogLogPoint>& curve, double window_low, double window_high,
                                     std::size_t n_used = 0);

struct DimensionOptions {
  double window_low = kDefaultWindowLow;
  /// Upper bound is ln(size) - window_high_offset unless window_high is set.
  double window_high_offset = kDefaultWindowHighOffset;
  std::optional<double> window_high;
  double points_per_decade = kDefaultPointsPerDecade;

  double high_for(std::size_t n) const;
};

/// Shipped window per sampler kind: [1.75, ln n - 2], except the logistic
/// attractor which uses [0.5, ln n - 6.5].
DimensionOptions default_dimension_options(SamplerKind kind);

struct DimensionRun {
  DimensionEstimate estimate;
  MagnitudeCurve curve;  ///< samples over the regression window
};

/// Curve over exactly the window, then the regression.
DimensionRun estimate_cloud_dimension(const PointCloud& cloud, const DimensionOptions& options = {},
                                      unsigned threads = 1);

struct SweepEntry {
  std::size_t size = 0;
  DimensionEstimate estimate;
};

/// `count` sizes log-spaced between lo and hi inclusive, deduplicated.
std::vector<std::size_t> log_spaced_sizes(std::size_t lo, std::size_t hi, std::size_t count);

/// One seeded subsample per size, each with its own window. Entries run
/// concurrently. Throws BadSize when a size exceeds the cloud.
std::vector<SweepEntry> subsample_sweep(const PointCloud& cloud, const std::vector<std::size_t>& sizes,
                                        std::uint64_t seed, const DimensionOptions& options = {},
                                        unsigned threads = 1);

}  // namespace alphamag
