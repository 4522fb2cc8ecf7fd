#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "alphamag/metric.hpp"
#include "alphamag/oracles.hpp"

namespace alphamag {

/// SplitMix64. Point i of a sample with seed s draws from its own stream
/// SplitMix64::stream(s, i), so output does not depend on thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on {0, ..., bound - 1}; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

enum class SamplerKind { circle, cantor, grid, feigenbaum, union_intervals };

std::string_view to_string(SamplerKind kind) noexcept;
/// Throws BadConfig for an unknown name.
SamplerKind parse_sampler_kind(std::string_view name);

inline constexpr double kFeigenbaumA = 3.56995;
inline constexpr std::uint64_t kDefaultBurnIn = 100000;
inline constexpr unsigned kDefaultCantorDepth = 100;

struct SamplerSpec {
  SamplerKind kind = SamplerKind::circle;
  /// Sample count; for `grid` the lattice resolution (n + 1)^2 points.
  std::uint64_t n = 1;
  std::uint64_t seed = 0;
  unsigned depth = kDefaultCantorDepth;
  double a = kFeigenbaumA;
  std::uint64_t burn_in = kDefaultBurnIn;
  std::optional<double> x0;  ///< drawn from the seed when absent
  IntervalUnion intervals;

  /// Throws BadConfig when an invariant is violated.
  void validate() const;
};

PointCloud sample_circle(std::uint64_t n, std::uint64_t seed, unsigned threads = 1);
PointCloud sample_cantor(std::uint64_t n, unsigned depth, std::uint64_t seed, unsigned threads = 1);
PointCloud sample_grid(std::uint64_t n);
PointCloud sample_feigenbaum(std::uint64_t n, double a, std::uint64_t burn_in, double x0);
PointCloud sample_union_intervals(const IntervalUnion& cfg, std::uint64_t n, std::uint64_t seed,
                                  unsigned threads = 1);

/// Starting value used for the logistic map: spec.x0 or a draw from spec.seed.
double feigenbaum_x0(const SamplerSpec& spec);

/// Dispatches on spec.kind after validation.
PointCloud sample(const SamplerSpec& spec, unsigned threads = 1);

/// Uniform subsample of `size` points without replacement. size equal to the
/// cloud size returns the cloud unchanged. Throws BadSize when too large.
PointCloud subsample(const PointCloud& cloud, std::size_t size, std::uint64_t seed);

}  // namespace alphamag
