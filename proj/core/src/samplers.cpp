#include "alphamag/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "alphamag/error.hpp"
#include "alphamag/parallel.hpp"

namespace alphamag {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream reserved for the logistic-map starting value.
constexpr std::uint64_t kX0Stream = ~std::uint64_t{0};

}  // namespace

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix(seed) ^ mix(index * kGolden + 1));
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Reject the low residue class so every value is equally likely.
  const std::uint64_t threshold = -bound % bound;
  std::uint64_t x = next();
  while (x < threshold) x = next();
  return x % bound;
}

std::string_view to_string(SamplerKind kind) noexcept {
  switch (kind) {
    case SamplerKind::circle: return "circle";
    case SamplerKind::cantor: return "cantor";
    case SamplerKind::grid: return "grid";
    case SamplerKind::feigenbaum: return "feigenbaum";
    case SamplerKind::union_intervals: return "union_intervals";
  }
  return "unknown";
}

SamplerKind parse_sampler_kind(std::string_view name) {
  for (SamplerKind k : {SamplerKind::circle, SamplerKind::cantor, SamplerKind::grid, SamplerKind::feigenbaum,
                        SamplerKind::union_intervals}) {
    if (name == to_string(k)) return k;
  }
  if (name == "union") return SamplerKind::union_intervals;
  throw Error(Errc::bad_config, "unknown sampler kind '" + std::string(name) + "'");
}

void SamplerSpec::validate() const {
  if (n < 1) throw Error(Errc::bad_config, "n must be at least 1");
  switch (kind) {
    case SamplerKind::cantor:
      if (depth < 1) throw Error(Errc::bad_config, "cantor depth must be at least 1");
      break;
    case SamplerKind::feigenbaum:
      if (!(a > 1.0 && a < 4.0)) throw Error(Errc::bad_config, "logistic parameter a must lie in (1, 4)");
      if (x0 && !(*x0 > 0.0 && *x0 < 1.0)) throw Error(Errc::bad_config, "x0 must lie in (0, 1)");
      break;
    case SamplerKind::union_intervals:
      intervals.validate_shape();
      break;
    case SamplerKind::grid:
      if (n > 4096) throw Error(Errc::bad_config, "grid resolution limited to 4096");
      break;
    case SamplerKind::circle:
      break;
  }
}

PointCloud sample_circle(std::uint64_t n, std::uint64_t seed, unsigned threads) {
  if (n < 1) throw Error(Errc::bad_config, "n must be at least 1");
  std::vector<double> xy(2 * n);
  parallel_for(n, threads, [&](std::size_t i) {
    auto rng = SplitMix64::stream(seed, i);
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    xy[2 * i] = std::cos(theta);
    xy[2 * i + 1] = std::sin(theta);
  });
  return make_point_cloud(2, std::move(xy));
}

PointCloud sample_cantor(std::uint64_t n, unsigned depth, std::uint64_t seed, unsigned threads) {
  if (n < 1) throw Error(Errc::bad_config, "n must be at least 1");
  if (depth < 1) throw Error(Errc::bad_config, "cantor depth must be at least 1");
  std::vector<double> xs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    auto rng = SplitMix64::stream(seed, i);
    // Coin flips b_1..b_D, then u; Horner from the deepest digit outward.
    thread_local std::vector<unsigned char> bits;
    bits.resize(depth);
    std::uint64_t word = 0;
    for (unsigned k = 0; k < depth; ++k) {
      if (k % 64 == 0) word = rng.next();
      bits[k] = static_cast<unsigned char>((word >> (k % 64)) & 1U);
    }
    double x = rng.uniform();
    for (unsigned k = depth; k-- > 0;) x = (x + 2.0 * bits[k]) / 3.0;
    xs[i] = x;
  });
  return make_point_cloud_1d(std::move(xs));
}

PointCloud sample_grid(std::uint64_t n) {
  if (n < 1) throw Error(Errc::bad_config, "grid needs n >= 1");
  const double nn = static_cast<double>(n);
  std::vector<double> xy;
  xy.reserve(2 * (n + 1) * (n + 1));
  for (std::uint64_t j = 0; j <= n; ++j) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      xy.push_back(static_cast<double>(j) / nn);
      xy.push_back(static_cast<double>(k) / nn);
    }
  }
  return make_point_cloud(2, std::move(xy));
}

PointCloud sample_feigenbaum(std::uint64_t n, double a, std::uint64_t burn_in, double x0) {
  if (n < 1) throw Error(Errc::bad_config, "n must be at least 1");
  if (!(a > 1.0 && a < 4.0)) throw Error(Errc::bad_config, "logistic parameter a must lie in (1, 4)");
  if (!(x0 > 0.0 && x0 < 1.0)) throw Error(Errc::bad_config, "x0 must lie in (0, 1)");
  double x = x0;
  for (std::uint64_t k = 0; k < burn_in; ++k) x = a * x * (1.0 - x);
  std::vector<double> xs(n);
  for (auto& v : xs) {
    x = a * x * (1.0 - x);
    v = x;
  }
  return make_point_cloud_1d(std::move(xs));
}

PointCloud sample_union_intervals(const IntervalUnion& cfg, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  if (n < 1) throw Error(Errc::bad_config, "n must be at least 1");
  cfg.validate_shape();
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& [lo, hi] : cfg.intervals) cumulative.push_back(total += hi - lo);
  std::vector<double> xs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    auto rng = SplitMix64::stream(seed, i);
    const double pick = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    const std::size_t j = std::min<std::size_t>(it - cumulative.begin(), cfg.intervals.size() - 1);
    const auto [lo, hi] = cfg.intervals[j];
    xs[i] = std::min(hi, lo + rng.uniform() * (hi - lo));
  });
  return make_point_cloud_1d(std::move(xs));
}

double feigenbaum_x0(const SamplerSpec& spec) {
  if (spec.x0) return *spec.x0;
  auto rng = SplitMix64::stream(spec.seed, kX0Stream);
  double u = 0.0;
  while (u == 0.0) u = rng.uniform();
  return u;
}

PointCloud sample(const SamplerSpec& spec, unsigned threads) {
  spec.validate();
  switch (spec.kind) {
    case SamplerKind::circle: return sample_circle(spec.n, spec.seed, threads);
    case SamplerKind::cantor: return sample_cantor(spec.n, spec.depth, spec.seed, threads);
    case SamplerKind::grid: return sample_grid(spec.n);
    case SamplerKind::feigenbaum: return sample_feigenbaum(spec.n, spec.a, spec.burn_in, feigenbaum_x0(spec));
    case SamplerKind::union_intervals: return sample_union_intervals(spec.intervals, spec.n, spec.seed, threads);
  }
  throw Error(Errc::bad_config, "unknown sampler kind");
}

PointCloud subsample(const PointCloud& cloud, std::size_t size, std::uint64_t seed) {
  const std::size_t n = cloud.size();
  if (size < 1 || size > n) {
    throw Error(Errc::bad_size, "subsample size " + std::to_string(size) + " outside [1, " + std::to_string(n) + "]");
  }
  if (size == n) return cloud;
  // Partial Fisher-Yates over indices, then restore the original order.
  std::vector<std::uint32_t> index(n);
  std::iota(index.begin(), index.end(), 0U);
  SplitMix64 rng(mix(seed) ^ 0x5B5B5B5B5B5B5B5BULL);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(index[i], index[j]);
  }
  index.resize(size);
  std::sort(index.begin(), index.end());
  const int dim = cloud.ambient_dim();
  std::vector<double> flat;
  flat.reserve(size * static_cast<std::size_t>(dim));
  for (auto i : index) {
    const auto p = cloud.point(i);
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return make_point_cloud(dim, std::move(flat));
}

}  // namespace alphamag
