#include "alphamag/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alphamag/complex.hpp"
#include "alphamag/error.hpp"
#include "alphamag/parallel.hpp"

namespace alphamag {

std::vector<std::uint64_t> doubling_schedule(std::uint64_t start, std::uint64_t cap) {
  if (start < 1 || cap < start) throw Error(Errc::bad_config, "schedule needs 1 <= start <= cap");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = start; n <= cap; n *= 2) out.push_back(n);
  return out;
}

ConvergenceReport check_convergence(const SamplerSpec& spec, const std::vector<std::uint64_t>& n_schedule,
                                    double threshold, unsigned threads) {
  if (n_schedule.size() < 2) throw Error(Errc::bad_config, "convergence schedule needs at least two sizes");
  for (std::size_t i = 1; i < n_schedule.size(); ++i) {
    if (n_schedule[i] <= n_schedule[i - 1]) throw Error(Errc::bad_config, "schedule must be strictly increasing");
  }
  if (!(threshold > 0.0)) throw Error(Errc::bad_config, "threshold must be positive");
  ConvergenceReport report;
  report.threshold = threshold;
  for (std::uint64_t n : n_schedule) {
    SamplerSpec s = spec;
    s.n = n;
    const double value = alpha_magnitude(sample(s, threads), 1.0);
    report.sequence.emplace_back(n, value);
    report.final_n = n;
    if (report.sequence.size() >= 2) {
      report.last_difference = std::abs(value - report.sequence[report.sequence.size() - 2].second);
      if (report.last_difference < threshold) {
        report.converged = true;
        break;
      }
    }
  }
  return report;
}

std::vector<LogLogPoint> loglog_curve(const MagnitudeCurve& curve) {
  std::vector<LogLogPoint> out;
  out.reserve(curve.points.size());
  for (const auto& p : curve.points) out.push_back({std::log(p.t), std::log(p.magnitude)});
  return out;
}

std::vector<LogLogPoint> loglog_curve(const PointCloud& cloud, double t_min, double t_max, double points_per_decade,
                                      unsigned threads) {
  if (!(t_min < t_max)) throw Error(Errc::bad_config, "curve needs t_min < t_max");
  return loglog_curve(magnitude_curve(cloud, log_grid(t_min, t_max, points_per_decade), threads));
}

std::vector<LogLogPoint> loglog_curve(const MagnitudeFunction& f, double t_min, double t_max,
                                      double points_per_decade, unsigned threads) {
  if (!(t_min < t_max)) throw Error(Errc::bad_config, "curve needs t_min < t_max");
  const auto grid = log_grid(t_min, t_max, points_per_decade);
  std::vector<LogLogPoint> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { out[i] = {std::log(grid[i]), std::log(f(grid[i]))}; });
  return out;
}

double default_window_high(std::size_t n) { return std::log(static_cast<double>(n)) - kDefaultWindowHighOffset; }

DimensionEstimate estimate_dimension(const std::vector<LogLogPoint>& curve, double window_low, double window_high,
                                     std::size_t n_used) {
  if (!(window_low < window_high)) {
    throw Error(Errc::bad_config, "empty regression window [" + std::to_string(window_low) + ", " +
                                      std::to_string(window_high) + "]");
  }
  std::vector<LogLogPoint> in;
  for (const auto& p : curve) {
    if (p.log_t >= window_low && p.log_t <= window_high) in.push_back(p);
  }
  if (in.size() < kMinWindowPoints) {
    throw Error(Errc::too_few_points, std::to_string(in.size()) + " curve points inside the window, need " +
                                          std::to_string(kMinWindowPoints));
  }
  std::sort(in.begin(), in.end(), [](const LogLogPoint& a, const LogLogPoint& b) {
    return a.log_t != b.log_t ? a.log_t < b.log_t : a.log_magnitude < b.log_magnitude;
  });
  const double m = static_cast<double>(in.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : in) {
    mx += p.log_t;
    my += p.log_magnitude;
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : in) {
    const double dx = p.log_t - mx;
    const double dy = p.log_magnitude - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw Error(Errc::too_few_points, "window holds a single distinct t");
  DimensionEstimate e;
  e.slope = sxy / sxx;
  e.intercept = my - e.slope * mx;
  e.window_low = window_low;
  e.window_high = window_high;
  e.n_used = n_used;
  e.points_in_window = in.size();
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (const auto& p : in) {
      const double r = p.log_magnitude - (e.intercept + e.slope * p.log_t);
      ss_res += r * r;
    }
    e.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  } else {
    e.r_squared = 1.0;
  }
  return e;
}

double DimensionOptions::high_for(std::size_t n) const {
  return window_high ? *window_high : std::log(static_cast<double>(n)) - window_high_offset;
}

DimensionOptions default_dimension_options(SamplerKind kind) {
  DimensionOptions o;
  if (kind == SamplerKind::feigenbaum) {
    o.window_low = kFeigenbaumWindowLow;
    o.window_high_offset = kFeigenbaumWindowHighOffset;
  }
  return o;
}

DimensionRun estimate_cloud_dimension(const PointCloud& cloud, const DimensionOptions& options, unsigned threads) {
  const double lo = options.window_low;
  const double hi = options.high_for(cloud.size());
  if (!(lo < hi)) {
    throw Error(Errc::too_few_points, "regression window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                          "] is empty for " + std::to_string(cloud.size()) + " points");
  }
  DimensionRun run;
  run.curve = magnitude_curve(cloud, log_grid(std::exp(lo), std::exp(hi), options.points_per_decade), threads);
  run.estimate = estimate_dimension(loglog_curve(run.curve), lo, hi, cloud.size());
  return run;
}

std::vector<std::size_t> log_spaced_sizes(std::size_t lo, std::size_t hi, std::size_t count) {
  if (lo < 1 || hi < lo || count < 1) throw Error(Errc::bad_size, "sizes need 1 <= lo <= hi and count >= 1");
  if (count == 1 || lo == hi) return {hi};
  std::vector<std::size_t> out;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t k = 0; k < count; ++k) {
    const double v = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
    out.push_back(std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(v)), lo, hi));
  }
  out.front() = lo;
  out.back() = hi;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SweepEntry> subsample_sweep(const PointCloud& cloud, const std::vector<std::size_t>& sizes,
                                        std::uint64_t seed, const DimensionOptions& options, unsigned threads) {
  for (std::size_t s : sizes) {
    if (s < 1 || s > cloud.size()) {
      throw Error(Errc::bad_size, "sweep size " + std::to_string(s) + " exceeds the cloud of " +
                                      std::to_string(cloud.size()) + " points");
    }
  }
  std::vector<SweepEntry> out(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t i) {
    const PointCloud sub = subsample(cloud, sizes[i], SplitMix64::stream(seed, sizes[i]).next());
    DimensionOptions per_entry = options;
    per_entry.window_high.reset();
    out[i] = {sizes[i], estimate_cloud_dimension(sub, per_entry, 1).estimate};
  });
  return out;
}

}  // namespace alphamag
