#include "alphamag/oracles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "alphamag/error.hpp"

namespace alphamag {

namespace {

void require_positive(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(Errc::invalid_scale, "t must be a positive real");
}

}  // namespace

void IntervalUnion::validate_shape() const {
  if (intervals.empty()) throw Error(Errc::bad_config, "no intervals");
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto [lo, hi] = intervals[i];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw Error(Errc::bad_config, "interval endpoints must be finite with lo < hi");
    }
    if (i > 0 && !(lo > intervals[i - 1].second)) throw Error(Errc::bad_config, "intervals must be disjoint and ordered");
  }
}

void IntervalUnion::validate() const {
  validate_shape();
  if (intervals.front().first < 0.0 || intervals.back().second > 0.5) {
    throw Error(Errc::bad_config, "intervals must lie inside [0, 1/2]");
  }
}

double IntervalUnion::total_length() const {
  double total = 0.0;
  for (const auto& [lo, hi] : intervals) total += hi - lo;
  return total;
}

double oracle_interval(double a, double b, double t) {
  require_positive(t);
  if (!(a < b)) throw Error(Errc::bad_interval, "interval needs a < b");
  return 1.0 + t * (b - a) / 2.0;
}

double oracle_union_intervals(const IntervalUnion& cfg, double t) {
  require_positive(t);
  cfg.validate();
  double value = 1.0;
  for (const auto& [lo, hi] : cfg.intervals) value += t * (hi - lo) / 2.0;
  for (std::size_t j = 1; j < cfg.intervals.size(); ++j) {
    const double gap = cfg.intervals[j].first - cfg.intervals[j - 1].second;
    value += -std::expm1(-t * gap / 2.0);
  }
  return value;
}

CantorSeries cantor_series() {
  // Terms 2^j (1 - exp(-3^{-(j+1)} / 2)); consecutive ratios decrease to 2/3.
  CantorSeries s;
  double sum = 0.0;
  double power2 = 1.0;
  double third = 1.0 / 3.0;
  double previous = 0.0;
  for (std::size_t j = 0; j < 400; ++j) {
    const double term = -power2 * std::expm1(-0.5 * third);
    sum += term;
    ++s.terms;
    if (j > 0 && term < 1e-16 * (1.0 + sum)) {
      const double ratio = term / previous;
      s.tail_bound = term * ratio / (1.0 - ratio);
      break;
    }
    previous = term;
    power2 *= 2.0;
    third /= 3.0;
  }
  s.value = 1.0 + sum;
  return s;
}

double oracle_cantor(unsigned t_power) {
  // |3^n C| = 2^n |C| - sum_{k<n} 2^{n-k-1} exp(-3^k / 2)
  double value = cantor_series().value;
  for (unsigned k = 0; k < t_power; ++k) {
    value = 2.0 * value - std::exp(-0.5 * std::pow(3.0, static_cast<double>(k)));
  }
  return value;
}

double oracle_circle(double t) {
  require_positive(t);
  return std::numbers::pi * t + std::exp(-t);
}

double oracle_grid_square(unsigned n, double t) {
  require_positive(t);
  if (n == 0) throw Error(Errc::bad_config, "grid needs n >= 1");
  const double nn = static_cast<double>(n);
  const double edge = t / (2.0 * nn);
  const double diag = t / (std::numbers::sqrt2 * nn);
  const double h0 = ((nn + 1.0) * (nn + 1.0) - 1.0) * -std::expm1(-edge);
  const double h1 = nn * nn * std::exp(-edge) * -std::expm1(-(diag - edge));
  return 1.0 + h0 - h1;
}

double oracle_dimension(OracleKind kind) {
  switch (kind) {
    case OracleKind::interval:
    case OracleKind::circle:
      return 1.0;
    case OracleKind::cantor:
      return std::log(2.0) / std::log(3.0);
    case OracleKind::finite:
      return 0.0;
  }
  throw Error(Errc::bad_config, "unknown oracle kind");
}

double oracle_dimension(std::string_view kind) {
  if (kind == "interval") return oracle_dimension(OracleKind::interval);
  if (kind == "circle") return oracle_dimension(OracleKind::circle);
  if (kind == "cantor") return oracle_dimension(OracleKind::cantor);
  if (kind == "finite") return oracle_dimension(OracleKind::finite);
  throw Error(Errc::bad_config, "unknown oracle kind '" + std::string(kind) + "'");
}

MagnitudeFunction circle_function() {
  return MagnitudeFunction::from_closed_form("circle", [](double t) { return oracle_circle(t); });
}

MagnitudeFunction interval_function(double a, double b) {
  oracle_interval(a, b, 1.0);
  return MagnitudeFunction::from_closed_form("interval", [a, b](double t) { return oracle_interval(a, b, t); });
}

MagnitudeFunction union_intervals_function(IntervalUnion cfg) {
  cfg.validate();
  return MagnitudeFunction::from_closed_form(
      "union_of_intervals", [cfg = std::move(cfg)](double t) { return oracle_union_intervals(cfg, t); });
}

MagnitudeFunction grid_square_function(unsigned n) {
  if (n == 0) throw Error(Errc::bad_config, "grid needs n >= 1");
  return MagnitudeFunction::from_closed_form("grid_square", [n](double t) { return oracle_grid_square(n, t); });
}

}  // namespace alphamag
