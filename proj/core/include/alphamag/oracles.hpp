#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "alphamag/persistent_magnitude.hpp"

namespace alphamag {

/// Disjoint closed intervals [lo, hi] in increasing order.
struct IntervalUnion {
  std::vector<std::pair<double, double>> intervals;

  /// Throws BadConfig when empty, degenerate, overlapping or unordered.
  void validate_shape() const;
  /// validate_shape() plus containment in [0, 1/2], which the closed form needs.
  void validate() const;
  double total_length() const;
};

/// |t[a, b]|_alpha = 1 + t (b - a) / 2. Throws BadInterval unless a < b.
double oracle_interval(double a, double b, double t);

/// 1 + sum_i t l_i / 2 + sum_j (1 - exp(-t g_j / 2)).
double oracle_union_intervals(const IntervalUnion& cfg, double t);

/// Middle-thirds Cantor set at t = 3^t_power.
double oracle_cantor(unsigned t_power);

/// Series value |C|_alpha together with the bound on the discarded tail.
struct CantorSeries {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};
CantorSeries cantor_series();

/// pi t + exp(-t).
double oracle_circle(double t);

/// Alpha magnitude of the (n+1)^2 lattice {j/n, k/n} at scale t.
double oracle_grid_square(unsigned n, double t);

enum class OracleKind { interval, circle, cantor, finite };

/// Alpha magnitude dimension: 1, 1, log 2 / log 3, 0.
double oracle_dimension(OracleKind kind);
/// Accepts "interval", "circle", "cantor", "finite"; throws BadConfig.
double oracle_dimension(std::string_view kind);

MagnitudeFunction circle_function();
MagnitudeFunction interval_function(double a, double b);
MagnitudeFunction union_intervals_function(IntervalUnion cfg);
MagnitudeFunction grid_square_function(unsigned n);

}  // namespace alphamag
