#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphamag/metric.hpp"
#include "alphamag/persistence.hpp"

namespace alphamag {

/// Persistent magnitude of a barcode at scale t > 0:
///   sum_k sum_i (-1)^k (exp(-a t) - exp(-b t)),   exp(-inf t) := 0.
/// Terms are accumulated in canonical barcode order (degree, then birth)
/// with Neumaier compensation. Throws InvalidScale for t <= 0.
double persistent_magnitude(const Barcode& barcode, double t);

/// |tX|_alpha: alpha barcode of X evaluated at t (endpoints scale linearly).
double alpha_magnitude(const PointCloud& cloud, double t);

/// Closed form for points on a line: n + 1 - sum_k exp(-t gap_k / 2).
/// Throws NotSorted unless the input is strictly increasing.
double alpha_magnitude_1d(std::span<const double> sorted_points, double t);

/// |tX|_Rips from the full Vietoris-Rips barcode; TooLarge above 20 points.
double rips_magnitude(const DistanceMatrix& d, double t);

/// |tX|_Cech from the full brute-force Cech barcode; TooLarge above 12 points.
double cech_magnitude(const PointCloud& cloud, double t);

/// Evaluable t -> |tM|, backed by a barcode or by a closed-form expression.
class MagnitudeFunction {
 public:
  static MagnitudeFunction from_barcode(Barcode barcode);
  static MagnitudeFunction from_closed_form(std::string description, std::function<double(double)> evaluator);

  double operator()(double t) const;
  const std::string& description() const noexcept { return description_; }
  const std::optional<Barcode>& barcode() const noexcept { return barcode_; }

 private:
  std::string description_;
  std::optional<Barcode> barcode_;
  std::function<double(double)> evaluator_;
};

struct CurvePoint {
  double t = 0.0;
  double magnitude = 0.0;
};

struct MagnitudeCurve {
  std::vector<CurvePoint> points;
  /// Diagnostic only: whether the sampled values never decrease.
  bool monotone_nondecreasing = true;
  std::size_t intervals = 0;  ///< size of the barcode the curve was evaluated from
};

inline constexpr double kDefaultPointsPerDecade = 200.0;

/// Log-spaced grid from t_min to t_max inclusive with the given density per
/// factor of ten. t_min == t_max yields a single point. Throws BadConfig.
std::vector<double> log_grid(double t_min, double t_max, double points_per_decade = kDefaultPointsPerDecade);

/// Evaluates a barcode over a grid; evaluations run in parallel.
MagnitudeCurve magnitude_curve(const Barcode& barcode, const std::vector<double>& t_grid, unsigned threads = 1);

/// Alpha magnitude function of a cloud; the barcode is computed once.
MagnitudeCurve magnitude_curve(const PointCloud& cloud, const std::vector<double>& t_grid, unsigned threads = 1);

/// Columns `t,magnitude,log_t,log_magnitude`.
void write_curve_csv(std::ostream& out, const MagnitudeCurve& curve, const std::string& comment = {});

}  // namespace alphamag
