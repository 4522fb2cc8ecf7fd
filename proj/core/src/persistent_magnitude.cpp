#include "alphamag/persistent_magnitude.hpp"

#include <cmath>
#include <ostream>

#include "alphamag/complex.hpp"
#include "alphamag/error.hpp"
#include "alphamag/parallel.hpp"
#include "format.hpp"

namespace alphamag {

namespace {

struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + compensation; }
};

void require_positive(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(Errc::invalid_scale, "t must be a positive real");
}

// exp(-a t) - exp(-b t), computed without cancellation for short bars.
double bar_term(double birth, double death, double t) {
  const double head = std::exp(-birth * t);
  if (death == kInfinity) return head;
  return -head * std::expm1(-(death - birth) * t);
}

}  // namespace

double persistent_magnitude(const Barcode& barcode, double t) {
  require_positive(t);
  NeumaierSum acc;
  for (const Interval& iv : barcode.intervals) {
    const double term = bar_term(iv.birth, iv.death, t);
    acc.add(iv.degree % 2 == 0 ? term : -term);
  }
  return acc.value();
}

double alpha_magnitude(const PointCloud& cloud, double t) {
  require_positive(t);
  return persistent_magnitude(compute_persistence(build_alpha(cloud)), t);
}

double alpha_magnitude_1d(std::span<const double> sorted_points, double t) {
  require_positive(t);
  if (sorted_points.empty()) throw Error(Errc::empty_cloud, "no points");
  NeumaierSum acc;
  acc.add(1.0);
  for (std::size_t i = 1; i < sorted_points.size(); ++i) {
    const double gap = sorted_points[i] - sorted_points[i - 1];
    if (!(gap > 0.0)) throw Error(Errc::not_sorted, "points must be strictly increasing");
    acc.add(-std::expm1(-(0.5 * gap) * t));
  }
  return acc.value();
}

double rips_magnitude(const DistanceMatrix& d, double t) {
  require_positive(t);
  if (d.size() > kRipsFullMaxPoints) {
    throw Error(Errc::too_large, "Rips magnitude needs the full complex; limited to " +
                                     std::to_string(kRipsFullMaxPoints) + " points");
  }
  const int top = static_cast<int>(d.size()) - 1;
  return persistent_magnitude(compute_persistence(build_rips(d, std::max(top, 0))), t);
}

double cech_magnitude(const PointCloud& cloud, double t) {
  require_positive(t);
  const int top = static_cast<int>(cloud.size()) - 1;
  return persistent_magnitude(compute_persistence(build_cech(cloud, std::max(top, 0))), t);
}

MagnitudeFunction MagnitudeFunction::from_barcode(Barcode barcode) {
  MagnitudeFunction f;
  f.description_ = "barcode(" + std::to_string(barcode.size()) + " intervals)";
  f.barcode_ = std::move(barcode);
  return f;
}

MagnitudeFunction MagnitudeFunction::from_closed_form(std::string description,
                                                      std::function<double(double)> evaluator) {
  MagnitudeFunction f;
  f.description_ = std::move(description);
  f.evaluator_ = std::move(evaluator);
  return f;
}

double MagnitudeFunction::operator()(double t) const {
  require_positive(t);
  if (barcode_) return persistent_magnitude(*barcode_, t);
  return evaluator_(t);
}

std::vector<double> log_grid(double t_min, double t_max, double points_per_decade) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || !std::isfinite(t_max)) {
    throw Error(Errc::bad_config, "grid needs 0 < t_min <= t_max");
  }
  if (!(points_per_decade > 0.0)) throw Error(Errc::bad_config, "points per decade must be positive");
  if (t_max == t_min) return {t_min};
  const double lo = std::log10(t_min);
  const double hi = std::log10(t_max);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) * points_per_decade - 1e-9)));
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    grid[k] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps));
  }
  grid.front() = t_min;
  grid.back() = t_max;
  return grid;
}

MagnitudeCurve magnitude_curve(const Barcode& barcode, const std::vector<double>& t_grid, unsigned threads) {
  for (double t : t_grid) require_positive(t);
  MagnitudeCurve curve;
  curve.intervals = barcode.size();
  curve.points.resize(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t i) {
    curve.points[i] = {t_grid[i], persistent_magnitude(barcode, t_grid[i])};
  });
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& prev = curve.points[i - 1];
    const auto& cur = curve.points[i];
    if (cur.t > prev.t && cur.magnitude < prev.magnitude - 1e-12 * std::abs(prev.magnitude)) {
      curve.monotone_nondecreasing = false;
    }
  }
  return curve;
}

MagnitudeCurve magnitude_curve(const PointCloud& cloud, const std::vector<double>& t_grid, unsigned threads) {
  return magnitude_curve(compute_persistence(build_alpha(cloud)), t_grid, threads);
}

void write_curve_csv(std::ostream& out, const MagnitudeCurve& curve, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "t,magnitude,log_t,log_magnitude\n";
  std::string row;
  for (const auto& p : curve.points) {
    row.clear();
    detail::append_real(row, p.t);
    row.push_back(',');
    detail::append_real(row, p.magnitude);
    row.push_back(',');
    detail::append_real(row, std::log(p.t));
    row.push_back(',');
    detail::append_real(row, std::log(p.magnitude));
    row.push_back('\n');
    out << row;
  }
}

}  // namespace alphamag
