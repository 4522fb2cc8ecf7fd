#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "alphamag/delaunay.hpp"
#include "alphamag/metric.hpp"

namespace alphamag {

enum class ComplexKind { alpha, cech, rips };

/// A simplicial complex whose simplices carry the radius at which they enter.
///
/// Filtration values are ball RADII, the convention in which every closed
/// form in this library is written. Libraries that report squared radii
/// (CGAL, GUDHI alpha complexes) must be square-rooted before comparison.
/// Vertex tuples are stored flat; each simplex's vertices are strictly
/// increasing.
class FilteredComplex {
 public:
  FilteredComplex(ComplexKind kind, int ambient_dim) : kind_(kind), ambient_dim_(ambient_dim) {}

  ComplexKind kind() const noexcept { return kind_; }
  int ambient_dim() const noexcept { return ambient_dim_; }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const VertexId> simplex(std::size_t i) const noexcept {
    return {vertices_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  int dimension(std::size_t i) const noexcept { return static_cast<int>(offsets_[i + 1] - offsets_[i]) - 1; }
  double value(std::size_t i) const noexcept { return values_[i]; }
  int max_dimension() const noexcept;

  /// Appends a simplex; `vertices` must already be strictly increasing.
  void add(std::span<const VertexId> vertices, double value);
  void reserve(std::size_t simplices, std::size_t vertex_slots);

  /// Number of simplices of each dimension.
  std::vector<std::size_t> counts_by_dimension() const;

 private:
  ComplexKind kind_;
  int ambient_dim_;
  std::vector<VertexId> vertices_;
  std::vector<std::size_t> offsets_{0};
  std::vector<double> values_;
};

/// Outcome of check_complex; `first_violation` indexes the offending simplex.
struct ComplexDiagnostics {
  bool closed = true;
  bool monotone = true;
  std::size_t first_violation = 0;
};

/// Verifies closure (every face present) and monotonicity of values.
ComplexDiagnostics check_complex(const FilteredComplex& complex);

/// Alpha complex of points on a line: vertices at 0, consecutive sorted
/// points joined at half their gap.
FilteredComplex build_alpha_1d(const PointCloud& cloud);

/// Alpha filtration on a Delaunay triangulation: triangles at their
/// circumradius; an edge at half its length when no triangle vertex lies
/// strictly inside its diametric disk (Gabriel), otherwise at the smallest
/// value of its incident triangles; vertices at 0.
FilteredComplex alpha_filtration_2d(const Triangulation& triangulation);

/// Dispatches to build_alpha_1d or delaunay_2d + alpha_filtration_2d.
FilteredComplex build_alpha(const PointCloud& cloud);

inline constexpr std::size_t kCechMaxPoints = 12;
inline constexpr std::size_t kRipsFullMaxPoints = 20;
inline constexpr std::size_t kRipsMaxSimplices = std::size_t{1} << 21;

/// Cech complex truncated at `max_dim`, each simplex at the radius of the
/// minimal enclosing ball of its vertices. Throws TooLarge above 12 points.
FilteredComplex build_cech(const PointCloud& cloud, int max_dim);

/// Vietoris-Rips complex truncated at `max_dim`, each simplex at its
/// diameter. Throws TooLarge for more than 20 points when the full complex
/// is requested, or when the simplex count would exceed kRipsMaxSimplices.
FilteredComplex build_rips(const DistanceMatrix& d, int max_dim);

/// Debug dump: rows `dim,v0,v1,v2,filtration` (missing vertices left blank).
void write_complex_csv(std::ostream& out, const FilteredComplex& complex);

namespace geometry {
/// Radius of the circle through three points (infinite when collinear).
/// The vertex order is canonicalised so equal inputs give identical bits.
double circumradius(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                    VertexId ia, VertexId ib, VertexId ic);
/// Radius of the smallest disk enclosing the given points of a cloud.
double min_enclosing_radius(const PointCloud& cloud, std::span<const VertexId> vertices);
}  // namespace geometry

}  // namespace alphamag
