#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "alphamag/complex.hpp"

namespace alphamag {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Half-open interval [birth, death) in homology degree `degree`.
struct Interval {
  int degree = 0;
  double birth = 0.0;
  double death = kInfinity;

  bool essential() const noexcept { return death == kInfinity; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Multiset of intervals, kept sorted by (degree, birth, death).
struct Barcode {
  std::vector<Interval> intervals;

  std::size_t size() const noexcept { return intervals.size(); }
  int max_degree() const noexcept;
  std::size_t count(int degree) const noexcept;
  /// Barcode of tX: every endpoint multiplied by t > 0.
  Barcode scaled(double t) const;
  void canonicalize();
  friend bool operator==(const Barcode&, const Barcode&) = default;
};

enum class PersistenceAlgorithm {
  /// Union-find for H0 and, for planar alpha complexes, union-find on the
  /// dual graph for H1; standard reduction otherwise.
  automatic,
  /// Column reduction with clearing, for every degree.
  matrix_reduction,
};

/// Barcode over Z/2 of a filtered complex. Simplices are ordered by
/// (value, dimension, lexicographic vertices); zero-length intervals are
/// dropped. Throws MalformedComplex when a face is missing or enters after
/// one of its cofaces.
Barcode compute_persistence(const FilteredComplex& complex,
                            PersistenceAlgorithm algorithm = PersistenceAlgorithm::automatic);

/// Number of intervals alive at eps (birth <= eps < death) per degree,
/// indexed 0..max_degree.
std::vector<std::size_t> betti_at(const Barcode& barcode, double eps);

/// Rows `degree,birth,death` with the literal `inf` for essential classes.
void write_barcode_csv(std::ostream& out, const Barcode& barcode, const std::string& comment = {});
Barcode read_barcode_csv(std::istream& in);

}  // namespace alphamag
