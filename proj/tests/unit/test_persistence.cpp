#include <cmath>
#include <sstream>

#include "alphamag/complex.hpp"
#include "alphamag/persistence.hpp"
#include "alphamag/samplers.hpp"
#include "brute_force.hpp"
#include "checks.hpp"
#include "doctest.h"

using namespace alphamag;

namespace {

Barcode triangle_barcode(PersistenceAlgorithm algorithm = PersistenceAlgorithm::automatic) {
  return compute_persistence(build_alpha(make_point_cloud({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}})),
                             algorithm);
}

}  // namespace

TEST_CASE("equilateral triple barcode") {
  for (auto algorithm : {PersistenceAlgorithm::automatic, PersistenceAlgorithm::matrix_reduction}) {
    const Barcode b = triangle_barcode(algorithm);
    REQUIRE(b.size() == 4);
    CHECK(b.count(0) == 3);
    CHECK(b.count(1) == 1);
    Barcode want;
    want.intervals = {{0, 0.0, 0.5}, {0, 0.0, 0.5}, {0, 0.0, kInfinity}, {1, 0.5, 1.0 / std::sqrt(3.0)}};
    std::string why;
    CHECK_MESSAGE(alphamag::testing::same_barcode(b, want, 1e-12, &why), why);
  }
}

TEST_CASE("single vertex") {
  const Barcode b = compute_persistence(build_alpha(make_point_cloud_1d({3.0})));
  REQUIRE(b.size() == 1);
  CHECK(b.intervals[0] == Interval{0, 0.0, kInfinity});
}

TEST_CASE("betti numbers of the triangle barcode") {
  const Barcode b = triangle_barcode();
  CHECK(betti_at(b, 0.3) == std::vector<std::size_t>{3, 0});
  CHECK(betti_at(b, 0.6) == std::vector<std::size_t>{1, 0});
  CHECK(betti_at(b, 0.55) == std::vector<std::size_t>{1, 1});
  const auto empty = betti_at(Barcode{}, 1.0);
  for (std::size_t v : empty) CHECK(v == 0);
}

TEST_CASE("betti numbers match brute-force ranks on small complexes") {
  alphamag::testing::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    const FilteredComplex c = build_rips(distance_matrix(alphamag::testing::random_cloud(rng, 2, n)), 3);
    const Barcode b = compute_persistence(c);
    for (int k = 0; k < 5; ++k) {
      const double eps = alphamag::testing::uniform(rng, 0.0, 1.2);
      auto got = betti_at(b, eps);
      auto want = alphamag::testing::gf2_betti(c, eps);
      got.resize(4);
      want.resize(4);
      CHECK(got == want);
    }
  }
}

TEST_CASE("H0 structure") {
  alphamag::testing::Rng rng(32);
  const PointCloud x = alphamag::testing::random_cloud(rng, 2, 500);
  const Barcode b = compute_persistence(build_alpha(x));
  CHECK(b.count(0) == 500);
  std::size_t essential = 0;
  for (const auto& iv : b.intervals) {
    CHECK(iv.birth < iv.death);
    if (iv.essential()) ++essential;
  }
  CHECK(essential == 1);
  CHECK(b.max_degree() == 1);
}

TEST_CASE("fast paths agree with the reduction") {
  alphamag::testing::Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const FilteredComplex c = build_alpha(alphamag::testing::random_cloud(rng, 2, 2000));
    CHECK(compute_persistence(c, PersistenceAlgorithm::automatic) ==
          compute_persistence(c, PersistenceAlgorithm::matrix_reduction));
  }
  const FilteredComplex grid = build_alpha(sample_grid(20));
  CHECK(compute_persistence(grid, PersistenceAlgorithm::automatic) ==
        compute_persistence(grid, PersistenceAlgorithm::matrix_reduction));
}

TEST_CASE("insertion order of simplices does not matter") {
  // A square with both diagonals' triangles born together: all ties.
  const std::vector<std::vector<VertexId>> simplices = {{0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {0, 3},
                                                        {0, 2}, {0, 1, 2}, {0, 2, 3}};
  const std::vector<double> values = {0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2};
  FilteredComplex forward(ComplexKind::rips, 0), backward(ComplexKind::rips, 0);
  for (std::size_t i = 0; i < simplices.size(); ++i) forward.add(simplices[i], values[i]);
  for (std::size_t i = simplices.size(); i-- > 0;) backward.add(simplices[i], values[i]);
  const Barcode a = compute_persistence(forward), b = compute_persistence(backward);
  CHECK(a == b);
  CHECK(a.count(0) == 4);
  CHECK(a.count(1) == 1);
}

TEST_CASE("malformed complexes are rejected") {
  FilteredComplex missing(ComplexKind::rips, 0);
  const std::vector<VertexId> v0{0}, e{0, 1};
  missing.add(v0, 0.0);
  missing.add(e, 1.0);
  CHECK(error_code([&] { compute_persistence(missing); }) == Errc::malformed_complex);
}

TEST_CASE("scaling and CSV round trip") {
  const Barcode b = triangle_barcode();
  const Barcode s = b.scaled(2.0);
  REQUIRE(s.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(s.intervals[i].birth == 2.0 * b.intervals[i].birth);
    CHECK(s.intervals[i].death == 2.0 * b.intervals[i].death);
  }
  std::ostringstream out;
  write_barcode_csv(out, b);
  CHECK(out.str().find("inf") != std::string::npos);
  std::istringstream in(out.str());
  CHECK(read_barcode_csv(in) == b);
}
