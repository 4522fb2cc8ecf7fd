// Acceptance criteria 1-10. One line per criterion: PASS, FAIL or WARN.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "alphamag/complex.hpp"
#include "alphamag/magnitude.hpp"
#include "alphamag/oracles.hpp"
#include "alphamag/persistence.hpp"
#include "alphamag/persistent_magnitude.hpp"
#include "alphamag/samplers.hpp"
#include "alphamag/cli.hpp"
#include "brute_force.hpp"
#include "json.hpp"
#include "properties.hpp"

namespace {

using namespace alphamag;
using namespace alphamag::testing;
using nlohmann::json;

enum class Verdict { pass, warn, fail };

struct Outcome {
  Verdict verdict = Verdict::fail;
  std::string detail;
};

Outcome verdict(bool ok, std::string detail) { return {ok ? Verdict::pass : Verdict::fail, std::move(detail)}; }

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

json run_dimension(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"alphamag", "dimension"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) throw std::runtime_error("alphamag dimension exited " + std::to_string(code) + ": " + err.str());
  return json::parse(out.str());
}

std::string window_text(const json& estimate) {
  return "[" + fmt(estimate["window"][0].get<double>(), 4) + ", " + fmt(estimate["window"][1].get<double>(), 4) + "]";
}

Outcome grid_oracle() {
  double worst = 0.0;
  for (std::uint64_t n : {1, 5, 10}) {
    const Barcode b = compute_persistence(build_alpha(sample_grid(n)));
    for (double t : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(persistent_magnitude(b, t) - oracle_grid_square(n, t)));
  }
  return verdict(worst <= 1e-9, "max residual " + fmt(worst, 3));
}

Outcome equilateral_barcode() {
  const double h = std::sqrt(3.0) / 2.0;
  const Barcode got = compute_persistence(build_alpha(make_point_cloud({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}})));
  Barcode want;
  want.intervals = {{0, 0.0, 0.5}, {0, 0.0, 0.5}, {0, 0.0, kInfinity}, {1, 0.5, 1.0 / std::sqrt(3.0)}};
  std::string why;
  // Exact count check first: tolerance-based matching drops nothing here.
  const bool ok = got.size() == 4 && same_barcode(got, want, 1e-12, &why);
  return verdict(ok, ok ? "H0 {[0,inf), [0,0.5) x2}, H1 {[0.5, 0.57735)}" : "barcode differs: " + why);
}

Outcome cantor_dimension() {
  const json r = run_dimension({"--kind", "cantor", "--n", "500000", "--depth", "100", "--seed", "7", "--sweep", "8",
                                "--sweep-min", "10000", "--threads", "0"});
  bool ok = std::abs(r["estimate"]["slope"].get<double>() - 0.6309) <= 0.004;
  double lo = r["estimate"]["slope"], hi = lo;
  const json& sweep = r["sweep"];
  for (const auto& e : sweep) {
    const double s = e["slope"];
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    ok = ok && std::abs(s - 0.6309) <= 0.004;
  }
  const json& first = sweep.front();
  const double first_slope = first["slope"];
  ok = ok && first["size"] == 10000 && std::abs(first_slope - 0.6308) <= 0.004;
  return verdict(ok, std::to_string(sweep.size()) + " sweep sizes; slopes in [" + fmt(lo) + ", " + fmt(hi) +
                         "]; n=10000 slope " + fmt(first_slope) + "; window " + window_text(r["estimate"]));
}

Outcome circle_dimension() {
  const json r = run_dimension({"--kind", "circle", "--n", "200000", "--seed", "1", "--threads", "0"});
  const double s = r["estimate"]["slope"];
  return verdict(std::abs(s - 1.0) <= 0.03,
                 "slope " + fmt(s) + ", r2 " + fmt(r["estimate"]["r2"].get<double>()) + ", window " +
                     window_text(r["estimate"]));
}

Outcome circle_value() {
  const std::size_t n = 10000;
  const double nn = static_cast<double>(n), pi = std::numbers::pi;
  std::vector<double> flat;
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * pi * static_cast<double>(i) / nn;
    flat.push_back(std::cos(angle));
    flat.push_back(std::sin(angle));
  }
  const double err = std::abs(alpha_magnitude(make_point_cloud(2, flat), 1.0) - (pi + std::exp(-1.0)));
  const double bound = std::min(pi * std::max(2.0 * std::sin(pi / nn), pi - nn * std::sin(pi / nn)) * 0.75, 0.01);
  return verdict(err < bound, "error " + fmt(err, 3) + " < bound " + fmt(bound, 3));
}

Outcome feigenbaum_dimension() {
  const json r = run_dimension({"--kind", "feigenbaum", "--n", "100000", "--seed", "1", "--threads", "0"});
  const double s = r["estimate"]["slope"];
  const std::string detail = "slope " + fmt(s) + ", window " + window_text(r["estimate"]) + " (natural log of t)";
  if (std::abs(s - 0.497) <= 0.03) return {Verdict::pass, detail};
  if (s >= 0.45 && s <= 0.55) return {Verdict::warn, detail};
  return {Verdict::fail, detail};
}

Outcome rips_alpha() {
  Rng rng(7001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const PointCloud a = random_cloud(rng, 1, n, -5.0, 5.0);
    worst = std::max(worst, std::abs(alpha_magnitude(a, 1.0) - rips_magnitude(distance_matrix(scale(a, 0.5)), 1.0)));
  }
  return verdict(worst <= 1e-10, "200 sets, max difference " + fmt(worst, 3));
}

Outcome cech_alpha() {
  Rng rng(7002);
  std::size_t mismatches = 0;
  double worst = 0.0;
  std::string first;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
    const PointCloud x = random_cloud(rng, 2, n);
    const Barcode cech = compute_persistence(build_cech(x, static_cast<int>(n) - 1));
    const Barcode alpha = compute_persistence(build_alpha(x));
    std::string why;
    if (!same_barcode(cech, alpha, 1e-9, &why)) {
      if (mismatches++ == 0) first = why;
    }
    for (double t : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, std::abs(persistent_magnitude(cech, t) - persistent_magnitude(alpha, t)));
    }
  }
  return verdict(mismatches == 0 && worst <= 1e-9, "100 clouds, " + std::to_string(mismatches) +
                                                       " barcode mismatches, max magnitude difference " + fmt(worst, 3) +
                                                       (first.empty() ? "" : "; " + first));
}

Outcome classical_magnitude() {
  const DistanceFixture k32 = k32_fixture();
  double worst = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double e = std::exp(-t);
    const double closed = (5.0 - 7.0 * e) / ((1.0 + e) * (1.0 - 2.0 * e * e));
    worst = std::max(worst, std::abs(magnitude(k32.distances.scaled(t)) - closed));
  }
  const double log_root2 = std::log(std::sqrt(2.0));
  bool singular_ok = k32.singular_t.size() == 1 && std::abs(k32.singular_t[0] - log_root2) <= 1e-6;
  for (double t : k32.singular_t) {
    singular_ok = singular_ok && !try_weighting(similarity_matrix(k32.distances.scaled(t))).has_value();
  }
  const auto grid = magnitude_function(k32.distances, {0.2, 0.3, log_root2, 0.4, 0.5});
  std::size_t singular_rows = 0;
  for (const auto& s : grid) singular_rows += s.singular() ? 1 : 0;
  singular_ok = singular_ok && singular_rows == 1;

  Rng rng(7003);
  double two_point = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double d = uniform(rng, 0.01, 10.0);
    Eigen::MatrixXd m(2, 2);
    m << 0.0, d, d, 0.0;
    two_point = std::max(two_point, std::abs(magnitude(DistanceMatrix(m)) - 2.0 / (1.0 + std::exp(-d))));
  }
  return verdict(worst <= 1e-9 && singular_ok && two_point <= 1e-9,
                 "K3,2 residual " + fmt(worst, 3) + "; singular at log sqrt2: " + (singular_ok ? "yes" : "no") +
                     "; two-point residual " + fmt(two_point, 3));
}

Outcome property_suites() {
  std::size_t cases = 0, failed = 0;
  std::string failing;
  std::uint64_t seed = 90001;
  for (const auto& p : all_properties()) {
    const PropertyResult r = p.run(seed++);
    cases += r.cases;
    if (!r.ok()) {
      ++failed;
      failing += "; " + p.name + ": " + r.first_failure;
    }
  }
  return verdict(failed == 0, std::to_string(all_properties().size()) + " properties, " + std::to_string(cases) +
                                  " cases, " + std::to_string(failed) + " failing" + failing);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"grid oracle exact", grid_oracle},
      {"equilateral triple barcode", equilateral_barcode},
      {"Cantor dimension", cantor_dimension},
      {"circle dimension", circle_dimension},
      {"circle value convergence", circle_value},
      {"Feigenbaum dimension", feigenbaum_dimension},
      {"Rips-alpha lemma", rips_alpha},
      {"Cech-alpha equality", cech_alpha},
      {"classical magnitude", classical_magnitude},
      {"property suites", property_suites},
  };
  // Wall-clock limits; 0 means none.
  const double limits[] = {1.0, 0.0, 300.0, 600.0, 0.0, 0.0, 30.0, 0.0, 0.0, 0.0};

  bool any_fail = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Verdict::fail, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[i] > 0.0 && seconds > limits[i] && o.verdict != Verdict::fail) {
      o.verdict = Verdict::fail;
      o.detail += "; exceeded " + fmt(limits[i]) + " s";
    }
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::warn ? "WARN" : "FAIL";
    std::printf("%s %zu %s: %s (%.2f s)\n", tag, i + 1, criteria[i].first.c_str(), o.detail.c_str(), seconds);
    std::fflush(stdout);
    any_fail = any_fail || o.verdict == Verdict::fail;
  }
  return any_fail ? 1 : 0;
}
