#include "alphamag/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alphamag/complex.hpp"
#include "alphamag/dimension.hpp"
#include "alphamag/error.hpp"
#include "alphamag/magnitude.hpp"
#include "alphamag/metric.hpp"
#include "alphamag/oracles.hpp"
#include "alphamag/parallel.hpp"
#include "alphamag/persistence.hpp"
#include "alphamag/persistent_magnitude.hpp"
#include "alphamag/samplers.hpp"

namespace alphamag::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;

  std::string kind;
  std::uint64_t n = 10000;
  unsigned depth = kDefaultCantorDepth;
  std::uint64_t seed = 1;
  double a = kFeigenbaumA;
  std::uint64_t burn_in = kDefaultBurnIn;
  std::optional<double> x0;
  std::string intervals = "0,0.1,0.3,0.4";

  double t_min = 0.1;
  double t_max = 10.0;
  double per_decade = kDefaultPointsPerDecade;
  std::optional<double> window_low;
  std::optional<double> window_high;

  bool force = false;
  std::string fixture;

  std::size_t sweep = 0;
  std::size_t sweep_min = 10000;
  bool convergence = false;
  std::uint64_t convergence_max = kConvergenceCap;
};

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json config_json(const RunConfig& c) {
  json j = {{"subcommand", c.subcommand}, {"format", c.format}, {"threads", c.threads}, {"seed", c.seed}};
  if (!c.input.empty()) j["input"] = c.input;
  if (!c.out.empty()) j["out"] = c.out;
  const bool samples = c.subcommand == "sample" || c.subcommand == "dimension";
  if (samples && !c.kind.empty()) {
    j["kind"] = c.kind;
    j["n"] = c.n;
    if (c.kind == "cantor") j["depth"] = c.depth;
    if (c.kind == "feigenbaum") {
      j["a"] = c.a;
      j["burn_in"] = c.burn_in;
      j["x0"] = optional_json(c.x0);
    }
    if (c.kind == "union_intervals") j["intervals"] = c.intervals;
  }
  if (c.subcommand == "alpha-mag" || c.subcommand == "magnitude") {
    j["t_min"] = c.t_min;
    j["t_max"] = c.t_max;
    j["per_decade"] = c.per_decade;
  }
  if (c.subcommand == "magnitude") {
    j["force"] = c.force;
    if (!c.fixture.empty()) j["fixture"] = c.fixture;
  }
  if (c.subcommand == "dimension") {
    j["per_decade"] = c.per_decade;
    j["window_low"] = optional_json(c.window_low);
    j["window_high"] = optional_json(c.window_high);
    j["sweep"] = c.sweep;
    j["sweep_min"] = c.sweep_min;
    j["convergence"] = c.convergence;
    j["convergence_max"] = c.convergence_max;
  }
  return j;
}

std::string config_comment(const RunConfig& c) { return "config: " + config_json(c).dump(); }

// --out names a file; without it results go to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw UsageError("cannot open output file '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string sibling_path(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  p.replace_extension(suffix);
  return p.string();
}

IntervalUnion parse_intervals(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--intervals expects comma-separated reals, got '" + text + "'");
    }
  }
  if (values.empty() || values.size() % 2 != 0) throw UsageError("--intervals needs lo,hi pairs");
  IntervalUnion u;
  for (std::size_t i = 0; i < values.size(); i += 2) u.intervals.emplace_back(values[i], values[i + 1]);
  return u;
}

SamplerSpec sampler_spec(const RunConfig& c) {
  SamplerSpec s;
  s.kind = parse_sampler_kind(c.kind);
  s.n = c.n;
  s.seed = c.seed;
  s.depth = c.depth;
  s.a = c.a;
  s.burn_in = c.burn_in;
  s.x0 = c.x0;
  if (s.kind == SamplerKind::union_intervals) s.intervals = parse_intervals(c.intervals);
  s.validate();
  return s;
}

json spec_json(const SamplerSpec& s) {
  json j = {{"kind", std::string(to_string(s.kind))}, {"n", s.n}, {"seed", s.seed}};
  switch (s.kind) {
    case SamplerKind::cantor:
      j["depth"] = s.depth;
      break;
    case SamplerKind::feigenbaum:
      j["a"] = s.a;
      j["burn_in"] = s.burn_in;
      j["x0"] = feigenbaum_x0(s);
      break;
    case SamplerKind::union_intervals: {
      json list = json::array();
      for (const auto& [lo, hi] : s.intervals.intervals) list.push_back({lo, hi});
      j["intervals"] = list;
      break;
    }
    default:
      break;
  }
  return j;
}

std::string real_text(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json barcode_json(const Barcode& b) {
  json list = json::array();
  for (const auto& iv : b.intervals) {
    list.push_back({{"degree", iv.degree}, {"birth", iv.birth}, {"death", real_or_null(iv.death)}});
  }
  return list;
}

json points_json(const PointCloud& cloud) {
  json list = json::array();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    list.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return list;
}

std::string counts_text(const FilteredComplex& complex) {
  const auto counts = complex.counts_by_dimension();
  std::string s;
  for (std::size_t d = 0; d < counts.size(); ++d) {
    if (d) s += ", ";
    s += std::to_string(counts[d]) + " " + (d == 0 ? "vertices" : d == 1 ? "edges" : "triangles");
  }
  return s;
}

Barcode alpha_barcode(const PointCloud& cloud, std::ostream& err) {
  err << "alpha complex of " << cloud.size() << " points\n";
  const FilteredComplex complex = build_alpha(cloud);
  err << "  " << counts_text(complex) << '\n';
  Barcode barcode = compute_persistence(complex);
  err << "  " << barcode.size() << " intervals\n";
  return barcode;
}

int cmd_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const SamplerSpec spec = sampler_spec(c);
  const PointCloud cloud = sample(spec, c.threads);
  err << "sampled " << cloud.size() << " points (" << cloud.duplicates_removed() << " duplicates removed)\n";
  json meta = {{"config", config_json(c)},
               {"spec", spec_json(spec)},
               {"points", cloud.size()},
               {"duplicates_removed", cloud.duplicates_removed()}};
  Sink sink(c.out, out);
  if (c.format == "json") {
    meta["coordinates"] = points_json(cloud);
    *sink << meta.dump() << '\n';
    return 0;
  }
  write_point_csv(*sink, cloud, config_comment(c));
  if (!c.out.empty()) {
    std::ofstream side(sibling_path(c.out, ".json"));
    side << meta.dump(2) << '\n';
  }
  return 0;
}

int cmd_alpha_mag(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const PointCloud cloud = read_point_csv_file(c.input);
  const auto grid = log_grid(c.t_min, c.t_max, c.per_decade);
  const Barcode barcode = alpha_barcode(cloud, err);
  const MagnitudeCurve curve = magnitude_curve(barcode, grid, c.threads);
  if (!curve.monotone_nondecreasing) err << "note: sampled magnitude values are not monotone\n";
  Sink sink(c.out, out);
  if (c.format == "json") {
    json points = json::array();
    for (const auto& p : curve.points) points.push_back({{"t", p.t}, {"magnitude", p.magnitude}});
    *sink << json{{"config", config_json(c)}, {"curve", points}, {"barcode", barcode_json(barcode)}}.dump() << '\n';
    return 0;
  }
  write_curve_csv(*sink, curve, config_comment(c));
  if (!c.out.empty()) {
    std::ofstream bars(sibling_path(c.out, ".barcode.csv"));
    write_barcode_csv(bars, barcode, config_comment(c));
  }
  return 0;
}

int cmd_magnitude(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.fixture.empty() == c.input.empty()) throw UsageError("magnitude needs exactly one of INPUT or --fixture");
  DistanceMatrix d;
  std::vector<double> grid = log_grid(c.t_min, c.t_max, c.per_decade);
  if (!c.fixture.empty()) {
    DistanceFixture f = fixture_by_name(c.fixture);
    d = f.distances;
    for (double t : f.singular_t) {
      if (t >= c.t_min && t <= c.t_max) grid.push_back(t);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  } else {
    d = distance_matrix(read_point_csv_file(c.input));
  }
  if (d.size() > kMagnitudeSizeCap && !c.force) {
    throw Error(Errc::too_large, std::to_string(d.size()) + " points exceed the dense-solve cap of " +
                                     std::to_string(kMagnitudeSizeCap) +
                                     "; each t costs O(n^3) time and O(n^2) memory, pass --force to run anyway");
  }
  const auto samples = magnitude_function(d, grid, c.force, c.threads);
  const auto singular = std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.singular(); });
  err << samples.size() << " scales, " << singular << " singular\n";
  Sink sink(c.out, out);
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& s : samples) {
      rows.push_back({{"t", s.t}, {"magnitude", s.value ? json(*s.value) : json(nullptr)}, {"singular", s.singular()}});
    }
    *sink << json{{"config", config_json(c)}, {"samples", rows}}.dump() << '\n';
    return 0;
  }
  *sink << "# " << config_comment(c) << "\nt,magnitude\n";
  for (const auto& s : samples) {
    *sink << real_text(s.t) << ',' << (s.value ? real_text(*s.value) : "singular") << '\n';
  }
  return 0;
}

json estimate_json(const DimensionEstimate& e) {
  return {{"slope", e.slope},
          {"intercept", e.intercept},
          {"window", {e.window_low, e.window_high}},
          {"window_log", "natural"},
          {"r2", e.r_squared},
          {"n", e.n_used},
          {"points_in_window", e.points_in_window}};
}

int cmd_dimension(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.kind.empty() == c.input.empty()) throw UsageError("dimension needs exactly one of INPUT or --kind");
  json result = {{"config", config_json(c)}};
  PointCloud cloud;
  DimensionOptions options;
  if (!c.kind.empty()) {
    const SamplerSpec spec = sampler_spec(c);
    result["spec"] = spec_json(spec);
    options = default_dimension_options(spec.kind);
    if (c.convergence) {
      const auto schedule = doubling_schedule(std::min<std::uint64_t>(kConvergenceStart, c.n), c.convergence_max);
      if (schedule.size() < 2) throw UsageError("--convergence-max leaves fewer than two sample sizes");
      const ConvergenceReport report = check_convergence(spec, schedule, kConvergenceThreshold, c.threads);
      json seq = json::array();
      for (const auto& [n, v] : report.sequence) seq.push_back({{"n", n}, {"magnitude_t1", v}});
      result["convergence"] = {{"sequence", seq},
                               {"converged", report.converged},
                               {"final_n", report.final_n},
                               {"threshold", report.threshold},
                               {"last_difference", real_or_null(report.last_difference)}};
      err << "convergence: " << (report.converged ? "reached" : "not reached") << " at n = " << report.final_n
          << '\n';
    } else {
      result["convergence"] = nullptr;
    }
    cloud = sample(spec, c.threads);
    err << "sampled " << cloud.size() << " points (" << cloud.duplicates_removed() << " duplicates removed)\n";
  } else {
    cloud = read_point_csv_file(c.input);
    result["spec"] = nullptr;
    result["convergence"] = nullptr;
  }
  if (c.window_low) options.window_low = *c.window_low;
  if (c.window_high) options.window_high = *c.window_high;
  options.points_per_decade = c.per_decade;

  const double lo = options.window_low;
  const double hi = options.high_for(cloud.size());
  if (!(lo < hi)) {
    throw Error(Errc::too_few_points, "regression window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                          "] is empty for " + std::to_string(cloud.size()) + " points");
  }
  const Barcode barcode = alpha_barcode(cloud, err);
  const MagnitudeCurve curve =
      magnitude_curve(barcode, log_grid(std::exp(lo), std::exp(hi), options.points_per_decade), c.threads);
  const DimensionEstimate estimate = estimate_dimension(loglog_curve(curve), lo, hi, cloud.size());
  err << "slope " << estimate.slope << " over log t in [" << lo << ", " << hi << "]\n";
  result["estimate"] = estimate_json(estimate);

  json sweep = json::array();
  if (c.sweep > 0) {
    const auto sizes = log_spaced_sizes(std::min(c.sweep_min, cloud.size()), cloud.size(), c.sweep);
    err << "sweep over " << sizes.size() << " subsample sizes\n";
    for (const auto& entry : subsample_sweep(cloud, sizes, c.seed, options, c.threads)) {
      json e = estimate_json(entry.estimate);
      e["size"] = entry.size;
      sweep.push_back(e);
    }
  }
  result["sweep"] = sweep;

  if (!c.out.empty()) {
    const std::string curve_path = sibling_path(c.out, ".curve.csv");
    std::ofstream curve_file(curve_path);
    write_curve_csv(curve_file, curve, config_comment(c));
    result["curve_csv_path"] = curve_path;
  } else {
    result["curve_csv_path"] = nullptr;
  }
  Sink sink(c.out, out);
  *sink << result.dump(2) << '\n';
  return 0;
}

struct OracleCase {
  std::string name;
  std::size_t n;
  double t;
  double pipeline;
  double oracle;
  double tolerance;
};

int cmd_oracle_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<OracleCase> cases;
  {
    IntervalUnion unit{{{0.0, 0.5}}};
    const PointCloud cloud = sample_union_intervals(unit, 100000, c.seed, c.threads);
    cases.push_back({"interval", cloud.size(), 1.0, alpha_magnitude(cloud, 1.0), oracle_interval(0.0, 0.5, 1.0), 5e-3});
  }
  {
    const IntervalUnion two = parse_intervals("0,0.1,0.3,0.4");
    const PointCloud cloud = sample_union_intervals(two, 100000, c.seed, c.threads);
    cases.push_back({"union", cloud.size(), 1.0, alpha_magnitude(cloud, 1.0), oracle_union_intervals(two, 1.0), 5e-3});
  }
  {
    const PointCloud cloud = sample_circle(10000, c.seed, c.threads);
    cases.push_back({"circle", cloud.size(), 1.0, alpha_magnitude(cloud, 1.0), oracle_circle(1.0), 0.05});
  }
  {
    const PointCloud cloud = sample_grid(10);
    const Barcode barcode = compute_persistence(build_alpha(cloud));
    for (double t : {0.5, 1.0, 2.0}) {
      cases.push_back({"grid", cloud.size(), t, persistent_magnitude(barcode, t), oracle_grid_square(10, t), 1e-9});
    }
  }
  bool all_pass = true;
  Sink sink(c.out, out);
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& k : cases) {
      const double residual = std::abs(k.pipeline - k.oracle);
      all_pass = all_pass && residual < k.tolerance;
      rows.push_back({{"case", k.name},
                      {"n", k.n},
                      {"t", k.t},
                      {"pipeline", k.pipeline},
                      {"oracle", k.oracle},
                      {"residual", residual},
                      {"tolerance", k.tolerance},
                      {"pass", residual < k.tolerance}});
    }
    *sink << json{{"config", config_json(c)}, {"cases", rows}}.dump() << '\n';
  } else {
    *sink << "# " << config_comment(c) << "\ncase,n,t,pipeline,oracle,residual,tolerance,pass\n";
    for (const auto& k : cases) {
      const double residual = std::abs(k.pipeline - k.oracle);
      const bool pass = residual < k.tolerance;
      all_pass = all_pass && pass;
      *sink << k.name << ',' << k.n << ',' << real_text(k.t) << ',' << real_text(k.pipeline) << ','
            << real_text(k.oracle) << ',' << real_text(residual) << ',' << real_text(k.tolerance) << ','
            << (pass ? "true" : "false") << '\n';
    }
  }
  if (!all_pass) err << "oracle-check: residual above tolerance\n";
  return all_pass ? 0 : 1;
}

int exit_code(Errc code) {
  switch (code) {
    case Errc::singular:
    case Errc::too_large:
    case Errc::malformed_complex:
    case Errc::too_few_points:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Alpha magnitude, persistent magnitude and alpha magnitude dimension"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "alphamag 0.1.0");

  const std::vector<std::string> kinds = {"circle", "cantor", "grid", "feigenbaum", "union_intervals"};
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Output file (default: standard output)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", c.threads, "Worker threads, 0 for all cores")->envname("ALPHAMAG_THREADS");
    sub->add_option("--seed", c.seed, "64-bit seed");
  };
  const auto sampler = [&](CLI::App* sub) {
    sub->add_option("--kind", c.kind, "Sampler")->check(CLI::IsMember(kinds));
    sub->add_option("--n", c.n, "Sample size (grid: lattice resolution)")->check(CLI::PositiveNumber);
    sub->add_option("--depth", c.depth, "Cantor depth")->check(CLI::PositiveNumber);
    sub->add_option("--a", c.a, "Logistic map parameter")->check(CLI::Range(1.0, 4.0));
    sub->add_option("--burn-in", c.burn_in, "Discarded logistic iterates");
    sub->add_option("--x0", c.x0, "Logistic starting value (default: drawn from the seed)");
    sub->add_option("--intervals", c.intervals, "Union of intervals as lo,hi,lo,hi,...");
  };
  const auto t_grid = [&](CLI::App* sub) {
    sub->add_option("--t-min", c.t_min, "Smallest scale")->check(CLI::PositiveNumber);
    sub->add_option("--t-max", c.t_max, "Largest scale")->check(CLI::PositiveNumber);
    sub->add_option("--per-decade", c.per_decade, "Grid points per factor of ten")->check(CLI::PositiveNumber);
  };

  auto* sample_cmd = app.add_subcommand("sample", "Write a seeded point sample as CSV");
  common(sample_cmd);
  sampler(sample_cmd);
  sample_cmd->get_option("--kind")->required();

  auto* alpha_cmd = app.add_subcommand("alpha-mag", "Alpha magnitude function of a point CSV");
  common(alpha_cmd);
  t_grid(alpha_cmd);
  alpha_cmd->add_option("input", c.input, "Point CSV")->required()->check(CLI::ExistingFile);

  auto* magnitude_cmd = app.add_subcommand("magnitude", "Classical magnitude function");
  common(magnitude_cmd);
  t_grid(magnitude_cmd);
  magnitude_cmd->add_option("input", c.input, "Point CSV")->check(CLI::ExistingFile);
  magnitude_cmd->add_option("--fixture", c.fixture, "Built-in metric space")->check(CLI::IsMember({"k32", "cycle4"}));
  magnitude_cmd->add_flag("--force", c.force, "Lift the size cap");

  auto* dimension_cmd = app.add_subcommand("dimension", "Alpha magnitude dimension estimate");
  common(dimension_cmd);
  sampler(dimension_cmd);
  dimension_cmd->add_option("input", c.input, "Point CSV")->check(CLI::ExistingFile);
  dimension_cmd->add_option("--window-low", c.window_low, "Lower regression bound on ln t");
  dimension_cmd->add_option("--window-high", c.window_high, "Upper regression bound on ln t");
  dimension_cmd->add_option("--per-decade", c.per_decade, "Grid points per factor of ten")
      ->check(CLI::PositiveNumber);
  dimension_cmd->add_option("--sweep", c.sweep, "Number of log-spaced subsample sizes");
  dimension_cmd->add_option("--sweep-min", c.sweep_min, "Smallest subsample size")->check(CLI::PositiveNumber);
  dimension_cmd->add_flag("--convergence", c.convergence, "Run the convergence-in-n check first");
  dimension_cmd->add_option("--convergence-max", c.convergence_max, "Largest n of the convergence schedule");

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Pipeline against closed forms");
  common(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  c.threads = resolve_threads(c.threads);

  try {
    if (c.subcommand == "sample") return cmd_sample(c, out, err);
    if (c.subcommand == "alpha-mag") return cmd_alpha_mag(c, out, err);
    if (c.subcommand == "magnitude") return cmd_magnitude(c, out, err);
    if (c.subcommand == "dimension") return cmd_dimension(c, out, err);
    return cmd_oracle_check(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace alphamag::cli
