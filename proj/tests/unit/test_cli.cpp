#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "alphamag/cli.hpp"
#include "alphamag/oracles.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "alphamag");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = alphamag::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(ALPHAMAG_TEST_DATA_DIR) / "cli_scratch";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Non-comment lines of a CSV, header first.
std::vector<std::string> rows(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

double last_field(const std::string& row, int index) {
  std::istringstream in(row);
  std::string field;
  for (int i = 0; i <= index; ++i) std::getline(in, field, ',');
  return std::stod(field);
}

}  // namespace

TEST_CASE("sample") {
  const Run grid = run({"sample", "--kind", "grid", "--n", "5"});
  REQUIRE(grid.code == 0);
  const auto r = rows(grid.out);
  CHECK(r.front() == "x,y");
  CHECK(r.size() == 37);
  CHECK(grid.out.rfind("# config: {", 0) == 0);

  const Run zero = run({"sample", "--kind", "circle", "--n", "0"});
  CHECK(zero.code == 2);
  CHECK(run({"sample", "--kind", "koch"}).code == 2);
  CHECK(run({"sample", "--kind", "feigenbaum", "--a", "5"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("sample writes a reproducible CSV and a spec sidecar") {
  const fs::path out = scratch("cantor.csv");
  REQUIRE(run({"sample", "--kind", "cantor", "--n", "500000", "--depth", "100", "--seed", "7", "--out", out.string()})
              .code == 0);
  const std::string first = read_file(out);
  const auto r = rows(first);
  CHECK(r.front() == "x");
  CHECK(r.size() >= 499990);
  for (std::size_t i = 1; i < r.size(); i += 997) {
    const double x = std::stod(r[i]);
    CHECK((x >= 0.0 && x <= 1.0));
  }
  const json side = json::parse(read_file(scratch("cantor.json")));
  CHECK(side["spec"]["seed"] == 7);
  CHECK(side["spec"]["depth"] == 100);
  CHECK(side["config"]["seed"] == 7);
  CHECK(side["points"].get<std::size_t>() + side["duplicates_removed"].get<std::size_t>() == 500000);

  REQUIRE(run({"sample", "--kind", "cantor", "--n", "500000", "--depth", "100", "--seed", "7", "--threads", "3",
               "--out", out.string()})
              .code == 0);
  CHECK(rows(read_file(out)) == r);
}

TEST_CASE("alpha-mag") {
  const std::string two = write_file("two.csv", "x\n0\n1\n");
  const Run r = run({"alpha-mag", two, "--t-min", "1", "--t-max", "1"});
  REQUIRE(r.code == 0);
  const auto lines = rows(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "t,magnitude,log_t,log_magnitude");
  CHECK(last_field(lines[1], 1) == doctest::Approx(2.0 - std::exp(-0.5)).epsilon(1e-15));

  const fs::path grid = scratch("grid10.csv");
  REQUIRE(run({"sample", "--kind", "grid", "--n", "10", "--out", grid.string()}).code == 0);
  const fs::path curve = scratch("grid10_curve.csv");
  REQUIRE(run({"alpha-mag", grid.string(), "--t-min", "1", "--t-max", "1", "--out", curve.string()}).code == 0);
  CHECK(std::abs(last_field(rows(read_file(curve))[1], 1) - alphamag::oracle_grid_square(10, 1.0)) < 1e-9);
  const auto bars = rows(read_file(scratch("grid10_curve.barcode.csv")));
  CHECK(bars.front() == "degree,birth,death");
  CHECK(bars.size() == 1 + 121 + 100);

  const json j = json::parse(run({"alpha-mag", two, "--format", "json", "--t-min", "1", "--t-max", "4"}).out);
  CHECK(j["barcode"].size() == 2);
  CHECK(j["curve"].size() > 2);

  const std::string bad = write_file("bad.csv", "x\n0\nbanana\n");
  const Run malformed = run({"alpha-mag", bad});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("line 3") != std::string::npos);
  CHECK(run({"alpha-mag", scratch("missing.csv").string()}).code == 2);
}

TEST_CASE("magnitude") {
  const Run k32 = run({"magnitude", "--fixture", "k32", "--t-min", "0.1", "--t-max", "1", "--per-decade", "20"});
  REQUIRE(k32.code == 0);
  std::size_t singular = 0;
  for (const auto& line : rows(k32.out)) singular += line.find("singular") != std::string::npos;
  CHECK(singular == 1);

  const std::string two = write_file("two2d.csv", "x,y\n0,0\n3,4\n");
  const Run r = run({"magnitude", two, "--t-min", "0.5", "--t-max", "2", "--per-decade", "4"});
  REQUIRE(r.code == 0);
  const auto lines = rows(r.out);
  CHECK(lines[0] == "t,magnitude");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double t = last_field(lines[i], 0);
    CHECK(last_field(lines[i], 1) == doctest::Approx(2.0 / (1.0 + std::exp(-5.0 * t))).epsilon(1e-14));
  }

  std::string big = "x\n";
  for (int i = 0; i < 4097; ++i) big += std::to_string(i) + "\n";
  const Run refused = run({"magnitude", write_file("big.csv", big)});
  CHECK(refused.code == 1);
  CHECK(refused.err.find("O(n^3)") != std::string::npos);
  CHECK(run({"magnitude"}).code == 2);
  CHECK(run({"magnitude", "--fixture", "petersen"}).code == 2);
}

TEST_CASE("dimension") {
  const fs::path out = scratch("dim.json");
  const Run r = run({"dimension", "--kind", "cantor", "--n", "20000", "--depth", "100", "--seed", "7", "--sweep", "2",
                     "--sweep-min", "10000", "--out", out.string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(read_file(out));
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["spec"]["kind"] == "cantor");
  CHECK(j["convergence"].is_null());
  const json& e = j["estimate"];
  CHECK(std::abs(e["slope"].get<double>() - 0.6309) < 0.01);
  CHECK(e["window"][0] == 1.75);
  CHECK(e["window_log"] == "natural");
  CHECK((e["r2"].get<double>() >= 0.0 && e["r2"].get<double>() <= 1.0));
  CHECK(j["sweep"].size() == 2);
  CHECK(j["sweep"][0]["size"] == 10000);
  const std::string curve = j["curve_csv_path"];
  CHECK(rows(read_file(curve)).front() == "t,magnitude,log_t,log_magnitude");

  const Run conv = run({"dimension", "--kind", "circle", "--n", "4000", "--convergence", "--convergence-max", "4000"});
  REQUIRE(conv.code == 0);
  const json c = json::parse(conv.out);
  CHECK(c["convergence"]["sequence"].size() == 3);
  CHECK(c["convergence"]["final_n"] == 4000);

  const Run window = run({"dimension", "--kind", "circle", "--n", "3000", "--window-low", "0.5", "--window-high", "4"});
  REQUIRE(window.code == 0);
  CHECK(json::parse(window.out)["estimate"]["window"][1] == 4.0);

  CHECK(run({"dimension", "--kind", "circle", "--n", "20"}).code == 1);
  CHECK(run({"dimension"}).code == 2);
}

TEST_CASE("oracle-check") {
  const Run r = run({"oracle-check"});
  CHECK(r.code == 0);
  const auto lines = rows(r.out);
  CHECK(lines[0] == "case,n,t,pipeline,oracle,residual,tolerance,pass");
  CHECK(lines.size() == 1 + 6);
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].substr(lines[i].size() - 4) == "true");
  const json j = json::parse(run({"oracle-check", "--format", "json"}).out);
  CHECK(j["cases"].size() == 6);
}

TEST_CASE("thread count does not change results") {
  const std::string a = run({"sample", "--kind", "circle", "--n", "2000", "--threads", "1"}).out;
  const std::string b = run({"sample", "--kind", "circle", "--n", "2000", "--threads", "4"}).out;
  CHECK(rows(a) == rows(b));
}
