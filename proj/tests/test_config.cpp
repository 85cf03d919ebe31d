#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"
#include "swirl/commands.hpp"
#include "swirl/config.hpp"
#include "swirl/errors.hpp"

using doctest::Approx;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("swirl_test_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& text, const fs::path& dir, std::optional<int> grid = {}) {
  const swirl::RunConfig cfg = swirl::parse_config_text(text);
  std::ostringstream out, err;
  const int code = swirl::run_command(cfg, {dir, grid, false}, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("canonical config round-trips byte for byte") {
  const std::string text = read_file(fs::path(FIXTURE_DIR) / "canonical.json");
  REQUIRE_FALSE(text.empty());
  CHECK(swirl::serialize_config(swirl::parse_config_text(text)) == text);
}

TEST_CASE("defaults are filled in and survive a round trip") {
  const swirl::RunConfig c = swirl::parse_config_text(R"({"command": "spectrum"})");
  CHECK(c.parameters.grid == 2048);
  CHECK(c.parameters.m_max == 5);
  CHECK(c.profile.build()(0.3) == 1.0);
  const std::string canonical = swirl::serialize_config(c);
  CHECK(swirl::serialize_config(swirl::parse_config_text(canonical)) == canonical);
}

TEST_CASE("property: random configs round-trip") {
  oracle::Generator gen(0xc0f1);
  for (int trial = 0; trial < 50; ++trial) {
    json doc = {{"command", swirl::known_commands()[static_cast<std::size_t>(gen.integer(0, 5))]}};
    doc["profile"] = gen.integer(0, 1) ? json(oracle::polynomial_text(gen.coefficients(3))) : json(gen.coefficients(3));
    json modes = json::array();
    for (int k = 0; k < gen.integer(0, 3); ++k) {
      modes.push_back({{"n", gen.integer(-9, 9)}, {"g", "r^2*(1-r)"}, {"f", gen.uniform(-1, 1)}});
    }
    doc["modes"] = modes;
    doc["parameters"] = {{"grid", gen.integer(256, 9000)}, {"abs_tol", gen.uniform(1e-14, 1e-8)},
                         {"time_fractions", gen.coefficients(4)}};
    const std::string once = swirl::serialize_config(swirl::parse_config(doc));
    CHECK(swirl::serialize_config(swirl::parse_config_text(once)) == once);
  }
}

TEST_CASE("function forms") {
  const auto c = swirl::parse_config_text(R"J({"command": "curvature",
      "profile": {"r": [0, 0.5, 1], "values": [1, 1.25, 2]},
      "modes": [{"n": 2, "g": [0, 0, 1, -1], "f": "r*(1-r)", "f_imag": 0}]})J");
  CHECK(c.profile.build()(0.5) == Approx(1.25));
  const swirl::FourierMode m = c.modes[0].build();
  CHECK(m.n() == 2);
  CHECK(m.g()(0.5).real() == Approx(0.125).epsilon(1e-15));
  CHECK(m.f()(0.5).real() == Approx(0.25).epsilon(1e-15));
  CHECK(swirl::FunctionSpec{3.5}.build()(0.2) == 3.5);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "curvature", "profil": "1"})"), swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "integrate"})"), swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"profile": "1"})"), swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "spectrum", "parameters": {"grid": "big"}})"),
                  swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "spectrum", "parameters": {"gird": 5}})"),
                  swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "jacobi", "parameters": {"branch": "tan"}})"),
                  swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "curvature", "parameters": {"convention": "x"}})"),
                  swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "curvature", "modes": [{"n": 1, "h": "r"}]})"),
                  swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "curvature", "modes": {"n": 1}})"), swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "curvature", "profile": []})"), swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "curvature", "profile": [1, "a"]})"),
                  swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "curvature", "profile": true})"), swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "curvature", "profile": {"r": [0, 1]}})"),
                  swirl::ValidationError);
  CHECK_THROWS_AS(swirl::parse_config_text(R"([1, 2])"), swirl::ValidationError);
}

TEST_CASE("parse errors carry byte offsets") {
  try {
    swirl::parse_config_text("{\"command\": \"curvature\",\n \"profile\": ");
    FAIL("expected ParseError");
  } catch (const swirl::ParseError& e) {
    CHECK(e.offset() > 0);
    CHECK(std::string(e.what()).find("at offset") != std::string::npos);
  }
  try {
    swirl::parse_config_text(R"({"command": "check-profile", "profile": "2 - r^^2"})");
    FAIL("expected ParseError");
  } catch (const swirl::ParseError& e) {
    CHECK(e.offset() == 6);
  }
}

TEST_CASE("command override") {
  const auto c = swirl::parse_config_text(R"({"profile": "1"})", "limit-study");
  CHECK(c.command == "limit-study");
  CHECK(swirl::parse_config_text(R"({"command": "spectrum"})", "curvature").command == "curvature");
  CHECK_THROWS_AS(swirl::parse_config_text(R"({"command": "spectrum"})", "nope"), swirl::ValidationError);
}

TEST_CASE("missing config file") {
  CHECK_THROWS_AS(swirl::load_config("/nonexistent/config.json"), std::filesystem::filesystem_error);
}

TEST_CASE("csv numbers carry 17 significant digits") {
  CHECK(swirl::format_csv_number(1.0) == "1.0000000000000000e+00");
  CHECK(swirl::format_csv_number(-0.1) == "-1.0000000000000001e-01");
  const double x = std::numbers::pi / 7;
  CHECK(std::stod(swirl::format_csv_number(x)) == x);
  CHECK(swirl::error_json("parse_error", "bad \"thing\"\nhere").find('\n') == std::string::npos);
  CHECK(json::parse(swirl::error_json("io_error", "x"))["error"] == "io_error");
}

TEST_CASE("check-profile command") {
  TempDir dir("check");
  const Run r = run(R"({"command": "check-profile", "profile": "1"})", dir.path);
  CHECK(r.code == swirl::exit_ok);
  const json report = json::parse(read_file(dir.path / "check_profile.json"));
  CHECK(report["eta_strictly_positive"] == true);
  CHECK(report["u_omega_positive"] == true);
  CHECK(report["witness_points"].empty());
}

TEST_CASE("curvature command") {
  TempDir dir("curvature");
  const Run r = run(R"J({"command": "curvature", "profile": "1",
      "modes": [{"n": 3, "g": "r^2*(1-r)"}, {"n": 1, "g": "r^2*(1-r)", "f": "0"}]})J",
                    dir.path);
  REQUIRE(r.code == swirl::exit_ok);
  const auto rows = read_csv(dir.path / "curvature.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"n", "kbar_closed", "kbar_oracle", "discrepancy", "k_normalized"});
  CHECK(rows[1][0] == "1");
  CHECK(rows[2][0] == "3");
  CHECK(std::stod(rows[1][1]) == Approx(std::numbers::pi * std::numbers::pi / 15).epsilon(1e-12));
  CHECK(std::stod(rows[1][3]) <= 1e-6);
  CHECK(json::parse(r.out)["modes"] == 2);
}

TEST_CASE("artifacts are deterministic") {
  const std::string text = R"J({"command": "curvature", "profile": "1 + r^2",
      "modes": [{"n": 1, "g": "r^2*(1-r)", "f": "r*(1-r)"}, {"n": 2, "g": "r^2*(1-r)^2"},
                {"n": 7, "f": "r^3"}, {"n": -4, "g": "r^3*(1-r)"}]})J";
  TempDir a("det_a"), b("det_b");
  REQUIRE(run(text, a.path).code == 0);
  REQUIRE(run(text, b.path).code == 0);
  CHECK(read_file(a.path / "curvature.csv") == read_file(b.path / "curvature.csv"));

  const std::string spectrum = R"({"command": "spectrum", "profile": "1 + r^2",
      "parameters": {"grid": 256, "m_max": 3, "n_list": [5, 1, 3]}})";
  REQUIRE(run(spectrum, a.path).code == 0);
  REQUIRE(run(spectrum, b.path).code == 0);
  const std::string csv = read_file(a.path / "spectrum.csv");
  CHECK(csv == read_file(b.path / "spectrum.csv"));
  const auto rows = read_csv(a.path / "spectrum.csv");
  REQUIRE(rows.size() == 10);
  CHECK(rows[1][0] == "1");
  CHECK(rows[4][0] == "3");
  CHECK(rows[9][0] == "5");
  CHECK(rows[9][1] == "3");
}

TEST_CASE("spectrum on an indefinite weight exits with 2") {
  TempDir dir("hyp");
  const Run r = run(R"({"command": "spectrum", "profile": "2-r^2"})", dir.path);
  CHECK(r.code == swirl::exit_hypothesis);
  CHECK(json::parse(r.err)["error"] == "hypothesis_violation");
  CHECK(r.out.empty());
}

TEST_CASE("jacobi command") {
  TempDir dir("jacobi");
  const Run r = run(R"({"command": "jacobi", "profile": "1 + r^2",
      "parameters": {"grid": 512, "n": 2, "m": 2, "snapshot_r": 8, "snapshot_z": 4, "snapshot_fractions": [0, 0.5]}})",
                    dir.path);
  REQUIRE(r.code == 0);
  const json report = json::parse(read_file(dir.path / "jacobi_residuals.json"));
  CHECK(report["m"] == 2);
  CHECK(report["n"] == 2);
  for (const char* key : {"jeq", "hlaplacian", "hsingle", "flow_g", "flow_f"}) {
    CHECK(report["residuals"][key].get<double>() <= 1e-6);
  }
  CHECK(report["conjugate_vanishing"].get<double>() <= 1e-8);
  CHECK(report["snapshots"].size() == 8);
  const auto g0 = read_csv(dir.path / "jacobi_g_0.csv");
  REQUIRE(g0.size() == 33);
  for (std::size_t i = 1; i < g0.size(); ++i) CHECK(std::stod(g0[i][2]) == 0.0);
}

TEST_CASE("oscillation-study and limit-study commands") {
  TempDir dir("studies");
  REQUIRE(run(R"({"command": "oscillation-study", "profile": "1", "parameters": {"k_max": 6}})", dir.path).code == 0);
  const auto osc = read_csv(dir.path / "oscillation.csv");
  REQUIRE(osc.size() == 7);
  CHECK(osc[0] == std::vector<std::string>{"k", "reduced_sin", "normalized_r_sin"});
  for (std::size_t i = 2; i < osc.size(); ++i) CHECK(std::stod(osc[i][1]) < std::stod(osc[i - 1][1]));

  REQUIRE(run(R"({"command": "limit-study", "profile": "1", "parameters": {"n_list": [4, 8], "grid": 512}})",
              dir.path)
              .code == 0);
  const auto lim = read_csv(dir.path / "limit.csv");
  REQUIRE(lim.size() == 3);
  CHECK(lim[1][2] == "nan");
  CHECK(std::stod(lim[2][1]) < std::stod(lim[1][1]));
}

TEST_CASE("grid override and quiet flag") {
  TempDir dir("override");
  const swirl::RunConfig cfg = swirl::parse_config_text(R"({"command": "spectrum", "parameters": {"grid": 100000}})");
  std::ostringstream out, err;
  CHECK(swirl::run_command(cfg, {dir.path, 256, true}, out, err) == 0);
  CHECK(out.str().empty());
  CHECK(err.str().empty());
}

TEST_CASE("error kinds from run_command") {
  TempDir dir("errors");
  auto kind = [&](const std::string& text) {
    const Run r = run(text, dir.path);
    CHECK(r.code == swirl::exit_failure);
    CHECK(r.err.find('\n') == r.err.size() - 1);
    return json::parse(r.err)["error"].get<std::string>();
  };
  CHECK(kind(R"J({"command": "curvature", "modes": [{"n": 1, "g": "r"}]})J") == "validation_error");
  CHECK(kind(R"J({"command": "curvature", "modes": [{"n": 1, "g": "sin(pi*r)"}]})J") == "regularity_error");
  CHECK(kind(R"J({"command": "curvature", "profile": "r", "modes": [{"n": 0, "f": "r"}]})J") == "degenerate_section");
  CHECK(kind(R"J({"command": "spectrum", "parameters": {"n_list": [0]}})J") == "invalid_mode");
  CHECK(kind(R"J({"command": "spectrum", "parameters": {"grid": 256, "m_max": 120, "n_list": [1]}})J") ==
        "accuracy_error");
}
