#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "swirl/modes.hpp"
#include "swirl/radial_function.hpp"

namespace swirl {

/// A radial function as written in a config file. The JSON form is kept
/// verbatim so configs round-trip byte for byte:
///
///     "2 - r^2"                       expression
///     [0, 0, 1, -1]                   polynomial, ascending powers
///     3.5                             constant
///     {"r": [...], "values": [...]}   natural cubic spline table
struct FunctionSpec {
  nlohmann::json source = "0";

  RadialFunction build() const;
};

struct ModeSpec {
  int n = 1;
  FunctionSpec g;
  FunctionSpec g_imag;
  FunctionSpec f;
  FunctionSpec f_imag;

  FourierMode build() const;
};

struct RunParameters {
  int grid = 2048;
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int sample_count = 256;
  int m = 1;
  int m_max = 5;
  int n = 1;
  std::vector<int> n_list{1, 2, 3, 4, 5};
  std::vector<double> time_fractions{0.0, 0.125, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> snapshot_fractions{0.5};
  int residual_grid = 256;
  int snapshot_r = 64;
  int snapshot_z = 64;
  int k_max = 32;
  std::string branch = "cosine";           // cosine | sine
  std::string convention = "complex";      // complex | real
};

struct RunConfig {
  std::string command;
  FunctionSpec profile{"1"};
  std::vector<ModeSpec> modes;
  RunParameters parameters;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> commands{"check-profile", "curvature", "spectrum",
                                                 "jacobi", "oscillation-study", "limit-study"};
  return commands;
}

/// Parses and validates a config document. Unknown keys, wrong types and
/// unparsable expressions are rejected (ValidationError / ParseError).
RunConfig parse_config(const nlohmann::json& document);
RunConfig parse_config_text(const std::string& text, const std::string& command_override = {});
RunConfig load_config(const std::filesystem::path& path, const std::string& command_override = {});

nlohmann::json to_json(const RunConfig& config);

/// Canonical text: every field present, keys sorted, two-space indent,
/// trailing newline.
std::string serialize_config(const RunConfig& config);

}  // namespace swirl
