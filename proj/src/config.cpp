#include "swirl/config.hpp"

#include <algorithm>
#include <cerrno>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "swirl/errors.hpp"

namespace swirl {

using nlohmann::json;

namespace {

void check_keys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  if (!object.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& object, const char* key, T& target, const std::string& where) {
  if (!object.contains(key)) return;
  try {
    target = object.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("wrong type for '" + std::string(key) + "' in " + where);
  }
}

FunctionSpec read_function(const json& object, const char* key, const std::string& where,
                           FunctionSpec spec = {}) {
  if (object.contains(key)) spec.source = object.at(key);
  try {
    (void)spec.build();
  } catch (const ValidationError& e) {
    throw ValidationError(where + "." + key + ": " + e.what());
  }
  return spec;
}

}  // namespace

RadialFunction FunctionSpec::build() const {
  if (source.is_string()) return RadialFunction::expression(source.get<std::string>());
  if (source.is_number()) return RadialFunction::constant(source.get<double>());
  if (source.is_array()) {
    if (source.empty()) throw ValidationError("polynomial needs at least one coefficient");
    Eigen::VectorXd c(static_cast<Eigen::Index>(source.size()));
    for (std::size_t i = 0; i < source.size(); ++i) {
      if (!source[i].is_number()) throw ValidationError("polynomial coefficients must be numbers");
      c(static_cast<Eigen::Index>(i)) = source[i].get<double>();
    }
    return RadialFunction(Polynomial{c});
  }
  if (source.is_object()) {
    check_keys(source, {"r", "values"}, "table");
    if (!source.contains("r") || !source.contains("values")) throw ValidationError("table needs 'r' and 'values'");
    std::vector<double> r, v;
    try {
      r = source.at("r").get<std::vector<double>>();
      v = source.at("values").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ValidationError("table 'r' and 'values' must be number arrays");
    }
    if (r.size() != v.size()) throw ValidationError("table 'r' and 'values' differ in length");
    return RadialFunction::table(Eigen::Map<Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size())),
                                 Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  throw ValidationError("a function must be an expression string, number, coefficient array or table");
}

FourierMode ModeSpec::build() const {
  return {n, ComplexRadialFunction(g.build(), g_imag.build()), ComplexRadialFunction(f.build(), f_imag.build())};
}

RunConfig parse_config(const json& document) {
  check_keys(document, {"command", "profile", "modes", "parameters"}, "config");
  RunConfig config;
  read(document, "command", config.command, "config");
  if (std::find(known_commands().begin(), known_commands().end(), config.command) == known_commands().end()) {
    throw ValidationError("unknown command '" + config.command + "'");
  }
  config.profile = read_function(document, "profile", "config", FunctionSpec{"1"});

  if (document.contains("modes")) {
    const json& modes = document.at("modes");
    if (!modes.is_array()) throw ValidationError("'modes' must be an array");
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string where = "modes[" + std::to_string(i) + "]";
      check_keys(modes[i], {"n", "g", "g_imag", "f", "f_imag"}, where);
      ModeSpec spec;
      read(modes[i], "n", spec.n, where);
      spec.g = read_function(modes[i], "g", where);
      spec.g_imag = read_function(modes[i], "g_imag", where);
      spec.f = read_function(modes[i], "f", where);
      spec.f_imag = read_function(modes[i], "f_imag", where);
      config.modes.push_back(std::move(spec));
    }
  }

  if (document.contains("parameters")) {
    const json& p = document.at("parameters");
    const std::string where = "parameters";
    check_keys(p,
               {"grid", "abs_tol", "rel_tol", "sample_count", "m", "m_max", "n", "n_list", "time_fractions",
                "snapshot_fractions", "residual_grid", "snapshot_r", "snapshot_z", "k_max", "branch",
                "convention"},
               where);
    RunParameters& out = config.parameters;
    read(p, "grid", out.grid, where);
    read(p, "abs_tol", out.abs_tol, where);
    read(p, "rel_tol", out.rel_tol, where);
    read(p, "sample_count", out.sample_count, where);
    read(p, "m", out.m, where);
    read(p, "m_max", out.m_max, where);
    read(p, "n", out.n, where);
    read(p, "n_list", out.n_list, where);
    read(p, "time_fractions", out.time_fractions, where);
    read(p, "snapshot_fractions", out.snapshot_fractions, where);
    read(p, "residual_grid", out.residual_grid, where);
    read(p, "snapshot_r", out.snapshot_r, where);
    read(p, "snapshot_z", out.snapshot_z, where);
    read(p, "k_max", out.k_max, where);
    read(p, "branch", out.branch, where);
    read(p, "convention", out.convention, where);
    if (out.branch != "cosine" && out.branch != "sine") throw ValidationError("branch must be 'cosine' or 'sine'");
    if (out.convention != "complex" && out.convention != "real") {
      throw ValidationError("convention must be 'complex' or 'real'");
    }
  }
  return config;
}

RunConfig parse_config_text(const std::string& text, const std::string& command_override) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!command_override.empty()) {
    if (!document.is_object()) throw ValidationError("config must be a JSON object");
    document["command"] = command_override;
  }
  return parse_config(document);
}

RunConfig load_config(const std::filesystem::path& path, const std::string& command_override) {
  std::ifstream in(path);
  if (!in) {
    throw std::filesystem::filesystem_error("cannot read config file", path,
                                            std::error_code(errno, std::generic_category()));
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), command_override);
}

json to_json(const RunConfig& config) {
  json modes = json::array();
  for (const ModeSpec& m : config.modes) {
    modes.push_back({{"n", m.n}, {"g", m.g.source}, {"g_imag", m.g_imag.source}, {"f", m.f.source},
                     {"f_imag", m.f_imag.source}});
  }
  const RunParameters& p = config.parameters;
  json parameters = {{"grid", p.grid},
                     {"abs_tol", p.abs_tol},
                     {"rel_tol", p.rel_tol},
                     {"sample_count", p.sample_count},
                     {"m", p.m},
                     {"m_max", p.m_max},
                     {"n", p.n},
                     {"n_list", p.n_list},
                     {"time_fractions", p.time_fractions},
                     {"snapshot_fractions", p.snapshot_fractions},
                     {"residual_grid", p.residual_grid},
                     {"snapshot_r", p.snapshot_r},
                     {"snapshot_z", p.snapshot_z},
                     {"k_max", p.k_max},
                     {"branch", p.branch},
                     {"convention", p.convention}};
  return {{"command", config.command}, {"profile", config.profile.source}, {"modes", modes},
          {"parameters", parameters}};
}

std::string serialize_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

}  // namespace swirl
