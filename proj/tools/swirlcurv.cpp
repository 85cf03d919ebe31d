#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "swirl/commands.hpp"
#include "swirl/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sectional curvature and conjugate points for swirl flows on the solid torus"};

  std::string config_path;
  std::string command;
  swirl::CommandOptions options;
  std::string out_dir = ".";
  std::optional<int> grid;

  app.add_option("command", command, "check-profile | curvature | spectrum | jacobi | oscillation-study | limit-study "
                                     "(overrides the config's command)");
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "directory for artifacts");
  app.add_option("--grid", grid, "BVP / eigen grid, overrides parameters.grid")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", options.quiet, "no summary on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << swirl::error_json("usage_error", e.what()) << '\n';
    return swirl::exit_failure;
  }

  options.out_dir = out_dir;
  options.grid = grid;

  swirl::RunConfig config;
  try {
    config = swirl::load_config(config_path, command);
  } catch (const swirl::Error& e) {
    std::cerr << swirl::error_json(e.kind(), e.what()) << '\n';
    return swirl::exit_failure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << swirl::error_json("io_error", e.what()) << '\n';
    return swirl::exit_failure;
  }
  return swirl::run_command(config, options, std::cout, std::cerr);
}
