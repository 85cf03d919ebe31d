#include "swirl/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <system_error>

#include "swirl/curvature.hpp"
#include "swirl/errors.hpp"
#include "swirl/jacobi.hpp"
#include "swirl/parallel.hpp"

namespace swirl {

using nlohmann::json;

namespace {

[[noreturn]] void throw_write_error(const std::filesystem::path& path) {
  throw std::filesystem::filesystem_error("cannot write", path, std::make_error_code(std::errc::io_error));
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw_write_error(path);
    write_row(header);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

void write_json(const std::filesystem::path& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw_write_error(path);
  out << value.dump(2) << '\n';
}

std::string num(double v) { return format_csv_number(v); }

struct Context {
  const RunConfig& cfg;
  const CommandOptions& options;
  RadialProfile profile;
  int grid;
  QuadratureOptions quadrature;
};

json check_profile(const Context& c) {
  const CriteriaReport report = classify_criteria(c.profile, c.cfg.parameters.sample_count);
  json witnesses = json::array();
  for (const WitnessPoint& w : report.witness_points) {
    witnesses.push_back({{"criterion", w.criterion}, {"r", w.r}, {"value", w.value}});
  }
  json result = {{"eta_strictly_positive", report.eta_strictly_positive},
                 {"eta_nonnegative", report.eta_nonnegative},
                 {"u_omega_positive", report.u_omega_positive},
                 {"eta_min", report.eta_min},
                 {"u_omega_min", report.u_omega_min},
                 {"eta_tolerance", report.eta_tolerance},
                 {"u_omega_tolerance", report.u_omega_tolerance},
                 {"witness_points", witnesses}};
  write_json(c.options.out_dir / "check_profile.json", result);
  return result;
}

json curvature(const Context& c) {
  if (c.cfg.modes.empty()) throw ValidationError("curvature needs at least one mode");
  const bool real_field = c.cfg.parameters.convention == "real";
  std::vector<FourierMode> modes;
  std::set<int> seen;
  for (const ModeSpec& spec : c.cfg.modes) {
    if (!seen.insert(spec.n).second) throw ValidationError("duplicate mode number n = " + std::to_string(spec.n));
    if (real_field && spec.n < 0) throw ValidationError("real convention takes n >= 0 only");
    modes.push_back(spec.build());
  }
  std::sort(modes.begin(), modes.end(), [](const FourierMode& a, const FourierMode& b) { return a.n() < b.n(); });

  std::vector<CurvatureResult> rows(modes.size());
  const CurvatureOptions options{c.quadrature, c.grid};
  parallel_for(modes.size(), [&](std::size_t i) { rows[i] = evaluate_curvature(c.profile, modes[i], options); });

  CsvWriter csv(c.options.out_dir / "curvature.csv", {"n", "kbar_closed", "kbar_oracle", "discrepancy", "k_normalized"});
  double total = 0.0, worst = 0.0;
  for (const CurvatureResult& r : rows) {
    csv.write_row({std::to_string(r.n), num(r.kbar_closed), num(r.kbar_oracle), num(r.discrepancy), num(r.k_normalized)});
    total += (real_field && r.n > 0 ? 2.0 : 1.0) * r.kbar_closed;
    worst = std::max(worst, r.discrepancy);
  }
  return {{"modes", rows.size()}, {"kbar_total", total}, {"max_discrepancy", worst}, {"artifact", "curvature.csv"}};
}

json spectrum(const Context& c) {
  const RunParameters& p = c.cfg.parameters;
  std::vector<int> ns = p.n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<SLSpectrum> spectra(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) { spectra[i] = sl_spectrum(c.profile, ns[i], p.m_max, c.grid); });

  CsvWriter csv(c.options.out_dir / "spectrum.csv", {"n", "m", "lambda", "t_star", "error_estimate"});
  for (const SLSpectrum& s : spectra) {
    for (const auto& [m, t_star] : conjugate_times(s)) {
      csv.write_row({std::to_string(s.n), std::to_string(m), num(s.lambda(m)), num(t_star),
                     num(s.error_estimates(m - 1))});
    }
  }
  return {{"rows", ns.size() * static_cast<std::size_t>(p.m_max)}, {"artifact", "spectrum.csv"}};
}

json jacobi(const Context& c) {
  const RunParameters& p = c.cfg.parameters;
  const SLSpectrum s = sl_spectrum(c.profile, p.n, p.m, c.grid);
  const JacobiBranch branch = p.branch == "sine" ? JacobiBranch::sine : JacobiBranch::cosine;
  const JacobiSolution sol = assemble_jacobi(c.profile, s, p.m, branch);
  const double t_star = sol.conjugate_time();

  std::vector<double> times;
  for (double fraction : p.time_fractions) times.push_back(fraction * t_star);
  const ResidualReport report = jacobi_residuals(sol, p.residual_grid, times);
  const double vanishing = conjugate_vanishing(sol, p.residual_grid);

  std::vector<std::string> snapshots;
  for (std::size_t k = 0; k < p.snapshot_fractions.size(); ++k) {
    const double t = p.snapshot_fractions[k] * t_star;
    for (const char* field : {"h", "j", "g", "f"}) {
      const std::string name = fmt::format("jacobi_{}_{}.csv", field, k);
      CsvWriter csv(c.options.out_dir / name, {"r", "z", "value"});
      for (int i = 1; i <= p.snapshot_r; ++i) {
        const double r = static_cast<double>(i) / p.snapshot_r;
        for (int j = 0; j < p.snapshot_z; ++j) {
          const double z = 2.0 * std::numbers::pi * j / p.snapshot_z;
          const JacobiSolution::Sample v = sol.sample(t, r, z);
          const double value = field[0] == 'h' ? v.h : field[0] == 'j' ? v.j : field[0] == 'g' ? v.g : v.f;
          csv.write_row({num(r), num(z), num(value)});
        }
      }
      snapshots.push_back(name);
    }
  }

  json result = {{"m", p.m},
                 {"n", p.n},
                 {"lambda", s.lambda(p.m)},
                 {"t_star", t_star},
                 {"branch", p.branch},
                 {"residual_grid", report.grid},
                 {"times", times},
                 {"residuals",
                  {{"jeq", report.jeq},
                   {"hlaplacian", report.hlaplacian},
                   {"hsingle", report.hsingle},
                   {"flow_g", report.flow_g},
                   {"flow_f", report.flow_f}}},
                 {"conjugate_vanishing", vanishing},
                 {"snapshots", snapshots}};
  write_json(c.options.out_dir / "jacobi_residuals.json", result);
  return result;
}

json oscillation_study(const Context& c) {
  const RunParameters& p = c.cfg.parameters;
  if (p.k_max < 1) throw ValidationError("k_max must be >= 1");
  std::vector<double> reduced(static_cast<std::size_t>(p.k_max)), normalized(reduced.size());
  parallel_for(reduced.size(), [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    const FourierMode plain(p.n, RadialFunction::expression(fmt::format("sin({}*pi*r)", k)), RadialFunction());
    const FourierMode regular(p.n, RadialFunction::expression(fmt::format("r*sin({}*pi*r)", k)), RadialFunction());
    reduced[i] = reduced_normalized_curvature(c.profile, plain, c.quadrature);
    normalized[i] = curvature_normalized(c.profile, regular, c.quadrature);
  });
  CsvWriter csv(c.options.out_dir / "oscillation.csv", {"k", "reduced_sin", "normalized_r_sin"});
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    csv.write_row({std::to_string(i + 1), num(reduced[i]), num(normalized[i])});
  }
  return {{"rows", reduced.size()}, {"artifact", "oscillation.csv"}};
}

json limit_study(const Context& c) {
  const RunParameters& p = c.cfg.parameters;
  const auto rows = lambda_over_n_study(c.profile, p.m, p.n_list, c.grid);
  CsvWriter csv(c.options.out_dir / "limit.csv", {"n", "lambda_over_n", "difference"});
  for (const LimitStudyRow& r : rows) {
    csv.write_row({std::to_string(r.n), num(r.lambda_over_n), num(r.difference)});
  }
  return {{"rows", rows.size()}, {"artifact", "limit.csv"}};
}

}  // namespace

std::string format_csv_number(double value) { return fmt::format("{:.16e}", value); }

std::string error_json(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}}.dump();
}

int run_command(const RunConfig& cfg, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    std::filesystem::create_directories(options.out_dir);
    Context c{cfg, options, RadialProfile(cfg.profile.build()), options.grid.value_or(cfg.parameters.grid),
              QuadratureOptions{cfg.parameters.abs_tol, cfg.parameters.rel_tol, 4000}};

    json summary;
    if (cfg.command == "check-profile") {
      summary = check_profile(c);
    } else if (cfg.command == "curvature") {
      summary = curvature(c);
    } else if (cfg.command == "spectrum") {
      summary = spectrum(c);
    } else if (cfg.command == "jacobi") {
      summary = jacobi(c);
    } else if (cfg.command == "oscillation-study") {
      summary = oscillation_study(c);
    } else if (cfg.command == "limit-study") {
      summary = limit_study(c);
    } else {
      throw ValidationError("unknown command '" + cfg.command + "'");
    }
    if (!options.quiet) out << summary.dump(2) << '\n';
    return exit_ok;
  } catch (const HypothesisViolation& e) {
    err << error_json(e.kind(), e.what()) << '\n';
    return exit_hypothesis;
  } catch (const Error& e) {
    err << error_json(e.kind(), e.what()) << '\n';
    return exit_failure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << error_json("io_error", e.what()) << '\n';
    return exit_failure;
  } catch (const std::exception& e) {
    err << error_json("internal_error", e.what()) << '\n';
    return exit_failure;
  }
}

}  // namespace swirl
