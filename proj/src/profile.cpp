#include "swirl/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "swirl/errors.hpp"

namespace swirl {

namespace {

void check_domain(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("r = " + std::to_string(r) + " outside [0, 1]");
}

struct CriterionScan {
  double min_value = 0.0;
  double min_r = 0.0;
  double tolerance = 0.0;
  std::vector<WitnessPoint> roots;
};

CriterionScan scan(const std::string& name, const std::function<double(double)>& f,
                   const std::vector<double>& grid, double relative_tolerance) {
  std::vector<double> values(grid.size());
  double max_abs = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    max_abs = std::max(max_abs, std::abs(values[i]));
  }

  CriterionScan out;
  out.tolerance = relative_tolerance * (1.0 + max_abs);
  const auto it = std::min_element(values.begin(), values.end());
  out.min_value = *it;
  out.min_r = grid[static_cast<std::size_t>(it - values.begin())];

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(values[i] * values[i + 1] < 0.0)) continue;
    double lo = grid[i], hi = grid[i + 1];
    double flo = values[i];
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    const double root = 0.5 * (lo + hi);
    const double value = f(root);
    out.roots.push_back({name, root, value});
    if (value < out.min_value) {
      out.min_value = value;
      out.min_r = root;
    }
  }
  return out;
}

}  // namespace

ProfileValue eval_profile(const RadialProfile& p, double r) {
  check_domain(r);
  return {p.value(r), p.derivative(r)};
}

double vorticity(const RadialProfile& p, double r) {
  check_domain(r);
  return p.vorticity(r);
}

double curvature_density(const RadialProfile& p, double r) {
  check_domain(r);
  return p.curvature_density(r);
}

CriteriaReport classify_criteria(const RadialProfile& p, int sample_count, double relative_tolerance) {
  if (sample_count < 2) throw ValidationError("classify_criteria needs sample_count >= 2");

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(sample_count) + 2);
  grid.push_back(0.0);
  for (int k = 0; k < sample_count; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * sample_count);
    grid.push_back(0.5 * (1.0 - std::cos(theta)));
  }
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());

  const auto eta = [&p](double r) { return p.curvature_density(r); };
  const auto u_omega = [&p](double r) { return p.value(r) * p.vorticity(r); };
  const CriterionScan eta_scan = scan("eta", eta, grid, relative_tolerance);
  const CriterionScan uw_scan = scan("u_omega", u_omega, grid, relative_tolerance);

  CriteriaReport report;
  report.eta_min = eta_scan.min_value;
  report.u_omega_min = uw_scan.min_value;
  report.eta_tolerance = eta_scan.tolerance;
  report.u_omega_tolerance = uw_scan.tolerance;
  report.eta_strictly_positive = eta_scan.min_value >= eta_scan.tolerance;
  report.eta_nonnegative = eta_scan.min_value >= -eta_scan.tolerance;
  // 2 u omega = eta + 3 u^2, so eta > 0 forces u omega > 0.
  report.u_omega_positive = uw_scan.min_value >= uw_scan.tolerance || report.eta_strictly_positive;

  if (!report.eta_strictly_positive) {
    report.witness_points.insert(report.witness_points.end(), eta_scan.roots.begin(), eta_scan.roots.end());
    report.witness_points.push_back({"eta", eta_scan.min_r, eta(eta_scan.min_r)});
  }
  if (!report.u_omega_positive) {
    report.witness_points.insert(report.witness_points.end(), uw_scan.roots.begin(), uw_scan.roots.end());
    report.witness_points.push_back({"u_omega", uw_scan.min_r, u_omega(uw_scan.min_r)});
  }
  return report;
}

}  // namespace swirl
