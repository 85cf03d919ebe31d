#include "swirl/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "swirl/bessel.hpp"
#include "swirl/errors.hpp"
#include "swirl/parallel.hpp"
#include "swirl/spline.hpp"
#include "swirl/tridiagonal.hpp"

namespace swirl {

namespace {

using cd = std::complex<double>;
constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;

void require_nonzero_mode(const FourierMode& m, const char* what) {
  if (m.n() == 0) throw InvalidModeError(std::string(what) + " is undefined for n = 0");
}

// s^2 f(s) u(s)
cd source_density(const RadialProfile& p, const FourierMode& m, double s) {
  return s * s * m.f().value(s) * p.value(s);
}

cd h_scaled(const RadialProfile& p, const FourierMode& m, const HomogeneousSolutions& hs, double r,
            const QuadratureOptions& options) {
  if (r <= 0.0 || m.f().is_zero()) return 0.0;
  const double k = hs.wavenumber();
  const auto integrand = [&](double s) {
    return source_density(p, m, s) * hs.xi_prime_scaled(s) * std::exp(k * (s - r));
  };
  return integrate(integrand, 0.0, r, options).value;
}

cd j_scaled(const RadialProfile& p, const FourierMode& m, const HomogeneousSolutions& hs, double r,
            const QuadratureOptions& options) {
  if (r >= 1.0 || m.f().is_zero()) return 0.0;
  const double k = hs.wavenumber();
  const auto integrand = [&](double s) {
    return source_density(p, m, s) * hs.zeta_prime_scaled(s) * std::exp(k * (r - s));
  };
  return -integrate(integrand, r, 1.0, options).value;
}

// Finite-volume nodal values on r_i = i/cells. Each node owns the cell
// [r_i - h/2, r_i + h/2] clipped to [0, 1]; the axis face carries no flux
// and the wall flux is r q' = -f(1) u(1).
Eigen::VectorXcd solve_fv(const RadialProfile& p, const FourierMode& m, int cells) {
  const double h = 1.0 / cells;
  const double n2 = static_cast<double>(m.n()) * m.n();
  const auto F = [&](double r) { return r * r * m.f().value(r) * p.value(r); };

  Tridiagonal t;
  t.diag.resize(cells + 1);
  t.lower.resize(cells);
  t.upper.resize(cells);
  Eigen::VectorXcd rhs(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    const double r = i * h;
    const double a = std::max(r - 0.5 * h, 0.0);
    const double c = std::min(r + 0.5 * h, 1.0);
    const double up = i < cells ? c / h : 0.0;
    const double lo = i > 0 ? a / h : 0.0;
    t.diag(i) = -(up + lo) - n2 * 0.5 * (c * c - a * a);
    if (i < cells) t.upper(i) = up;
    if (i > 0) t.lower(i - 1) = lo;
    rhs(i) = -(F(c) - F(a));
    if (i == cells) rhs(i) += F(1.0);
  }
  return solve_tridiagonal<cd>(t, rhs);
}

double gram_determinant(const RadialProfile& p, const FourierMode& m, const QuadratureOptions& options) {
  const double xx = swirl_energy(p, options);
  const double yy = mode_energy(m, options);
  const double xy = cross_inner_product(p, m, options);
  const double gram = xx * yy - xy * xy;
  if (!(gram > 1e-13 * xx * yy) || xx == 0.0 || yy == 0.0) {
    throw DegenerateSectionError("X and Y span a degenerate section");
  }
  return gram;
}

}  // namespace

HJValue compute_HJ(const RadialProfile& p, const FourierMode& m, double r, const QuadratureOptions& options) {
  require_nonzero_mode(m, "compute_HJ");
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("r outside [0, 1]");
  const HomogeneousSolutions hs(m.n());
  const double k = hs.wavenumber();
  HJValue out;
  out.H_scaled = h_scaled(p, m, hs, r, options);
  out.J_scaled = j_scaled(p, m, hs, r, options);
  out.H = out.H_scaled * std::exp(k * r);
  out.J = out.J_scaled * std::exp(-k * r);
  return out;
}

PressureSolution pressure_closed_form(const RadialProfile& p, const FourierMode& m) {
  require_nonzero_mode(m, "pressure_closed_form");
  const HomogeneousSolutions hs(m.n());
  PressureSolution sol;
  sol.n = m.n();
  sol.source = PressureSolution::Source::closed_form;
  sol.q = [p, m, hs](double r) -> cd {
    const cd J = j_scaled(p, m, hs, r, pressure_quadrature);
    if (r == 0.0) return hs.xi_scaled(0.0) * J;
    const cd H = h_scaled(p, m, hs, r, pressure_quadrature);
    return -hs.zeta_scaled(r) * H + hs.xi_scaled(r) * J;
  };
  sol.q_prime = [p, m, hs](double r) -> cd {
    if (r == 0.0) return 0.0;
    const cd H = h_scaled(p, m, hs, r, pressure_quadrature);
    const cd J = j_scaled(p, m, hs, r, pressure_quadrature);
    return -hs.zeta_prime_scaled(r) * H + hs.xi_prime_scaled(r) * J - r * m.f().value(r) * p.value(r);
  };
  return sol;
}

PressureSolution pressure_bvp_solve(const RadialProfile& p, const FourierMode& m, int grid) {
  require_nonzero_mode(m, "pressure_bvp_solve");
  if (grid < 64) throw ValidationError("pressure_bvp_solve needs grid >= 64");

  const Eigen::VectorXcd coarse = solve_fv(p, m, grid);
  const Eigen::VectorXcd fine = solve_fv(p, m, 2 * grid);
  Eigen::VectorXcd q(grid + 1);
  for (int i = 0; i <= grid; ++i) q(i) = (4.0 * fine(2 * i) - coarse(i)) / 3.0;

  const Eigen::VectorXd knots = Eigen::VectorXd::LinSpaced(grid + 1, 0.0, 1.0);
  const cd wall_slope = -m.f().value(1.0) * p.value(1.0);
  const CubicSpline re(knots, q.real(), {0.0, wall_slope.real()});
  const CubicSpline im(knots, q.imag(), {0.0, wall_slope.imag()});

  PressureSolution sol;
  sol.n = m.n();
  sol.source = PressureSolution::Source::bvp;
  sol.grid = grid;
  sol.q = [re, im](double r) { return cd(re.value(r), im.value(r)); };
  sol.q_prime = [re, im](double r) { return cd(re.derivative(r), im.derivative(r)); };
  return sol;
}

double pressure_ode_residual(const RadialProfile& p, const FourierMode& m, const PressureSolution& q,
                             int grid) {
  constexpr double delta = 1e-3;
  const double n2 = static_cast<double>(m.n()) * m.n();
  const auto flux = [&q](double r) { return r * q.q_prime(r); };

  double worst = 0.0;
  double scale = 0.0;
  for (int i = 1; i < grid; ++i) {
    const double r = static_cast<double>(i) / grid;
    if (r < 2.0 * delta || r > 1.0 - 2.0 * delta) continue;
    const double u = p.value(r);
    const cd f = m.f().value(r);
    // d/dr (r^2 f u) / r
    const cd source = 2.0 * f * u + r * (m.f().derivative(r) * u + f * p.derivative(r));
    const cd d_flux =
        (-flux(r + 2 * delta) + 8.0 * flux(r + delta) - 8.0 * flux(r - delta) + flux(r - 2 * delta)) /
        (12.0 * delta);
    worst = std::max(worst, std::abs(d_flux / r - n2 * q.q(r) + source));
    scale = std::max(scale, std::abs(source));
  }
  return scale > 0.0 ? worst / scale : worst;
}

QuadratureResult<double> curvature_mode_closed_detail(const RadialProfile& p, const FourierMode& m,
                                                      const QuadratureOptions& options) {
  if (m.n() == 0) return {};
  const HomogeneousSolutions hs(m.n());
  const double k = hs.wavenumber();
  const double n2 = static_cast<double>(m.n()) * m.n();
  const bool has_f = !m.f().is_zero();
  const auto integrand = [&](double r) {
    double value = n2 * std::norm(m.g().value(r)) * p.curvature_density(r);
    if (has_f) {
      // H / I1(kr) in scaled form: H_scaled / (I1(kr) e^{-kr}).
      value += std::norm(h_scaled(p, m, hs, r, pressure_quadrature) / bessel_i1_scaled(k * r));
    }
    return value / r;
  };
  auto result = integrate(integrand, 0.0, 1.0, options);
  result.value *= four_pi_sq;
  result.error *= four_pi_sq;
  return result;
}

double curvature_mode_closed(const RadialProfile& p, const FourierMode& m, const QuadratureOptions& options) {
  return curvature_mode_closed_detail(p, m, options).value;
}

QuadratureResult<cd> curvature_mode_oracle_detail(const RadialProfile& p, const FourierMode& m, int grid) {
  // For n = 0 the pressure is explicit (q' = -r f u) and both terms vanish.
  if (m.n() == 0) return {};
  const PressureSolution q = pressure_bvp_solve(p, m, grid);
  const double n2 = static_cast<double>(m.n()) * m.n();
  const auto integrand = [&](double r) -> cd {
    const double u = p.value(r);
    const cd f = m.f().value(r);
    const cd radial = n2 * std::norm(m.g().value(r)) * p.curvature_density(r) / r;
    const cd angular = r * r * std::conj(f) * u * (q.q_prime(r) + r * f * u);
    return radial + angular;
  };
  auto result = integrate_composite(integrand, 0.0, 1.0, grid);
  result.value *= four_pi_sq;
  result.error *= four_pi_sq;
  return result;
}

double curvature_mode_oracle(const RadialProfile& p, const FourierMode& m, int grid) {
  return curvature_mode_oracle_detail(p, m, grid).value.real();
}

CurvatureResult evaluate_curvature(const RadialProfile& p, const FourierMode& m, const CurvatureOptions& options) {
  CurvatureResult out;
  out.n = m.n();
  const auto closed = curvature_mode_closed_detail(p, m, options.quadrature);
  const auto oracle = curvature_mode_oracle_detail(p, m, options.grid);
  out.kbar_closed = closed.value;
  out.closed_error = closed.error;
  out.kbar_oracle = oracle.value.real();
  out.oracle_error = oracle.error;
  out.discrepancy = std::abs(out.kbar_closed - out.kbar_oracle) / (1.0 + std::abs(out.kbar_closed));
  out.imaginary_residue = std::abs(oracle.value.imag()) / (1.0 + std::abs(out.kbar_closed));
  out.k_normalized = out.kbar_closed / gram_determinant(p, m, options.quadrature);
  return out;
}

double curvature_total(const RadialProfile& p, const std::vector<FourierMode>& modes,
                       ModeConvention convention, const QuadratureOptions& options) {
  std::set<int> seen;
  for (const FourierMode& m : modes) {
    if (!seen.insert(m.n()).second) throw ValidationError("duplicate mode number n = " + std::to_string(m.n()));
    if (convention == ModeConvention::real_field && m.n() < 0) {
      throw ValidationError("real_field convention takes n >= 0 only");
    }
  }

  std::vector<double> values(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) { values[i] = curvature_mode_closed(p, modes[i], options); });

  double total = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double weight = convention == ModeConvention::real_field && modes[i].n() > 0 ? 2.0 : 1.0;
    total += weight * values[i];
  }
  return total;
}

double curvature_combined_oracle(const RadialProfile& p, const std::vector<FourierMode>& modes, int grid,
                                 int z_points) {
  int n_max = 0;
  for (const FourierMode& m : modes) n_max = std::max(n_max, std::abs(m.n()));
  if (z_points <= 0) z_points = 4 * n_max + 8;

  std::vector<PressureSolution> pressures;
  pressures.reserve(modes.size());
  for (const FourierMode& m : modes) {
    pressures.push_back(m.n() == 0 ? PressureSolution{} : pressure_bvp_solve(p, m, grid));
  }

  const cd I{0.0, 1.0};
  const auto integrand = [&](double r) -> double {
    const double u = p.value(r);
    const double shear = 2.0 * p.derivative(r) + u / r;
    std::vector<cd> w_r(modes.size()), w_t(modes.size()), y_r(modes.size()), y_t(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const FourierMode& m = modes[k];
      const double n = m.n();
      const cd g = m.g().value(r);
      const cd f = m.f().value(r);
      const cd q_prime = m.n() == 0 ? -r * f * u : pressures[k].q_prime(r);
      w_r[k] = -I * n * u * g * shear;
      w_t[k] = (q_prime + r * f * u) * u / r;
      y_r[k] = -(I * n / r) * g;
      y_t[k] = f;
    }
    double sum = 0.0;
    for (int j = 0; j < z_points; ++j) {
      const double z = 2.0 * std::numbers::pi * j / z_points;
      cd W_r = 0.0, W_t = 0.0, Y_r = 0.0, Y_t = 0.0;
      for (std::size_t k = 0; k < modes.size(); ++k) {
        const cd phase = std::exp(I * (modes[k].n() * z));
        W_r += w_r[k] * phase;
        W_t += w_t[k] * phase;
        Y_r += y_r[k] * phase;
        Y_t += y_t[k] * phase;
      }
      sum += (W_r * std::conj(Y_r) + r * r * W_t * std::conj(Y_t)).real() * r;
    }
    return sum / z_points;
  };
  return four_pi_sq * integrate_composite(integrand, 0.0, 1.0, grid).value;
}

double curvature_normalized(const RadialProfile& p, const FourierMode& m, const QuadratureOptions& options) {
  const double gram = gram_determinant(p, m, options);
  return curvature_mode_closed(p, m, options) / gram;
}

double reduced_normalized_curvature(const RadialProfile& p, const FourierMode& m, const QuadratureOptions& options) {
  if (!m.f().is_zero()) throw ValidationError("reduced_normalized_curvature takes modes with f = 0");
  const double n2 = static_cast<double>(m.n()) * m.n();
  const auto numerator = [&](double r) { return std::norm(m.g().value(r)) * p.curvature_density(r) / r; };
  const auto swirl = [&](double r) {
    const double u = p.value(r);
    return r * r * r * u * u;
  };
  const auto energy = [&](double r) { return n2 * std::norm(m.g().value(r)) / r + std::norm(m.g().derivative(r)); };
  const double den = integrate(swirl, 0.0, 1.0, options).value * integrate(energy, 0.0, 1.0, options).value;
  if (!(den > 0.0)) throw DegenerateSectionError("zero denominator in reduced normalized curvature");
  return n2 * integrate(numerator, 0.0, 1.0, options).value / den;
}

}  // namespace swirl
