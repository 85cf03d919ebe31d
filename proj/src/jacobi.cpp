#include "swirl/jacobi.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "swirl/errors.hpp"
#include "swirl/parallel.hpp"
#include "swirl/quadrature.hpp"
#include "swirl/tridiagonal.hpp"

namespace swirl {

namespace {

Eigen::VectorXd grid_eigenvalues(const RadialProfile& p, int n, int m_max, int cells) {
  const double h = 1.0 / cells;
  const int size = cells - 1;
  const double n2 = static_cast<double>(n) * n;

  Eigen::VectorXd weight(size);
  SymmetricTridiagonal t{Eigen::VectorXd(size), Eigen::VectorXd(size - 1)};
  for (int k = 0; k < size; ++k) {
    const double r = (k + 1) * h;
    weight(k) = 2.0 * p.value(r) * p.vorticity(r) / r;
    const double a = (1.0 / (r + 0.5 * h) + 1.0 / (r - 0.5 * h)) / (h * h) + n2 / r;
    t.diag(k) = a / weight(k);
  }
  for (int k = 0; k + 1 < size; ++k) {
    const double r_half = (k + 1.5) * h;
    t.off(k) = -1.0 / (r_half * h * h) / std::sqrt(weight(k) * weight(k + 1));
  }

  Eigen::VectorXd lambda(m_max);
  for (int m = 0; m < m_max; ++m) lambda(m) = std::sqrt(tridiagonal_eigenvalue(t, m));
  return lambda;
}

// phi'' - phi'/r + Q phi = 0 with Q = 2 lambda^2 u omega - n^2, integrated
// from the axis (phi = r^2 (1 - Q(0) r^2 / 8 - Q'(0) r^3 / 15 + ...)) by RK4
// with `substeps` steps per knot interval. Returns values at the knots and
// phi'(1).
std::pair<Eigen::VectorXd, double> integrate_eigenfunction(const RadialProfile& p, int n, double lambda,
                                                           int knots, int substeps) {
  const double n2 = static_cast<double>(n) * n;
  const double l2 = lambda * lambda;
  const auto Q = [&](double r) { return 2.0 * l2 * p.value(r) * p.vorticity(r) - n2; };
  const double q0 = Q(0.0);
  const double q1 = 2.0 * l2 * (p.derivative(0.0) * p.vorticity(0.0) + p.value(0.0) * 3.0 * p.derivative(0.0));

  const double dr = 1.0 / (knots - 1);
  Eigen::VectorXd phi(knots);
  phi(0) = 0.0;
  double r = dr;
  double y = r * r * (1.0 - q0 * r * r / 8.0 - q1 * r * r * r / 15.0);
  double dy = 2.0 * r - q0 * r * r * r / 2.0 - q1 * r * r * r * r / 3.0;
  phi(1) = y;

  const auto rhs = [&](double x, double a, double b) { return b / x - Q(x) * a; };
  const double step = dr / substeps;
  for (int k = 2; k < knots; ++k) {
    for (int s = 0; s < substeps; ++s) {
      const double k1a = dy, k1b = rhs(r, y, dy);
      const double k2a = dy + 0.5 * step * k1b, k2b = rhs(r + 0.5 * step, y + 0.5 * step * k1a, k2a);
      const double k3a = dy + 0.5 * step * k2b, k3b = rhs(r + 0.5 * step, y + 0.5 * step * k2a, k3a);
      const double k4a = dy + step * k3b, k4b = rhs(r + step, y + step * k3a, k4a);
      y += step / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
      dy += step / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
      r += step;
    }
    r = k * dr;
    phi(k) = y;
  }
  return {phi, dy};
}

// Derivative matrices of the trigonometric interpolant on `points`
// equispaced nodes of [0, 2 pi).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> spectral_matrices(int points) {
  using cd = std::complex<double>;
  const cd I{0.0, 1.0};
  Eigen::MatrixXcd forward(points, points), backward(points, points);
  Eigen::VectorXcd d1(points), d2(points);
  for (int k = 0; k < points; ++k) {
    const int wave = k <= points / 2 ? k : k - points;
    const bool nyquist = 2 * k == points;
    d1(k) = nyquist ? 0.0 : I * static_cast<double>(wave);
    d2(k) = -static_cast<double>(wave) * wave;
    for (int j = 0; j < points; ++j) {
      const double angle = 2.0 * std::numbers::pi * wave * j / points;
      forward(k, j) = std::exp(-I * angle) / static_cast<double>(points);
      backward(j, k) = std::exp(I * angle);
    }
  }
  return {(backward * d1.asDiagonal() * forward).real(), (backward * d2.asDiagonal() * forward).real()};
}

int z_points_for(int n) { return std::max(16, 4 * std::abs(n)); }

}  // namespace

SLSpectrum sl_spectrum(const RadialProfile& p, int n, int m_max, int grid) {
  if (n == 0) throw InvalidModeError("sl_spectrum needs n != 0");
  if (m_max < 1) throw ValidationError("sl_spectrum needs m_max >= 1");
  if (grid < 256) throw ValidationError("sl_spectrum needs grid >= 256");
  const CriteriaReport criteria = classify_criteria(p, 256);
  if (!criteria.u_omega_positive) {
    double at = 0.0;
    for (const WitnessPoint& w : criteria.witness_points) {
      if (w.criterion == "u_omega" && w.value == criteria.u_omega_min) at = w.r;
    }
    throw HypothesisViolation(fmt::format("u*omega is not positive on [0, 1]: min {:.6g} at r = {:.6g}",
                                          criteria.u_omega_min, at));
  }

  const Eigen::VectorXd coarse = grid_eigenvalues(p, n, m_max, grid);
  const Eigen::VectorXd middle = grid_eigenvalues(p, n, m_max, 2 * grid);
  const Eigen::VectorXd fine = grid_eigenvalues(p, n, m_max, 4 * grid);

  SLSpectrum s;
  s.n = n;
  s.grid = grid;
  s.eigenvalues.resize(m_max);
  s.error_estimates.resize(m_max);
  const int knots = 2 * grid + 1;
  s.knots = Eigen::VectorXd::LinSpaced(knots, 0.0, 1.0);
  s.eigenfunctions.resize(knots, m_max);
  for (int m = 0; m < m_max; ++m) {
    const double first = (4.0 * middle(m) - coarse(m)) / 3.0;
    const double second = (4.0 * fine(m) - middle(m)) / 3.0;
    s.eigenvalues(m) = second;
    s.error_estimates(m) = std::abs(first - second) / second;
    if (!(s.error_estimates(m) <= spectrum_tolerance)) {
      throw AccuracyError("eigenvalue " + std::to_string(m + 1) + " for n = " + std::to_string(n) +
                              " did not converge; raise the grid",
                          s.error_estimates(m));
    }

    auto [values, wall_slope] = integrate_eigenfunction(p, n, second, knots, 4);
    CubicSpline raw(s.knots, values, {0.0, wall_slope});
    const auto weight = [&](double r) {
      const double v = raw.value(r);
      return 2.0 * p.value(r) * p.vorticity(r) * v * v / r;
    };
    const double norm = std::sqrt(integrate_composite(weight, 0.0, 1.0, knots - 1).value);
    s.eigenfunctions.col(m) = values / norm;
    s.splines.push_back(raw.scaled(1.0 / norm));
  }
  return s;
}

std::vector<std::pair<int, double>> conjugate_times(const SLSpectrum& s) {
  std::vector<std::pair<int, double>> out;
  for (int m = 1; m <= s.size(); ++m) {
    out.emplace_back(m, 2.0 * std::numbers::pi * s.lambda(m) / std::abs(s.n));
  }
  return out;
}

std::vector<LimitStudyRow> lambda_over_n_study(const RadialProfile& p, int m, const std::vector<int>& n_list,
                                               int grid) {
  std::vector<double> ratios(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    const int n = n_list[i];
    ratios[i] = sl_spectrum(p, n, m, grid).lambda(m) / std::abs(n);
  });
  std::vector<LimitStudyRow> rows;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double diff = i == 0 ? std::numeric_limits<double>::quiet_NaN() : std::abs(ratios[i - 1] - ratios[i]);
    rows.push_back({n_list[i], ratios[i], diff});
  }
  return rows;
}

JacobiSolution::JacobiSolution(RadialProfile profile, CubicSpline phi, int m, int n, double lambda,
                               JacobiBranch branch)
    : profile_(std::move(profile)), phi_(std::move(phi)), m_(m), n_(n), lambda_(lambda), branch_(branch) {
  if (n == 0) throw InvalidModeError("Jacobi fields need n != 0");
}

double JacobiSolution::conjugate_time() const { return 2.0 * std::numbers::pi * lambda_ / std::abs(n_); }

double JacobiSolution::phi(double r) const { return phi_.value(std::abs(r)); }

JacobiSolution::Sample JacobiSolution::sample(double t, double r, double z) const {
  const double ra = std::abs(r);
  const double phi = phi_.value(ra);
  const double n = n_;
  const double lam = lambda_;
  const double w = n / lam;
  const double c = std::cos(w * t), s = std::sin(w * t);
  const double cz = std::cos(n * z), sz = std::sin(n * z);

  Sample out{};
  const bool axis = ra == 0.0;
  const double u = profile_.value(ra);
  const double omega = profile_.vorticity(ra);
  const double inv_r2 = axis ? 0.0 : 1.0 / (ra * ra);
  const double du_over_r = axis ? 0.0 : profile_.derivative(ra) / ra;

  if (branch_ == JacobiBranch::cosine) {
    out.h = c * phi * cz;
    out.h_t = -w * s * phi * cz;
    out.h_tt = -w * w * c * phi * cz;
    out.j = -lam * omega * inv_r2 * phi * sz * s;
    out.j_t = -n * omega * inv_r2 * phi * sz * c;
    out.g = (lam / n) * cz * s * phi;
    out.g_t = cz * c * phi;
    out.f = 2.0 * lam * lam * u * inv_r2 / n * sz * (c - 1.0) * phi;
    out.f_t = -2.0 * lam * u * inv_r2 * sz * s * phi;
  } else {
    out.h = s * phi * cz;
    out.h_t = w * c * phi * cz;
    out.h_tt = -w * w * s * phi * cz;
    out.j = lam * omega * inv_r2 * c * phi * sz;
    out.j_t = -n * omega * inv_r2 * s * phi * sz;
    out.g = -(lam / n) * (c - 1.0) * phi * cz;
    out.g_t = s * phi * cz;
    out.f = lam * lam * omega * inv_r2 / n * s * phi * sz - du_over_r * lam * ((lam / n) * s - t) * phi * sz;
    out.f_t = lam * omega * inv_r2 * c * phi * sz - du_over_r * lam * (c - 1.0) * phi * sz;
  }
  return out;
}

JacobiSolution JacobiSolution::with_lambda(double lambda) const {
  return {profile_, phi_, m_, n_, lambda, branch_};
}

JacobiSolution assemble_jacobi(const RadialProfile& p, const SLSpectrum& s, int m, JacobiBranch branch) {
  if (m < 1 || m > s.size()) throw ValidationError("eigen index m out of range");
  return {p, s.phi(m), m, s.n, s.lambda(m), branch};
}

double ResidualReport::max() const { return std::max({jeq, hlaplacian, hsingle, flow_g, flow_f}); }

ResidualReport jacobi_residuals(const JacobiSolution& sol, int grid, const std::vector<double>& times) {
  if (grid < 8) throw ValidationError("jacobi_residuals needs grid >= 8");
  const int nz = z_points_for(sol.n());
  const auto [dz, dzz] = spectral_matrices(nz);
  const double delta = 1.0 / grid;
  const RadialProfile& p = sol.profile();

  struct Accumulator {
    double residual[5] = {0, 0, 0, 0, 0};
    double scale[5] = {0, 0, 0, 0, 0};
    void add(int k, double res, double a, double b, double c = 0.0) {
      residual[k] = std::max(residual[k], std::abs(res));
      scale[k] = std::max({scale[k], std::abs(a), std::abs(b), std::abs(c)});
    }
  };
  std::vector<Accumulator> per_time(times.size());

  parallel_for(times.size(), [&](std::size_t ti) {
    const double t = times[ti];
    Accumulator& acc = per_time[ti];
    Eigen::VectorXd h(nz), j(nz), g(nz), j_t(nz), g_t(nz), f_t(nz);
    Eigen::MatrixXd ht(nz, 7), htt(nz, 7);
    for (int i = 1; i <= grid - 3; ++i) {
      const double r = i * delta;
      for (int k = 0; k < nz; ++k) {
        const double z = 2.0 * std::numbers::pi * k / nz;
        for (int o = -3; o <= 3; ++o) {
          const JacobiSolution::Sample s = sol.sample(t, r + o * delta, z);
          ht(k, o + 3) = s.h_t;
          htt(k, o + 3) = s.h_tt;
          if (o == 0) {
            h(k) = s.h;
            j(k) = s.j;
            g(k) = s.g;
            j_t(k) = s.j_t;
            g_t(k) = s.g_t;
            f_t(k) = s.f_t;
          }
        }
      }
      // (h_r / r)_r = h_rr / r - h_r / r^2
      const auto radial = [&](const Eigen::MatrixXd& x) -> Eigen::VectorXd {
        const Eigen::VectorXd d1 =
            (-x.col(0) + 9.0 * x.col(1) - 45.0 * x.col(2) + 45.0 * x.col(4) - 9.0 * x.col(5) + x.col(6)) /
            (60.0 * delta);
        const Eigen::VectorXd d2 = (2.0 * x.col(0) - 27.0 * x.col(1) + 270.0 * x.col(2) - 490.0 * x.col(3) +
                                    270.0 * x.col(4) - 27.0 * x.col(5) + 2.0 * x.col(6)) /
                                   (180.0 * delta * delta);
        return d2 / r - d1 / (r * r) + dzz * x.col(3) / r;
      };
      const Eigen::VectorXd lap_t = radial(ht);
      const Eigen::VectorXd lap_tt = radial(htt);
      const Eigen::VectorXd h_z = dz * h, h_zz = dzz * h, j_z = dz * j, g_z = dz * g;

      const double u = p.value(r);
      const double omega = p.vorticity(r);
      const double du = p.derivative(r);
      for (int k = 0; k < nz; ++k) {
        const double a2 = omega / (r * r) * h_z(k);
        acc.add(0, j_t(k) - a2, j_t(k), a2);
        const double b2 = 2.0 * r * u * j_z(k);
        acc.add(1, lap_t(k) + b2, lap_t(k), b2);
        const double c2 = 2.0 * u * omega / r * h_zz(k);
        acc.add(2, lap_tt(k) + c2, lap_tt(k), c2);
        acc.add(3, g_t(k) - h(k), g_t(k), h(k));
        const double d2 = du / r * g_z(k);
        acc.add(4, f_t(k) + d2 - j(k), f_t(k), d2, j(k));
      }
    }
  });

  Accumulator total;
  for (const Accumulator& a : per_time) {
    for (int k = 0; k < 5; ++k) {
      total.residual[k] = std::max(total.residual[k], a.residual[k]);
      total.scale[k] = std::max(total.scale[k], a.scale[k]);
    }
  }
  const auto normalized = [&](int k) {
    return total.scale[k] > 0.0 ? total.residual[k] / total.scale[k] : total.residual[k];
  };

  ResidualReport report;
  report.grid = grid;
  report.times = times;
  report.jeq = normalized(0);
  report.hlaplacian = normalized(1);
  report.hsingle = normalized(2);
  report.flow_g = normalized(3);
  report.flow_f = normalized(4);
  return report;
}

double conjugate_vanishing(const JacobiSolution& sol, int grid, int period_samples) {
  const int nz = z_points_for(sol.n());
  const double t_star = sol.conjugate_time();
  const auto sup = [&](double t) {
    double f = 0.0, g = 0.0;
    for (int i = 1; i <= grid; ++i) {
      for (int k = 0; k < nz; ++k) {
        const auto s = sol.sample(t, static_cast<double>(i) / grid, 2.0 * std::numbers::pi * k / nz);
        f = std::max(f, std::abs(s.f));
        g = std::max(g, std::abs(s.g));
      }
    }
    return std::pair{f, g};
  };

  double peak_f = 0.0, peak_g = 0.0;
  for (int k = 0; k <= period_samples; ++k) {
    const auto [f, g] = sup(t_star * k / period_samples);
    peak_f = std::max(peak_f, f);
    peak_g = std::max(peak_g, g);
  }
  const auto [f_star, g_star] = sup(t_star);
  const double rf = peak_f > 0.0 ? f_star / peak_f : f_star;
  const double rg = peak_g > 0.0 ? g_star / peak_g : g_star;
  return std::max(rf, rg);
}

}  // namespace swirl
