#include "swirl/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swirl/errors.hpp"

namespace swirl {

namespace {

constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
const std::complex<double> I{0.0, 1.0};

// Scale used to judge whether boundary values vanish.
double sample_scale(const ComplexRadialFunction& h) {
  double s = 0.0;
  for (int i = 0; i <= 32; ++i) s = std::max(s, std::abs(h.value(i / 32.0)));
  return s;
}

}  // namespace

FourierMode::FourierMode(int n, ComplexRadialFunction g, ComplexRadialFunction f)
    : n_(n), g_(std::move(g)), f_(std::move(f)) {
  const double gs = 1.0 + sample_scale(g_);
  const double fs = 1.0 + sample_scale(f_);
  if (std::abs(g_.value(0.0)) > boundary_tolerance * gs) {
    throw ValidationError("mode requires g(0) = 0");
  }
  if (std::abs(f_.value(0.0)) > boundary_tolerance * fs) {
    throw ValidationError("mode requires f(0) = 0");
  }
  if (n_ != 0 && std::abs(g_.value(1.0)) > boundary_tolerance * gs) {
    throw ValidationError("mode with n != 0 requires g(1) = 0");
  }
}

FourierMode FourierMode::unchecked(int n, ComplexRadialFunction g, ComplexRadialFunction f) {
  return {NoCheck{}, n, std::move(g), std::move(f)};
}

void require_axis_regularity(const FourierMode& m) {
  double scale = 1.0;
  for (int i = 0; i <= 32; ++i) scale = std::max(scale, std::abs(m.g().derivative(i / 32.0)));
  if (std::abs(m.g().derivative(0.0)) > boundary_tolerance * scale) {
    throw RegularityError("g'(0) != 0: the axial velocity g'/r is unbounded at the axis");
  }
}

std::complex<double> metric_inner(const VelocitySample& a, const VelocitySample& b, double r) {
  return a(0) * std::conj(b(0)) + a(1) * std::conj(b(1)) + r * r * a(2) * std::conj(b(2));
}

VelocitySample assemble_velocity(const FourierMode& m, double r, double z) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("r outside [0, 1]");
  const std::complex<double> phase = std::exp(I * (m.n() * z));
  VelocitySample v;
  if (r == 0.0) {
    require_axis_regularity(m);
    v << 0.0, m.g().second_derivative(0.0) * phase, 0.0;
    return v;
  }
  const double n = m.n();
  v << -(I * n / r) * m.g().value(r) * phase, m.g().derivative(r) / r * phase, m.f().value(r) * phase;
  return v;
}

Eigen::Vector3cd cartesian_velocity(const FourierMode& m, double r, double theta, double z) {
  const VelocitySample v = assemble_velocity(m, r, z);
  const double c = std::cos(theta), s = std::sin(theta);
  // d/dr = (c, s, 0), d/dtheta = (-r s, r c, 0), d/dz = (0, 0, 1).
  Eigen::Matrix3d basis;
  basis << c, 0.0, -r * s,
           s, 0.0, r * c,
           0.0, 1.0, 0.0;
  return basis.cast<std::complex<double>>() * v;
}

double divergence_residual(const FourierMode& m, int grid_size, double radial_scale) {
  if (grid_size < 16) throw ValidationError("divergence_residual needs grid_size >= 16");
  constexpr double delta = 1e-3;
  const double n = m.n();
  const auto r_vr = [&](double r) { return r * radial_scale * assemble_velocity(m, r, 0.0)(0); };

  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double r = 2.0 * delta + (1.0 - 4.0 * delta) * i / (grid_size - 1);
    const VelocitySample v = assemble_velocity(m, r, 0.0);
    scale = std::max({scale, std::abs(radial_scale * v(0)), std::abs(v(1)), std::abs(v(2))});
    const std::complex<double> d_r_vr =
        (-r_vr(r + 2 * delta) + 8.0 * r_vr(r + delta) - 8.0 * r_vr(r - delta) + r_vr(r - 2 * delta)) /
        (12.0 * delta);
    // v_z carries e^{inz}, so d/dz is multiplication by in.
    const std::complex<double> div = d_r_vr / r + I * n * v(1);
    worst = std::max(worst, std::abs(div));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double swirl_energy(const RadialProfile& p, const QuadratureOptions& options) {
  const auto integrand = [&p](double r) {
    const double u = p.value(r);
    return r * r * r * u * u;
  };
  return four_pi_sq * integrate(integrand, 0.0, 1.0, options).value;
}

double mode_energy(const FourierMode& m, const QuadratureOptions& options) {
  if (m.g().is_zero() && m.f().is_zero()) return 0.0;
  require_axis_regularity(m);
  const double n2 = static_cast<double>(m.n()) * m.n();
  const auto integrand = [&m, n2](double r) {
    return (n2 * std::norm(m.g().value(r)) + std::norm(m.g().derivative(r))) / r +
           r * r * r * std::norm(m.f().value(r));
  };
  return four_pi_sq * integrate(integrand, 0.0, 1.0, options).value;
}

double cross_inner_product(const RadialProfile& p, const FourierMode& m, const QuadratureOptions& options) {
  if (m.n() != 0 || m.f().is_zero()) return 0.0;
  const auto integrand = [&](double r) { return r * r * r * p.value(r) * m.f().value(r).real(); };
  return four_pi_sq * integrate(integrand, 0.0, 1.0, options).value;
}

}  // namespace swirl
