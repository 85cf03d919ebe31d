#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>

#include "swirl/profile.hpp"
#include "swirl/quadrature.hpp"
#include "swirl/radial_function.hpp"

namespace swirl {

/// One axisymmetric perturbation mode
///
///     Y_n = e^{inz} ( -(in/r) g(r) d/dr + (g'(r)/r) d/dz + f(r) d/dtheta ).
///
/// The constructor checks g(0) = f(0) = 0 and, for n != 0, g(1) = 0. The
/// finite-energy condition g'(0) = 0 is checked by the operations that need
/// it (mode_energy, assemble_velocity at the axis).
class FourierMode {
 public:
  FourierMode(int n, ComplexRadialFunction g, ComplexRadialFunction f);

  /// No boundary checks; for evaluating fields that are not admissible
  /// perturbations (e.g. g(1) != 0) pointwise.
  static FourierMode unchecked(int n, ComplexRadialFunction g, ComplexRadialFunction f);

  int n() const { return n_; }
  const ComplexRadialFunction& g() const { return g_; }
  const ComplexRadialFunction& f() const { return f_; }

  FourierMode scaled(double c) const { return {n_, g_.scaled(c), f_.scaled(c)}; }

 private:
  struct NoCheck {};
  FourierMode(NoCheck, int n, ComplexRadialFunction g, ComplexRadialFunction f)
      : n_(n), g_(std::move(g)), f_(std::move(f)) {}

  int n_;
  ComplexRadialFunction g_;
  ComplexRadialFunction f_;
};

inline constexpr double boundary_tolerance = 1e-10;

/// Components (v_r, v_z, v_theta) in the coordinate basis.
using VelocitySample = Eigen::Vector3cd;

/// Pointwise metric pairing a . conj(b) with |d/dr| = |d/dz| = 1, |d/dtheta| = r.
std::complex<double> metric_inner(const VelocitySample& a, const VelocitySample& b, double r);

/// Y_n at (r, z). At r = 0 returns the axis limit (0, g''(0), 0) e^{inz}
/// when g'(0) = 0 and throws RegularityError otherwise.
VelocitySample assemble_velocity(const FourierMode& m, double r, double z);

/// Cartesian components (v_x, v_y, v_z) of Y_n at cylindrical (r, theta, z).
Eigen::Vector3cd cartesian_velocity(const FourierMode& m, double r, double theta, double z);

/// Max over a radial grid of |(1/r) d/dr(r v_r) + d/dz v_z| relative to the
/// largest sampled |v|. The radial derivative is a fourth-order difference of
/// the assembled field. `radial_scale` multiplies v_r (fault injection).
double divergence_residual(const FourierMode& m, int grid_size, double radial_scale = 1.0);

/// <<X, X>> = 4 pi^2 int r^3 u^2 dr.
double swirl_energy(const RadialProfile& p, const QuadratureOptions& options = {});

/// <<Y, conj Y>> = 4 pi^2 int [(n^2 |g|^2 + |g'|^2)/r + r^3 |f|^2] dr.
double mode_energy(const FourierMode& m, const QuadratureOptions& options = {});

/// <<X, Y>>; zero unless n = 0.
double cross_inner_product(const RadialProfile& p, const FourierMode& m,
                           const QuadratureOptions& options = {});

/// Throws RegularityError unless g'(0) vanishes.
void require_axis_regularity(const FourierMode& m);

}  // namespace swirl
