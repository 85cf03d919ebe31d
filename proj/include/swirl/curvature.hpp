#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "swirl/modes.hpp"
#include "swirl/profile.hpp"
#include "swirl/quadrature.hpp"

namespace swirl {

/// Tolerances for the pressure closures, which are differentiated
/// numerically by the residual checks and so need to be quiet.
inline constexpr QuadratureOptions pressure_quadrature{1e-15, 1e-13, 4000};

struct HJValue {
  std::complex<double> H;         // int_0^r s^2 f u xi'(s) ds
  std::complex<double> J;         // -int_r^1 s^2 f u zeta'(s) ds
  std::complex<double> H_scaled;  // H e^{-|n| r}
  std::complex<double> J_scaled;  // J e^{|n| r}
};

/// H_n(r) and J_n(r). The integrands are evaluated in scaled form, so the
/// scaled values stay finite for any |n|; the plain values may overflow.
HJValue compute_HJ(const RadialProfile& p, const FourierMode& m, double r,
                   const QuadratureOptions& options = pressure_quadrature);

/// Pressure coefficient q_n solving
///
///     (1/r)(r q')' - n^2 q = -(1/r) d/dr(r^2 f u),    q'(1) = -f(1) u(1),
///
/// regular on the axis.
struct PressureSolution {
  enum class Source { closed_form, bvp };

  int n = 0;
  Source source = Source::closed_form;
  int grid = 0;  // BVP coarse grid; 0 for the closed form
  std::function<std::complex<double>(double)> q;
  std::function<std::complex<double>(double)> q_prime;
};

/// q = -zeta H + xi J, q' = -zeta' H + xi' J - r f u.
PressureSolution pressure_closed_form(const RadialProfile& p, const FourierMode& m);

/// Finite-volume solution on `grid` and 2*grid cells, Richardson-combined on
/// the coarse nodes and interpolated by a clamped cubic spline.
PressureSolution pressure_bvp_solve(const RadialProfile& p, const FourierMode& m, int grid);

/// Max ODE residual over `grid` interior points, relative to the largest
/// source term (absolute when the source vanishes).
double pressure_ode_residual(const RadialProfile& p, const FourierMode& m, const PressureSolution& q,
                             int grid);

inline constexpr int default_oracle_grid = 4096;

/// 4 pi^2 int (1/r) [n^2 |g|^2 eta + |H_n / I1(|n| r)|^2] dr; zero for n = 0.
QuadratureResult<double> curvature_mode_closed_detail(const RadialProfile& p, const FourierMode& m,
                                                      const QuadratureOptions& options = {});
double curvature_mode_closed(const RadialProfile& p, const FourierMode& m,
                             const QuadratureOptions& options = {});

/// <<W, conj Y_n>> with W = -inug(2u' + u/r) d/dr + ((q' + r f u) u / r) d/dtheta
/// and q from pressure_bvp_solve. The complex value is returned; its real
/// part is the curvature.
QuadratureResult<std::complex<double>> curvature_mode_oracle_detail(
    const RadialProfile& p, const FourierMode& m, int grid = default_oracle_grid);
double curvature_mode_oracle(const RadialProfile& p, const FourierMode& m,
                             int grid = default_oracle_grid);

struct CurvatureResult {
  int n = 0;
  double kbar_closed = 0.0;
  double kbar_oracle = 0.0;
  double k_normalized = 0.0;
  double discrepancy = 0.0;  // |closed - oracle| / (1 + |closed|)
  double closed_error = 0.0;
  double oracle_error = 0.0;
  double imaginary_residue = 0.0;  // |Im oracle| / (1 + |closed|)
};

struct CurvatureOptions {
  QuadratureOptions quadrature{};
  int grid = default_oracle_grid;
};

CurvatureResult evaluate_curvature(const RadialProfile& p, const FourierMode& m,
                                   const CurvatureOptions& options = {});

/// How a list of modes is read.
///  - complex_modes: every entry is a separate complex mode; plain sum.
///  - real_field: entries have n >= 0 and stand for the real field with
///    g_{-n} = conj(g_n); modes with n > 0 count twice.
enum class ModeConvention { complex_modes, real_field };

/// Sum of per-mode closed-form curvatures. Throws ValidationError on
/// duplicate n (and on n < 0 under real_field).
double curvature_total(const RadialProfile& p, const std::vector<FourierMode>& modes,
                       ModeConvention convention = ModeConvention::complex_modes,
                       const QuadratureOptions& options = {});

/// Oracle curvature of the superposition sum_n Y_n, integrated over z on
/// `z_points` equispaced points, so cross terms are computed, not assumed.
double curvature_combined_oracle(const RadialProfile& p, const std::vector<FourierMode>& modes,
                                 int grid = default_oracle_grid, int z_points = 0);

/// Kbar / (<<X,X>><<Y,Y>> - <<X,Y>>^2). Throws DegenerateSectionError when
/// the Gram determinant vanishes, RegularityError when <<Y,Y>> diverges.
double curvature_normalized(const RadialProfile& p, const FourierMode& m,
                            const QuadratureOptions& options = {});

/// The normalized curvature of a pure-g mode written without metric
/// constants and with |g'|^2 unweighted in the energy:
///
///     n^2 int |g|^2 eta / r dr / ( int r^3 u^2 dr * int (n^2 |g|^2 / r + |g'|^2) dr )
///
/// Finite for g with g'(0) != 0. Requires f = 0.
double reduced_normalized_curvature(const RadialProfile& p, const FourierMode& m,
                                    const QuadratureOptions& options = {});

}  // namespace swirl
