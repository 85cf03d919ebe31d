#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "swirl/profile.hpp"
#include "swirl/spline.hpp"

namespace swirl {

/// Eigenpairs of
///
///     (d/dr)((1/r) phi') - (n^2/r) phi = -(2 lambda^2 u omega / r) phi,
///     phi(0) = phi(1) = 0,
///
/// i.e. the radial problem for phi = r psi. Eigenfunctions are normalized by
/// int 2 u omega phi^2 / r dr = 1 and signed so that phi > 0 near the axis.
struct SLSpectrum {
  int n = 0;
  int grid = 0;
  Eigen::VectorXd eigenvalues;      // lambda_1 < lambda_2 < ...
  Eigen::VectorXd error_estimates;  // relative
  Eigen::VectorXd knots;            // sample points of the eigenfunctions
  Eigen::MatrixXd eigenfunctions;   // column m-1 holds phi_m at `knots`
  std::vector<CubicSpline> splines;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  double lambda(int m) const { return eigenvalues(m - 1); }
  const CubicSpline& phi(int m) const { return splines.at(static_cast<std::size_t>(m - 1)); }
};

inline constexpr double spectrum_tolerance = 1e-6;

/// Eigenvalues: second-order finite differences on grid, 2*grid and 4*grid
/// cells; the two Richardson combinations give the eigenvalue and its error
/// estimate. Eigenfunctions: the radial ODE integrated from the axis at that
/// eigenvalue, sampled on 2*grid + 1 knots.
/// Throws HypothesisViolation unless u*omega > 0 on [0, 1] and
/// AccuracyError when the estimate exceeds spectrum_tolerance.
SLSpectrum sl_spectrum(const RadialProfile& p, int n, int m_max, int grid);

/// (m, 2 pi lambda_m / |n|), ascending.
std::vector<std::pair<int, double>> conjugate_times(const SLSpectrum& s);

struct LimitStudyRow {
  int n;
  double lambda_over_n;
  double difference;  // |previous - current|; NaN on the first row
};

std::vector<LimitStudyRow> lambda_over_n_study(const RadialProfile& p, int m, const std::vector<int>& n_list,
                                               int grid);

enum class JacobiBranch { cosine, sine };

/// Scalar fields of the Jacobi field built on the eigenpair (m, n, lambda).
/// Cosine branch (h(0) = phi cos nz):
///
///     h = cos(nt/lambda) phi cos nz
///     j = -(lambda omega / r^2) phi sin nz sin(nt/lambda)
///     g = (lambda/n) cos nz sin(nt/lambda) phi
///     f = (2 lambda^2 u / (n r^2)) sin nz (cos(nt/lambda) - 1) phi
///
/// The sine branch starts from h = sin(nt/lambda) phi cos nz.
class JacobiSolution {
 public:
  struct Sample {
    double h, h_t, h_tt;
    double j, j_t;
    double g, g_t;
    double f, f_t;
  };

  JacobiSolution(RadialProfile profile, CubicSpline phi, int m, int n, double lambda,
                 JacobiBranch branch = JacobiBranch::cosine);

  int m() const { return m_; }
  int n() const { return n_; }
  double lambda() const { return lambda_; }
  JacobiBranch branch() const { return branch_; }
  double conjugate_time() const;
  const RadialProfile& profile() const { return profile_; }

  /// phi(|r|): the even extension used for differences across the axis.
  double phi(double r) const;

  /// All fields and their analytic time derivatives. r may be negative
  /// (even extension of phi) but must be nonzero for j and f.
  Sample sample(double t, double r, double z) const;

  double h(double t, double r, double z) const { return sample(t, r, z).h; }
  double j(double t, double r, double z) const { return sample(t, r, z).j; }
  double g(double t, double r, double z) const { return sample(t, r, z).g; }
  double f(double t, double r, double z) const { return sample(t, r, z).f; }

  /// Same fields with lambda replaced (fault injection).
  JacobiSolution with_lambda(double lambda) const;

 private:
  RadialProfile profile_;
  CubicSpline phi_;
  int m_;
  int n_;
  double lambda_;
  JacobiBranch branch_;
};

JacobiSolution assemble_jacobi(const RadialProfile& p, const SLSpectrum& s, int m,
                               JacobiBranch branch = JacobiBranch::cosine);

/// Max-norm residuals, each divided by the largest magnitude among its terms
/// over the whole (t, r, z) sample:
///   jeq        j_t - (omega/r^2) h_z
///   hlaplacian d/dt[(h_r/r)_r + h_zz/r] + 2 r u j_z
///   hsingle    d2/dt2[(h_r/r)_r + h_zz/r] + (2 u omega / r) h_zz
///   flow_g     g_t - h
///   flow_f     f_t + (u'/r) g_z - j
struct ResidualReport {
  int grid = 0;
  std::vector<double> times;
  double jeq = 0.0;
  double hlaplacian = 0.0;
  double hsingle = 0.0;
  double flow_g = 0.0;
  double flow_f = 0.0;

  double flow() const { return flow_g > flow_f ? flow_g : flow_f; }
  double max() const;
};

/// Radial derivatives: sixth-order central differences with step 1/grid at
/// r = i/grid, i = 1 .. grid-3, with phi extended evenly across the axis.
/// z derivatives: spectral on max(16, 4|n|) points. Time derivatives:
/// analytic.
ResidualReport jacobi_residuals(const JacobiSolution& sol, int grid, const std::vector<double>& times);

/// max(sup|f|, sup|g|) at t* relative to the corresponding sup over one
/// period, on a (grid x z) sample.
double conjugate_vanishing(const JacobiSolution& sol, int grid, int period_samples = 64);

}  // namespace swirl
