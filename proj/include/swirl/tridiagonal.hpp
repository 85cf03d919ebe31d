#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "swirl/errors.hpp"

namespace swirl {

/// Real tridiagonal matrix: `lower(i)` sits at (i+1, i), `upper(i)` at (i, i+1).
struct Tridiagonal {
  Eigen::VectorXd lower;
  Eigen::VectorXd diag;
  Eigen::VectorXd upper;

  Eigen::Index size() const { return diag.size(); }
};

/// Solves T x = rhs by Gaussian elimination with partial pivoting (the
/// dgttrf/dgtts2 scheme). Works for indefinite and nearly singular systems,
/// which inverse iteration relies on. `Scalar` may be real or complex.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_tridiagonal(
    const Tridiagonal& t, Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs) {
  const Eigen::Index n = t.size();
  if (rhs.size() != n) throw ValidationError("tridiagonal solve: size mismatch");
  if (n == 0) return rhs;

  // Upper factor: row i holds (u0 at col i, u1 at col i+1, u2 at col i+2).
  Eigen::VectorXd u0 = t.diag;
  Eigen::VectorXd u1 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u2 = Eigen::VectorXd::Zero(n);
  u1.head(n - 1) = t.upper;

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    double a0 = u0(i), a1 = u1(i), a2 = 0.0;
    double b0 = t.lower(i), b1 = u0(i + 1), b2 = i + 2 < n ? u1(i + 1) : 0.0;
    if (std::abs(b0) > std::abs(a0)) {
      std::swap(a0, b0);
      std::swap(a1, b1);
      std::swap(a2, b2);
      std::swap(rhs(i), rhs(i + 1));
    }
    if (a0 == 0.0) throw SolverError("tridiagonal solve: singular matrix");
    const double factor = b0 / a0;
    u0(i) = a0;
    u1(i) = a1;
    u2(i) = a2;
    u0(i + 1) = b1 - factor * a1;
    if (i + 2 < n) u1(i + 1) = b2 - factor * a2;
    rhs(i + 1) -= factor * rhs(i);
  }
  if (u0(n - 1) == 0.0) throw SolverError("tridiagonal solve: singular matrix");

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Scalar s = rhs(i);
    if (i + 1 < n) s -= u1(i) * x(i + 1);
    if (i + 2 < n) s -= u2(i) * x(i + 2);
    x(i) = s / u0(i);
  }
  return x;
}

/// Symmetric tridiagonal matrix (diagonal + off-diagonal).
struct SymmetricTridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  Eigen::Index size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below `x` (Sturm sequence count).
inline Eigen::Index sturm_count(const SymmetricTridiagonal& t, double x) {
  const Eigen::Index n = t.size();
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  Eigen::Index count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e2 = i > 0 ? t.off(i - 1) * t.off(i - 1) : 0.0;
    q = t.diag(i) - x - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

/// k-th smallest eigenvalue (k = 0, 1, ...) by bisection on the Sturm count.
inline double tridiagonal_eigenvalue(const SymmetricTridiagonal& t, Eigen::Index k) {
  const Eigen::Index n = t.size();
  if (k < 0 || k >= n) throw ValidationError("eigenvalue index out of range");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off(i - 1));
    if (i + 1 < n) radius += std::abs(t.off(i));
    lo = std::min(lo, t.diag(i) - radius);
    hi = std::max(hi, t.diag(i) + radius);
  }

  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) || mid == lo || mid == hi) break;
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Unit eigenvector for an (accurate) eigenvalue by inverse iteration.
inline Eigen::VectorXd tridiagonal_eigenvector(const SymmetricTridiagonal& t, double eigenvalue) {
  const Eigen::Index n = t.size();
  Tridiagonal shifted{t.off, t.diag.array() - eigenvalue, t.off};
  // Nudge the shift so the factorization never hits an exact zero pivot.
  const double nudge = 1e-14 * std::max(1.0, std::abs(eigenvalue));
  shifted.diag.array() -= nudge;

  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  for (int iter = 0; iter < 3; ++iter) {
    v = solve_tridiagonal<double>(shifted, v);
    v /= v.norm();
  }
  return v;
}

}  // namespace swirl
