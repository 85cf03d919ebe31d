#include "swirl/spline.hpp"

#include <algorithm>
#include <cmath>

#include "swirl/errors.hpp"
#include "swirl/tridiagonal.hpp"

namespace swirl {

CubicSpline::CubicSpline(Eigen::VectorXd knots, Eigen::VectorXd values, EndSlopes slopes)
    : x_(std::move(knots)), y_(std::move(values)), slopes_(slopes) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) throw ValidationError("spline needs at least two knots and matching values");
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (!(x_(i + 1) > x_(i))) throw ValidationError("spline knots must be strictly increasing");
  }

  const Eigen::VectorXd h = x_.tail(n - 1) - x_.head(n - 1);
  const double mean_h = (x_(n - 1) - x_(0)) / static_cast<double>(n - 1);
  uniform_ = ((h.array() - mean_h).abs() <= 1e-12 * mean_h).all();

  Tridiagonal t{Eigen::VectorXd::Zero(n - 1), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n - 1)};
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    t.lower(i - 1) = h(i - 1);
    t.diag(i) = 2.0 * (h(i - 1) + h(i));
    t.upper(i) = h(i);
    rhs(i) = 6.0 * ((y_(i + 1) - y_(i)) / h(i) - (y_(i) - y_(i - 1)) / h(i - 1));
  }
  if (slopes_.left) {
    t.diag(0) = 2.0 * h(0);
    t.upper(0) = h(0);
    rhs(0) = 6.0 * ((y_(1) - y_(0)) / h(0) - *slopes_.left);
  } else {
    t.diag(0) = 1.0;
  }
  if (slopes_.right) {
    t.lower(n - 2) = h(n - 2);
    t.diag(n - 1) = 2.0 * h(n - 2);
    rhs(n - 1) = 6.0 * (*slopes_.right - (y_(n - 1) - y_(n - 2)) / h(n - 2));
  } else {
    t.diag(n - 1) = 1.0;
  }
  m_ = solve_tridiagonal<double>(t, rhs);
}

Eigen::Index CubicSpline::interval(double x) const {
  const Eigen::Index n = x_.size();
  Eigen::Index i;
  if (uniform_) {
    const double h = (x_(n - 1) - x_(0)) / static_cast<double>(n - 1);
    i = static_cast<Eigen::Index>(std::floor((x - x_(0)) / h));
  } else {
    i = std::upper_bound(x_.data(), x_.data() + n, x) - x_.data() - 1;
  }
  return std::clamp<Eigen::Index>(i, 0, n - 2);
}

double CubicSpline::value(double x) const {
  const Eigen::Index i = interval(x);
  const double h = x_(i + 1) - x_(i);
  const double a = x_(i + 1) - x;
  const double b = x - x_(i);
  return (m_(i) * a * a * a + m_(i + 1) * b * b * b) / (6.0 * h) +
         (y_(i) / h - m_(i) * h / 6.0) * a + (y_(i + 1) / h - m_(i + 1) * h / 6.0) * b;
}

double CubicSpline::derivative(double x) const {
  const Eigen::Index i = interval(x);
  const double h = x_(i + 1) - x_(i);
  const double a = x_(i + 1) - x;
  const double b = x - x_(i);
  return (m_(i + 1) * b * b - m_(i) * a * a) / (2.0 * h) + (y_(i + 1) - y_(i)) / h -
         (m_(i + 1) - m_(i)) * h / 6.0;
}

double CubicSpline::second_derivative(double x) const {
  const Eigen::Index i = interval(x);
  const double h = x_(i + 1) - x_(i);
  return (m_(i) * (x_(i + 1) - x) + m_(i + 1) * (x - x_(i))) / h;
}

CubicSpline CubicSpline::scaled(double c) const {
  CubicSpline s = *this;
  s.y_ *= c;
  s.m_ *= c;
  if (s.slopes_.left) s.slopes_.left = *s.slopes_.left * c;
  if (s.slopes_.right) s.slopes_.right = *s.slopes_.right * c;
  return s;
}

double one_sided_end_slope(const Eigen::Ref<const Eigen::VectorXd>& v, double spacing) {
  const Eigen::Index n = v.size();
  if (n < 5) throw ValidationError("one-sided slope needs five samples");
  return (25.0 * v(n - 1) - 48.0 * v(n - 2) + 36.0 * v(n - 3) - 16.0 * v(n - 4) + 3.0 * v(n - 5)) /
         (12.0 * spacing);
}

}  // namespace swirl
