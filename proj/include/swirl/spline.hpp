#pragma once

#include <Eigen/Core>
#include <optional>

namespace swirl {

/// Interpolating cubic spline on strictly increasing knots.
///
/// End conditions are natural (S'' = 0) unless a slope is supplied for that
/// end, in which case the end is clamped. Outside the knot range the end
/// cubic piece is extrapolated.
class CubicSpline {
 public:
  struct EndSlopes {
    std::optional<double> left;
    std::optional<double> right;
  };

  CubicSpline() = default;
  CubicSpline(Eigen::VectorXd knots, Eigen::VectorXd values, EndSlopes slopes = {});

  double operator()(double x) const { return value(x); }
  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  const Eigen::VectorXd& knots() const { return x_; }
  const Eigen::VectorXd& values() const { return y_; }
  const Eigen::VectorXd& moments() const { return m_; }
  const EndSlopes& end_slopes() const { return slopes_; }

  /// Same spline with every value (and clamped slope) multiplied by `c`.
  CubicSpline scaled(double c) const;

 private:
  Eigen::Index interval(double x) const;

  Eigen::VectorXd x_;
  Eigen::VectorXd y_;
  Eigen::VectorXd m_;  // second derivatives at the knots
  EndSlopes slopes_;
  bool uniform_ = false;
};

/// Fourth-order one-sided estimate of the slope at the last sample of a
/// uniformly spaced sequence.
double one_sided_end_slope(const Eigen::Ref<const Eigen::VectorXd>& values, double spacing);

}  // namespace swirl
