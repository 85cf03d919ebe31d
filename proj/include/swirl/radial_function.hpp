#pragma once

#include <Eigen/Core>
#include <complex>
#include <variant>

#include "swirl/expression.hpp"
#include "swirl/spline.hpp"

namespace swirl {

/// Polynomial in r with coefficients in ascending powers.
struct Polynomial {
  Eigen::VectorXd coefficients;
};

/// Expression together with its first two symbolic derivatives.
struct SymbolicFunction {
  Expression f;
  Expression df;
  Expression d2f;
};

/// Real function on [0,1] with first and second derivatives.
///
/// Derivatives are exact for polynomials and expressions; for sampled tables
/// the natural cubic spline and its derivatives define the function.
class RadialFunction {
 public:
  using Representation = std::variant<Polynomial, SymbolicFunction, CubicSpline>;

  RadialFunction();  // identically zero
  explicit RadialFunction(Polynomial p);
  explicit RadialFunction(const Expression& e);
  explicit RadialFunction(CubicSpline s);

  static RadialFunction constant(double c);
  static RadialFunction polynomial(std::initializer_list<double> ascending);
  static RadialFunction expression(std::string_view text);
  static RadialFunction table(Eigen::VectorXd r, Eigen::VectorXd values);

  double operator()(double r) const { return value(r); }
  double value(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;

  /// True when the function is known to vanish identically.
  bool is_zero() const;

  RadialFunction scaled(double c) const;

  const Representation& representation() const { return rep_; }

 private:
  Representation rep_;
};

/// Complex radial function stored as a (real, imaginary) pair.
struct ComplexRadialFunction {
  RadialFunction re;
  RadialFunction im;

  ComplexRadialFunction() = default;
  ComplexRadialFunction(RadialFunction real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  ComplexRadialFunction(RadialFunction real, RadialFunction imag)
      : re(std::move(real)), im(std::move(imag)) {}

  std::complex<double> operator()(double r) const { return value(r); }
  std::complex<double> value(double r) const { return {re.value(r), im.value(r)}; }
  std::complex<double> derivative(double r) const { return {re.derivative(r), im.derivative(r)}; }
  std::complex<double> second_derivative(double r) const {
    return {re.second_derivative(r), im.second_derivative(r)};
  }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ComplexRadialFunction scaled(double c) const { return {re.scaled(c), im.scaled(c)}; }
};

}  // namespace swirl
