#include "swirl/radial_function.hpp"

#include "swirl/errors.hpp"

namespace swirl {

namespace {

// Horner evaluation of p, p', p'' in one pass.
Eigen::Vector3d horner(const Eigen::VectorXd& c, double r) {
  double p = 0.0, dp = 0.0, d2p = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) {
    d2p = d2p * r + 2.0 * dp;
    dp = dp * r + p;
    p = p * r + c(k);
  }
  return {p, dp, d2p};
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

RadialFunction::RadialFunction() : rep_(Polynomial{Eigen::VectorXd::Zero(1)}) {}

RadialFunction::RadialFunction(Polynomial p) : rep_(std::move(p)) {
  if (std::get<Polynomial>(rep_).coefficients.size() == 0) {
    std::get<Polynomial>(rep_).coefficients = Eigen::VectorXd::Zero(1);
  }
}

RadialFunction::RadialFunction(const Expression& e) {
  const Expression d = e.derivative();
  rep_ = SymbolicFunction{e, d, d.derivative()};
}

RadialFunction::RadialFunction(CubicSpline s) : rep_(std::move(s)) {}

RadialFunction RadialFunction::constant(double c) {
  return RadialFunction(Polynomial{Eigen::VectorXd::Constant(1, c)});
}

RadialFunction RadialFunction::polynomial(std::initializer_list<double> ascending) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(ascending.size()));
  Eigen::Index i = 0;
  for (double v : ascending) c(i++) = v;
  return RadialFunction(Polynomial{c});
}

RadialFunction RadialFunction::expression(std::string_view text) {
  return RadialFunction(parse_expression(text));
}

RadialFunction RadialFunction::table(Eigen::VectorXd r, Eigen::VectorXd values) {
  return RadialFunction(CubicSpline(std::move(r), std::move(values)));
}

double RadialFunction::value(double r) const {
  return std::visit(overloaded{[r](const Polynomial& p) { return horner(p.coefficients, r)(0); },
                               [r](const SymbolicFunction& s) { return s.f(r); },
                               [r](const CubicSpline& s) { return s.value(r); }},
                    rep_);
}

double RadialFunction::derivative(double r) const {
  return std::visit(overloaded{[r](const Polynomial& p) { return horner(p.coefficients, r)(1); },
                               [r](const SymbolicFunction& s) { return s.df(r); },
                               [r](const CubicSpline& s) { return s.derivative(r); }},
                    rep_);
}

double RadialFunction::second_derivative(double r) const {
  return std::visit(overloaded{[r](const Polynomial& p) { return horner(p.coefficients, r)(2); },
                               [r](const SymbolicFunction& s) { return s.d2f(r); },
                               [r](const CubicSpline& s) { return s.second_derivative(r); }},
                    rep_);
}

bool RadialFunction::is_zero() const {
  return std::visit(
      overloaded{[](const Polynomial& p) { return (p.coefficients.array() == 0.0).all(); },
                 [](const SymbolicFunction& s) { return s.f.is_constant() && s.f(0.0) == 0.0; },
                 [](const CubicSpline& s) { return (s.values().array() == 0.0).all(); }},
      rep_);
}

RadialFunction RadialFunction::scaled(double c) const {
  return std::visit(
      overloaded{[c](const Polynomial& p) { return RadialFunction(Polynomial{p.coefficients * c}); },
                 [c](const SymbolicFunction& s) { return RadialFunction(Expression(c) * s.f); },
                 [c](const CubicSpline& s) { return RadialFunction(s.scaled(c)); }},
      rep_);
}

}  // namespace swirl
