#include "swirl/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "swirl/errors.hpp"

namespace swirl {

namespace {

constexpr double euler_gamma = 0.577215664901532860606512090082402;
constexpr double series_eps = 1e-17;
constexpr int max_terms = 1000;

void check_order(int order) {
  if (order != 0 && order != 1) {
    throw DomainError("Bessel order must be 0 or 1, got " + std::to_string(order));
  }
}

}  // namespace

namespace detail {

double bessel_i_series(int order, double x) {
  const double q = 0.25 * x * x;
  double term = order == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < max_terms; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (term <= series_eps * sum) break;
  }
  return sum;
}

double bessel_i_asymptotic_scaled(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < max_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) >= previous) break;  // series started to diverge
    sum += term;
    previous = std::abs(term);
    if (std::abs(term) <= series_eps * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_k_series(int order, double x) {
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  const double q = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  if (order == 0) {
    // K0 = -(ln(x/2) + gamma) I0 + sum_{k>=1} H_k (x^2/4)^k / (k!)^2
    double term = 1.0;
    double harmonic = 0.0;
    double sum = 0.0;
    for (int k = 1; k < max_terms; ++k) {
      term *= q / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      sum += harmonic * term;
      if (harmonic * term <= series_eps * std::abs(sum)) break;
    }
    return -(log_half + euler_gamma) * bessel_i_series(0, x) + sum;
  }
  // K1 = 1/x + ln(x/2) I1 - (x/4) sum_{k>=0} (H_k + H_{k+1} - 2 gamma) (x^2/4)^k / (k! (k+1)!)
  double term = 1.0;
  double h_k = 0.0;
  double h_k1 = 1.0;
  double sum = (h_k + h_k1 - 2.0 * euler_gamma) * term;
  for (int k = 1; k < max_terms; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    h_k = h_k1;
    h_k1 += 1.0 / (k + 1);
    const double contribution = (h_k + h_k1 - 2.0 * euler_gamma) * term;
    sum += contribution;
    if (std::abs(contribution) <= series_eps * std::abs(sum)) break;
  }
  return 1.0 / x + log_half * bessel_i_series(1, x) - 0.25 * x * sum;
}

double bessel_k_continued_fraction_scaled(int order, double x) {
  // Steed's method for the CF2 continued fraction (Temme), order mu = 0.
  const double eps = std::numeric_limits<double>::epsilon();
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  return order == 0 ? k0 : k0 * (x + 0.5 - h) / x;
}

}  // namespace detail

double bessel_i0_scaled(double x) {
  return x <= detail::i_series_limit ? detail::bessel_i_series(0, x) * std::exp(-x)
                                     : detail::bessel_i_asymptotic_scaled(0, x);
}

double bessel_i1_scaled(double x) {
  return x <= detail::i_series_limit ? detail::bessel_i_series(1, x) * std::exp(-x)
                                     : detail::bessel_i_asymptotic_scaled(1, x);
}

double bessel_k0_scaled(double x) {
  return x <= detail::k_series_limit ? detail::bessel_k_series(0, x) * std::exp(x)
                                     : detail::bessel_k_continued_fraction_scaled(0, x);
}

double bessel_k1_scaled(double x) {
  return x <= detail::k_series_limit ? detail::bessel_k_series(1, x) * std::exp(x)
                                     : detail::bessel_k_continued_fraction_scaled(1, x);
}

BesselPair bessel_i(int order, double x) {
  check_order(order);
  if (!(x >= 0.0)) throw DomainError("bessel_i requires x >= 0");
  if (x <= detail::i_series_limit) {
    const double v = detail::bessel_i_series(order, x);
    return {v, v * std::exp(-x), x};
  }
  const double s = detail::bessel_i_asymptotic_scaled(order, x);
  return {s * std::exp(x), s, x};
}

BesselPair bessel_k(int order, double x) {
  check_order(order);
  if (!(x > 0.0)) throw DomainError("bessel_k requires x > 0");
  if (x <= detail::k_series_limit) {
    const double v = detail::bessel_k_series(order, x);
    return {v, v * std::exp(x), x};
  }
  const double s = detail::bessel_k_continued_fraction_scaled(order, x);
  return {s * std::exp(-x), s, x};
}

HomogeneousSolutions::HomogeneousSolutions(int n) : n_(n), k_(std::abs(static_cast<double>(n))) {
  if (n == 0) throw InvalidModeError("homogeneous solutions need n != 0");
  ratio_scaled_ = bessel_k1_scaled(k_) / bessel_i1_scaled(k_);
}

double HomogeneousSolutions::xi(double r) const { return xi_scaled(r) * std::exp(k_ * r); }

double HomogeneousSolutions::xi_prime(double r) const {
  return xi_prime_scaled(r) * std::exp(k_ * r);
}

double HomogeneousSolutions::zeta(double r) const { return zeta_scaled(r) * std::exp(-k_ * r); }

double HomogeneousSolutions::zeta_prime(double r) const {
  return zeta_prime_scaled(r) * std::exp(-k_ * r);
}

double HomogeneousSolutions::xi_scaled(double r) const { return bessel_i0_scaled(k_ * r); }

double HomogeneousSolutions::xi_prime_scaled(double r) const { return k_ * bessel_i1_scaled(k_ * r); }

double HomogeneousSolutions::zeta_scaled(double r) const {
  const double kr = k_ * r;
  return ratio_scaled_ * bessel_i0_scaled(kr) * std::exp(2.0 * k_ * (r - 1.0)) + bessel_k0_scaled(kr);
}

double HomogeneousSolutions::zeta_prime_scaled(double r) const {
  const double kr = k_ * r;
  return k_ * (ratio_scaled_ * bessel_i1_scaled(kr) * std::exp(2.0 * k_ * (r - 1.0)) -
               bessel_k1_scaled(kr));
}

}  // namespace swirl
