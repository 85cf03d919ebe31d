#pragma once

namespace swirl {

/// A modified Bessel function value together with its exponentially scaled
/// form: `scaled_value` is value*exp(-x) for I and value*exp(x) for K.
/// For large x the plain value overflows (I) or underflows (K) while the
/// scaled value stays representable.
struct BesselPair {
  double value;
  double scaled_value;
  double x;
};

/// I_order(x) for order 0 or 1, x >= 0.
BesselPair bessel_i(int order, double x);

/// K_order(x) for order 0 or 1, x > 0.
BesselPair bessel_k(int order, double x);

// Scaled kernels; these skip the argument checks of bessel_i / bessel_k.
double bessel_i0_scaled(double x);  // I0(x) e^{-x}
double bessel_i1_scaled(double x);  // I1(x) e^{-x}
double bessel_k0_scaled(double x);  // K0(x) e^{x}
double bessel_k1_scaled(double x);  // K1(x) e^{x}

namespace detail {

inline constexpr double i_series_limit = 25.0;
inline constexpr double k_series_limit = 2.0;

// Individual evaluation branches, exposed for overlap testing.
double bessel_i_series(int order, double x);             // unscaled
double bessel_i_asymptotic_scaled(int order, double x);  // I e^{-x}
double bessel_k_series(int order, double x);             // unscaled, log-term series
double bessel_k_continued_fraction_scaled(int order, double x);  // K e^{x}

}  // namespace detail

/// Homogeneous solutions of (1/r)(r y')' - n^2 y = 0 on (0, 1]:
///
///     xi(r)   = I0(|n| r)
///     zeta(r) = (K1(|n|)/I1(|n|)) I0(|n| r) + K0(|n| r)     (zeta'(1) = 0)
///
/// The *_scaled accessors return xi e^{-|n| r} and zeta e^{|n| r} (and the
/// same factors for the derivatives). Products such as zeta*H or xi*J only
/// ever combine a scaled factor with an oppositely scaled one, so no
/// intermediate overflows for large |n|.
class HomogeneousSolutions {
 public:
  explicit HomogeneousSolutions(int n);

  int n() const { return n_; }
  double wavenumber() const { return k_; }

  double xi(double r) const;
  double xi_prime(double r) const;
  double zeta(double r) const;
  double zeta_prime(double r) const;

  double xi_scaled(double r) const;
  double xi_prime_scaled(double r) const;
  double zeta_scaled(double r) const;
  double zeta_prime_scaled(double r) const;

  /// K1(|n|)/I1(|n|) scaled by e^{2|n|}.
  double ratio_scaled() const { return ratio_scaled_; }

 private:
  int n_;
  double k_;
  double ratio_scaled_;
};

}  // namespace swirl
