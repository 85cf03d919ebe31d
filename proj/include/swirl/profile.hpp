#pragma once

#include <string>
#include <vector>

#include "swirl/radial_function.hpp"

namespace swirl {

/// Swirl profile u(r) of the steady field X = u(r) d/dtheta on the solid
/// torus. The member accessors do not check the domain; the free functions
/// below do.
class RadialProfile {
 public:
  RadialProfile() : u_(RadialFunction::constant(1.0)) {}
  explicit RadialProfile(RadialFunction u) : u_(std::move(u)) {}

  const RadialFunction& u() const { return u_; }

  double value(double r) const { return u_.value(r); }
  double derivative(double r) const { return u_.derivative(r); }
  double second_derivative(double r) const { return u_.second_derivative(r); }

  /// omega = 2u + r u'  (curl X = omega dz).
  double vorticity(double r) const { return 2.0 * u_.value(r) + r * u_.derivative(r); }

  /// eta = d/dr (r u^2) = u^2 + 2 r u u'.
  double curvature_density(double r) const {
    const double u = u_.value(r);
    return u * u + 2.0 * r * u * u_.derivative(r);
  }

 private:
  RadialFunction u_;
};

struct ProfileValue {
  double u;
  double u_prime;
};

/// u(r), u'(r). Throws DomainError for r outside [0,1].
ProfileValue eval_profile(const RadialProfile& p, double r);
double vorticity(const RadialProfile& p, double r);
double curvature_density(const RadialProfile& p, double r);

struct WitnessPoint {
  std::string criterion;  // "eta" or "u_omega"
  double r;
  double value;
};

struct CriteriaReport {
  bool eta_strictly_positive = false;
  bool eta_nonnegative = false;
  bool u_omega_positive = false;
  double eta_min = 0.0;
  double u_omega_min = 0.0;
  double eta_tolerance = 0.0;
  double u_omega_tolerance = 0.0;
  std::vector<WitnessPoint> witness_points;
};

inline constexpr double default_positivity_tolerance = 1e-12;

/// Checks eta > 0 (positive curvature) and u*omega > 0 (conjugate points)
/// on sample_count Chebyshev points plus both endpoints, refined by
/// bisection at every sign change. A value counts as positive when it is at
/// least relative_tolerance * (1 + max|value|).
CriteriaReport classify_criteria(const RadialProfile& p, int sample_count,
                                 double relative_tolerance = default_positivity_tolerance);

}  // namespace swirl
