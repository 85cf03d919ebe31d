#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "swirl/curvature.hpp"
#include "swirl/errors.hpp"
#include "swirl/profile.hpp"

using doctest::Approx;
using swirl::FourierMode;
using swirl::RadialFunction;
using swirl::RadialProfile;

namespace {

constexpr double pi = std::numbers::pi;

RadialFunction expr(const char* text) { return RadialFunction::expression(text); }
RadialProfile profile(const char* text) { return RadialProfile(expr(text)); }

// g supported in [a, b]: ((r-a)(b-r))^4 sampled as a spline table.
RadialFunction bump(double a, double b) {
  const int count = 2001;
  Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(count, 0.0, 1.0);
  Eigen::VectorXd v(count);
  const double peak = std::pow((b - a) * (b - a) / 4.0, 4);
  for (int i = 0; i < count; ++i) {
    v(i) = r(i) > a && r(i) < b ? std::pow((r(i) - a) * (b - r(i)), 4) / peak : 0.0;
  }
  return RadialFunction::table(r, v);
}

FourierMode random_mode(oracle::Generator& gen, int n) {
  auto poly = [&](int leading_power, bool wall_zero) {
    const int degree = gen.integer(0, 3);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(leading_power + degree + 2);
    for (int k = 0; k <= degree; ++k) {
      const double a = gen.uniform(-1.0, 1.0);
      c(leading_power + k) += a;
      if (wall_zero) c(leading_power + k + 1) -= a;
    }
    return RadialFunction(swirl::Polynomial{c});
  };
  return FourierMode(n, {poly(2, true), poly(2, true)}, {poly(1, false), poly(1, false)});
}

RadialProfile random_profile(oracle::Generator& gen) {
  Eigen::VectorXd c(4);
  c << gen.uniform(0.5, 2.0), 0.0, gen.uniform(-0.4, 0.4), gen.uniform(-0.4, 0.4);
  return RadialProfile(RadialFunction(swirl::Polynomial{c}));
}

// Curvature for u = 1, n = 1, g = 0, f = r(1 - r), from the I1 power series
// integrated term by term for H and composite Simpson for the outer integral.
double pure_f_curvature_oracle() {
  auto i1 = [](long double x) { return oracle::bessel_i_series(1, x); };
  auto h = [](long double r) {
    // H(r) = int_0^r (s^3 - s^4) I1(s) ds, I1(s) = sum a_k s^{2k+1}
    long double sum = 0.0L, a = 0.5L;
    for (int k = 0; k < 40; ++k) {
      if (k > 0) a /= 4.0L * k * (k + 1);
      const int p = 2 * k + 1;
      sum += a * (std::pow(r, p + 4) / (p + 4) - std::pow(r, p + 5) / (p + 5));
    }
    return sum;
  };
  const int panels = 4000;
  long double total = 0.0L;
  for (int i = 0; i <= panels; ++i) {
    const long double r = static_cast<long double>(i) / panels;
    const long double w = (i == 0 || i == panels) ? 1.0L : (i % 2 ? 4.0L : 2.0L);
    const long double value = i == 0 ? 0.0L : h(r) * h(r) / (r * i1(r) * i1(r));
    total += w * value;
  }
  return static_cast<double>(4.0L * pi * pi * total / (3.0L * panels));
}

}  // namespace

TEST_CASE("compute_HJ examples") {
  const RadialProfile one = profile("1");
  const FourierMode pure_g(1, expr("r^2*(1-r)"), RadialFunction());
  for (double r : {0.0, 0.3, 1.0}) {
    const auto hj = swirl::compute_HJ(one, pure_g, r);
    CHECK(std::abs(hj.H) == 0.0);
    CHECK(std::abs(hj.J) == 0.0);
  }
  const FourierMode f_r = FourierMode::unchecked(1, RadialFunction(), expr("r"));
  const auto at_wall = swirl::compute_HJ(one, f_r, 1.0);
  CHECK(at_wall.H.real() == Approx(oracle::integral_s3_i1()).epsilon(1e-12));
  CHECK(at_wall.H.real() == Approx(0.109223).epsilon(1e-5));
  CHECK(std::abs(at_wall.J) == 0.0);
  CHECK_THROWS_AS(swirl::compute_HJ(one, FourierMode(0, RadialFunction(), expr("r")), 0.5), swirl::InvalidModeError);
  CHECK_THROWS_AS(swirl::compute_HJ(one, f_r, 1.2), swirl::DomainError);
}

TEST_CASE("compute_HJ scaled values stay finite for large n") {
  const FourierMode m(3000, RadialFunction(), expr("r*(1-r)"));
  const auto hj = swirl::compute_HJ(profile("1 + r^2"), m, 0.6);
  CHECK(std::isfinite(std::abs(hj.H_scaled)));
  CHECK(std::isfinite(std::abs(hj.J_scaled)));
  CHECK(std::abs(hj.H_scaled) > 0.0);
}

TEST_CASE("closed-form pressure") {
  const RadialProfile one = profile("1");
  SUBCASE("no swirl perturbation, no pressure") {
    const auto q = swirl::pressure_closed_form(one, FourierMode(2, expr("r^2*(1-r)"), RadialFunction()));
    for (double r : {0.0, 0.5, 1.0}) CHECK(std::abs(q.q(r)) == 0.0);
  }
  SUBCASE("Neumann condition at the wall") {
    const RadialProfile p = profile("1 + r^2");
    for (int n : {1, 3, 10, 200}) {
      const FourierMode m = FourierMode::unchecked(n, RadialFunction(), expr("r"));
      const auto q = swirl::pressure_closed_form(p, m);
      CHECK(std::abs(q.q_prime(1.0) - (-1.0 * 2.0)) <= 1e-10);
    }
  }
  SUBCASE("ODE residual") {
    const FourierMode m(1, RadialFunction(), expr("r*(1-r)"));
    const auto q = swirl::pressure_closed_form(one, m);
    CHECK(swirl::pressure_ode_residual(one, m, q, 512) <= 1e-8);
    CHECK(q.source == swirl::PressureSolution::Source::closed_form);
  }
  CHECK_THROWS_AS(swirl::pressure_closed_form(one, FourierMode(0, RadialFunction(), expr("r"))),
                  swirl::InvalidModeError);
}

TEST_CASE("BVP pressure agrees with the closed form") {
  const RadialProfile one = profile("1");
  SUBCASE("zero source") {
    const auto q = swirl::pressure_bvp_solve(one, FourierMode(1, expr("r^2*(1-r)"), RadialFunction()), 256);
    for (double r : {0.0, 0.4, 1.0}) CHECK(std::abs(q.q(r)) <= 1e-10);
  }
  for (int n : {1, 10}) {
    CAPTURE(n);
    const FourierMode m(n, RadialFunction(), expr("r*(1-r)"));
    const auto bvp = swirl::pressure_bvp_solve(one, m, 4096);
    const auto closed = swirl::pressure_closed_form(one, m);
    CHECK(bvp.grid == 4096);
    CHECK(bvp.source == swirl::PressureSolution::Source::bvp);
    for (int i = 0; i <= 50; ++i) {
      const double r = i / 50.0;
      CHECK(std::abs(bvp.q(r) - closed.q(r)) <= 1e-7);
      CHECK(std::abs(bvp.q_prime(r) - closed.q_prime(r)) <= 1e-6);
    }
    CHECK(swirl::pressure_ode_residual(one, m, bvp, 512) <= 1e-6);
  }
  CHECK_THROWS_AS(swirl::pressure_bvp_solve(one, FourierMode(1, RadialFunction(), expr("r")), 63),
                  swirl::ValidationError);
  CHECK_THROWS_AS(swirl::pressure_bvp_solve(one, FourierMode(0, RadialFunction(), expr("r")), 128),
                  swirl::InvalidModeError);
}

TEST_CASE("closed-form curvature examples") {
  const RadialProfile one = profile("1");
  const FourierMode m(1, expr("r^2*(1-r)"), RadialFunction());
  CHECK(swirl::curvature_mode_closed(one, m) == Approx(pi * pi / 15).epsilon(1e-12));
  CHECK(swirl::curvature_mode_closed(profile("2 - r^2"), FourierMode(0, expr("r^3"), expr("r"))) == 0.0);
  const double pure_f = swirl::curvature_mode_closed(one, FourierMode(1, RadialFunction(), expr("r*(1-r)")));
  CHECK(pure_f > 0.0);
  CHECK(pure_f == Approx(pure_f_curvature_oracle()).epsilon(1e-10));
}

TEST_CASE("oracle curvature examples") {
  const RadialProfile one = profile("1");
  CHECK(swirl::curvature_mode_oracle(one, FourierMode(1, expr("r^2*(1-r)"), RadialFunction())) ==
        Approx(pi * pi / 15).epsilon(1e-7));
  CHECK(swirl::curvature_mode_oracle(profile("r"), FourierMode(2, expr("r^2*(1-r)^3"), RadialFunction())) >= -1e-10);
  CHECK(swirl::curvature_mode_oracle(profile("2 - r^2"), FourierMode(1, bump(0.7, 0.9), RadialFunction())) < 0.0);
  CHECK(swirl::curvature_mode_closed(profile("2 - r^2"), FourierMode(1, bump(0.7, 0.9), RadialFunction())) < 0.0);
  const FourierMode pure_f(1, RadialFunction(), expr("r*(1-r)"));
  CHECK(swirl::curvature_mode_oracle(one, pure_f) == Approx(pure_f_curvature_oracle()).epsilon(1e-8));
}

TEST_CASE("evaluate_curvature fills every field") {
  const auto r = swirl::evaluate_curvature(profile("1 + r^2"), FourierMode(2, expr("r^2*(1-r)"), expr("r*(1-r)")));
  CHECK(r.n == 2);
  CHECK(r.kbar_closed > 0.0);
  CHECK(r.discrepancy <= 1e-6);
  CHECK(r.discrepancy == Approx(std::abs(r.kbar_closed - r.kbar_oracle) / (1 + std::abs(r.kbar_closed))));
  CHECK(r.k_normalized > 0.0);
  CHECK(r.imaginary_residue <= 1e-10);
  CHECK(r.closed_error >= 0.0);
}

TEST_CASE("curvature_total") {
  const RadialProfile p = profile("1 + r^2");
  const FourierMode a(1, expr("r^2*(1-r)"), expr("r*(1-r)"));
  const FourierMode b(2, expr("r^2*(1-r)^2"), expr("r^2"));
  const double ka = swirl::curvature_mode_closed(p, a);
  const double kb = swirl::curvature_mode_closed(p, b);
  CHECK(swirl::curvature_total(p, {a}) == ka);
  CHECK(swirl::curvature_total(p, {a, b}) == Approx(ka + kb).epsilon(1e-10));
  CHECK(swirl::curvature_combined_oracle(p, {a, b}) == Approx(ka + kb).epsilon(1e-6));
  CHECK_THROWS_AS(swirl::curvature_total(p, {a, a}), swirl::ValidationError);
  CHECK(swirl::curvature_total(p, {a, b, FourierMode(0, expr("r^3"), RadialFunction())},
                               swirl::ModeConvention::real_field) == Approx(2 * (ka + kb)).epsilon(1e-10));
  const FourierMode neg(-1, expr("r^2*(1-r)"), RadialFunction());
  CHECK_THROWS_AS(swirl::curvature_total(p, {neg}, swirl::ModeConvention::real_field), swirl::ValidationError);
}

TEST_CASE("normalized curvature") {
  const RadialProfile one = profile("1");
  const FourierMode m(1, expr("r^2*(1-r)"), RadialFunction());
  CHECK(swirl::curvature_normalized(one, m) == Approx(1.0 / (16 * pi * pi)).epsilon(1e-12));
  CHECK(swirl::curvature_normalized(one, m.scaled(10.0)) ==
        Approx(swirl::curvature_normalized(one, m)).epsilon(1e-10));
  // u = r, Y = r d/dtheta = X
  CHECK_THROWS_AS(swirl::curvature_normalized(profile("r"), FourierMode(0, RadialFunction(), expr("r"))),
                  swirl::DegenerateSectionError);
  CHECK_THROWS_AS(swirl::curvature_normalized(one, FourierMode(1, expr("sin(pi*r)"), RadialFunction())),
                  swirl::RegularityError);
}

TEST_CASE("reduced normalized curvature decreases with oscillation") {
  const RadialProfile one = profile("1");
  double previous = INFINITY;
  for (int k = 1; k <= 32; ++k) {
    const std::string text = "sin(" + std::to_string(k) + "*pi*r)";
    const double value =
        swirl::reduced_normalized_curvature(one, FourierMode(1, RadialFunction::expression(text), RadialFunction()));
    CHECK(value > 0.0);
    CHECK(value < previous);
    previous = value;
  }
  CHECK_THROWS_AS(swirl::reduced_normalized_curvature(one, FourierMode(1, RadialFunction(), expr("r"))),
                  swirl::ValidationError);
}

TEST_CASE("property: closed form agrees with the oracle") {
  oracle::Generator gen(0xc0a1);
  for (int trial = 0; trial < 12; ++trial) {
    const RadialProfile p = random_profile(gen);
    const int n = gen.integer(1, 12) * (gen.integer(0, 1) ? 1 : -1);
    const FourierMode m = random_mode(gen, n);
    const auto r = swirl::evaluate_curvature(p, m);
    CAPTURE(n);
    CHECK(r.discrepancy <= 1e-6);
    CHECK(r.imaginary_residue <= 1e-10);
  }
}

TEST_CASE("property: positive eta gives positive curvature") {
  oracle::Generator gen(0xc0a2);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const RadialProfile p = random_profile(gen);
    if (!swirl::classify_criteria(p, 128).eta_strictly_positive) continue;
    ++checked;
    const FourierMode m = random_mode(gen, gen.integer(1, 20));
    CHECK(swirl::curvature_mode_closed(p, m) > 0.0);
  }
  CHECK(checked > 20);
}

TEST_CASE("property: nonnegative eta gives nonnegative curvature") {
  oracle::Generator gen(0xc0a3);
  const RadialProfile p = profile("r");
  for (int trial = 0; trial < 30; ++trial) {
    CHECK(swirl::curvature_mode_closed(p, random_mode(gen, gen.integer(1, 20))) >= -1e-10);
  }
}

TEST_CASE("property: negative eta admits negative curvature") {
  for (const char* u : {"2 - r^2", "1 - r^3", "cos(2*r)"}) {
    const RadialProfile p = profile(u);
    const auto report = swirl::classify_criteria(p, 256);
    REQUIRE_FALSE(report.eta_nonnegative);
    // the bump sits around the most negative sampled point
    double worst = 0.5, value = INFINITY;
    for (int i = 1; i < 200; ++i) {
      const double r = i / 200.0;
      if (p.curvature_density(r) < value) {
        value = p.curvature_density(r);
        worst = r;
      }
    }
    const double a = std::max(0.01, worst - 0.05), b = std::min(0.99, worst + 0.05);
    CAPTURE(u);
    CHECK(swirl::curvature_mode_closed(p, FourierMode(1, bump(a, b), RadialFunction())) < 0.0);
  }
}

TEST_CASE("property: quadratic homogeneity and reality") {
  oracle::Generator gen(0xc0a4);
  for (int trial = 0; trial < 30; ++trial) {
    const RadialProfile p = random_profile(gen);
    const FourierMode m = random_mode(gen, gen.integer(-15, 15));
    const double c = gen.uniform(0.1, 10.0);
    const double k = swirl::curvature_mode_closed(p, m);
    CHECK(std::abs(swirl::curvature_mode_closed(p, m.scaled(c)) - c * c * k) <= 1e-10 * c * c * std::abs(k) + 1e-300);
  }
}

TEST_CASE("large n stays finite") {
  const FourierMode m(200, expr("r^2*(1-r)"), expr("r*(1-r)"));
  const auto r = swirl::evaluate_curvature(profile("1 + r^2"), m);
  CHECK(std::isfinite(r.kbar_closed));
  CHECK(std::isfinite(r.kbar_oracle));
  CHECK(std::isfinite(r.k_normalized));
  CHECK(r.discrepancy <= 1e-6);
}
