#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <type_traits>
#include <vector>

#include "swirl/errors.hpp"

namespace swirl {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

template <typename Value>
struct QuadratureResult {
  Value value{};
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kronrod_nodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Value>
struct Panel {
  double a;
  double b;
  Value value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename Value, typename F>
Panel<Value> gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Value fc = f(center);
  Value kronrod = fc * kronrod_weights[7];
  Value gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const Value sum = f(center - dx) + f(center + dx);
    kronrod += sum * kronrod_weights[j];
    if (j % 2 == 1) gauss += sum * gauss_weights[j / 2];
  }
  return {a, b, kronrod * half, std::abs(Value((kronrod - gauss) * half))};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |I|). `f` may return a real
/// or complex value. Nodes never touch the endpoints, so integrands that are
/// only defined on (a, b) are fine. Throws AccuracyError (carrying the
/// achieved estimate) when `max_intervals` is exhausted.
template <typename F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& options = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using Value = std::decay_t<std::invoke_result_t<F&, double>>;
  using Panel = detail::Panel<Value>;

  QuadratureResult<Value> result;
  if (a == b) return result;

  std::priority_queue<Panel> panels;
  panels.push(detail::gauss_kronrod_15<Value>(f, a, b));
  result.evaluations = 15;
  Value total = panels.top().value;
  double error = panels.top().error;
  if (!std::isfinite(std::abs(total)) || !std::isfinite(error)) {
    throw AccuracyError("non-finite integrand", error);
  }

  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
    if (static_cast<int>(panels.size()) >= options.max_intervals) {
      throw AccuracyError("adaptive quadrature did not converge", error);
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = detail::gauss_kronrod_15<Value>(f, worst.a, mid);
    Panel right = detail::gauss_kronrod_15<Value>(f, mid, worst.b);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    if (!std::isfinite(error)) throw AccuracyError("non-finite integrand", error);
  }

  // Re-sum in left-to-right order so the result does not depend on the
  // refinement history.
  std::vector<Panel> ordered;
  ordered.reserve(panels.size());
  while (!panels.empty()) {
    ordered.push_back(panels.top());
    panels.pop();
  }
  std::sort(ordered.begin(), ordered.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  result.value = Value{};
  result.error = 0.0;
  for (const Panel& p : ordered) {
    result.value += p.value;
    result.error += p.error;
  }
  return result;
}

/// Fixed composite 15-point Gauss-Kronrod rule on `intervals` equal panels.
/// Suited to piecewise-smooth integrands (splines) whose breakpoints
/// coincide with the panel edges.
template <typename F>
auto integrate_composite(F&& f, double a, double b, int intervals)
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using Value = std::decay_t<std::invoke_result_t<F&, double>>;
  QuadratureResult<Value> result;
  const double h = (b - a) / intervals;
  for (int i = 0; i < intervals; ++i) {
    const double left = a + i * h;
    const double right = i + 1 == intervals ? b : a + (i + 1) * h;
    const auto panel = detail::gauss_kronrod_15<Value>(f, left, right);
    result.value += panel.value;
    result.error += panel.error;
  }
  result.evaluations = 15 * intervals;
  if (!std::isfinite(std::abs(result.value))) throw AccuracyError("non-finite integrand", result.error);
  return result;
}

}  // namespace swirl
