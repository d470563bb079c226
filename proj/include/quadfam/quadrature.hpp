#pragma once

// Double-precision composite rules: the corrected-midpoint family, its
// interval-only and endpoint-derivative third-order variants, and the midpoint
// and Simpson baselines.
//
// Budget conventions (N = total evaluations):
//   corrected family, order n : M = N - (n-1) sub-intervals, h = (b-a)/M
//   interval3, derivative3    : M = N - 2
//   midpoint                  : M = N
//   simpson                   : N-1 panels of width (b-a)/(N-1), N odd

#include <quadfam/errors.hpp>
#include <quadfam/exact.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace quadfam {

template <typename F>
concept RealFunction = std::invocable<const F&, double> &&
                       std::convertible_to<std::invoke_result_t<const F&, double>, double>;

/// A real integrand with an optional closed-form derivative.
struct Integrand {
  std::function<double(double)> eval;
  std::function<double(double)> derivative;
  std::string label;

  bool has_derivative() const { return static_cast<bool>(derivative); }
  double operator()(double x) const { return eval(x); }
};

enum class Method { corrected, interval3, derivative3, midpoint, simpson };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::corrected: return "corrected";
    case Method::interval3: return "interval";
    case Method::derivative3: return "derivative";
    case Method::midpoint: return "midpoint";
    case Method::simpson: return "simpson";
  }
  return "?";
}

struct CompositePlan {
  double a = 0.0;
  double b = 1.0;
  int order = 3;
  std::int64_t points = 0;
  std::int64_t subintervals = 0;
  double step = 0.0;
  Method method = Method::corrected;
};

struct QuadratureOutcome {
  double value = 0.0;
  std::optional<double> base_midpoint;
  std::optional<double> correction;
  std::int64_t evaluations = 0;
};

struct MidpointErrorPrediction {
  double predicted = 0.0;
  std::optional<double> actual;
  std::optional<double> relative_deviation;
};

namespace detail {

template <RealFunction F>
double evaluate(const F& f, double x) {
  double y = 0.0;
  try {
    y = static_cast<double>(f(x));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError(x, e.what());
  }
  if (!std::isfinite(y)) throw EvaluationError(x, "non-finite value");
  return y;
}

inline void require_interval(double a, double b) {
  if (!(a < b)) throw InvalidPlan("integration bounds must satisfy a < b");
}

/// f sampled on the shifted grid a + (k + 1/2) h for k in [first, first + count).
template <RealFunction F>
struct HalfGrid {
  HalfGrid(const F& f, double a, double h, std::int64_t first, std::int64_t count) : first_(first) {
    values_.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = first; k < first + count; ++k)
      values_.push_back(evaluate(f, a + (static_cast<double>(k) + 0.5) * h));
  }

  double operator[](std::int64_t k) const { return values_[static_cast<std::size_t>(k - first_)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

private:
  std::int64_t first_;
  std::vector<double> values_;
};

template <RealFunction F>
double midpoint_sum(const HalfGrid<F>& grid, std::int64_t M) {
  double sum = 0.0;
  for (std::int64_t k = 0; k < M; ++k) sum += grid[k];
  return sum;
}

/// sum_i c_i [f_{-i} - f_{i-1} - f_{M-i} + f_{M+i-1}] on the half grid.
template <RealFunction F>
double correction_sum(const HalfGrid<F>& grid, std::int64_t M, const std::vector<double>& coeffs) {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    const auto i = static_cast<std::int64_t>(idx) + 1;
    sum += coeffs[idx] * (grid[-i] - grid[i - 1] - grid[M - i] + grid[M + i - 1]);
  }
  return sum;
}

inline std::vector<double> correction_doubles(int n) {
  std::vector<double> out;
  for (const auto& c : exact::correction_coefficients(n)) out.push_back(c.to_double());
  return out;
}

}  // namespace detail

/// Validates a request and resolves its sub-interval count and step.
inline CompositePlan make_plan(Method method, double a, double b, std::int64_t points, int order = 3) {
  detail::require_interval(a, b);
  CompositePlan plan;
  plan.a = a;
  plan.b = b;
  plan.points = points;
  plan.method = method;
  plan.order = order;
  switch (method) {
    case Method::corrected:
      if (order < 1 || order % 2 == 0) throw InvalidOrder("order must be odd and >= 1, got " + std::to_string(order));
      if (points < order)
        throw InvalidPlan("corrected rule of order " + std::to_string(order) + " needs N >= " +
                          std::to_string(order) + ", got " + std::to_string(points));
      plan.subintervals = points - (order - 1);
      break;
    case Method::interval3:
      if (order != 3) throw InvalidPlan("the interval-only rule exists for order 3 only");
      if (points < 6) throw InvalidPlan("interval-only rule needs N >= 6 (M >= 4), got " + std::to_string(points));
      plan.subintervals = points - 2;
      break;
    case Method::derivative3:
      if (order != 3) throw InvalidPlan("the derivative rule exists for order 3 only");
      if (points < 3) throw InvalidPlan("derivative rule needs N >= 3, got " + std::to_string(points));
      plan.subintervals = points - 2;
      break;
    case Method::midpoint:
      if (points < 1) throw InvalidPlan("midpoint rule needs M >= 1");
      plan.order = 1;
      plan.subintervals = points;
      break;
    case Method::simpson:
      if (points < 3 || points % 2 == 0)
        throw InvalidPlan("Simpson's rule needs odd N >= 3, got " + std::to_string(points));
      plan.subintervals = points - 1;
      break;
  }
  plan.step = (b - a) / static_cast<double>(plan.subintervals);
  return plan;
}

/// h * sum_{i<M} f(a + (i + 1/2) h), h = (b-a)/M, summed left to right.
template <RealFunction F>
QuadratureOutcome midpoint_rule(const F& f, double a, double b, std::int64_t M) {
  if (M < 1) throw InvalidPlan("midpoint rule needs M >= 1, got " + std::to_string(M));
  detail::require_interval(a, b);
  const double h = (b - a) / static_cast<double>(M);
  const detail::HalfGrid<F> grid(f, a, h, 0, M);
  QuadratureOutcome out;
  out.value = h * detail::midpoint_sum(grid, M);
  out.base_midpoint = out.value;
  out.correction = 0.0;
  out.evaluations = M;
  return out;
}

/// The order-n endpoint correction Delta_n for M sub-intervals of [a, b].
template <RealFunction F>
double correction_term(const F& f, double a, double b, int n, std::int64_t M) {
  if (n < 3 || n % 2 == 0) throw InvalidOrder("correction term needs odd n >= 3, got " + std::to_string(n));
  if (M < 1) throw InvalidPlan("correction term needs M >= 1, got " + std::to_string(M));
  detail::require_interval(a, b);
  const auto coeffs = detail::correction_doubles(n);
  const auto half = static_cast<std::int64_t>(coeffs.size());
  const double h = (b - a) / static_cast<double>(M);
  const detail::HalfGrid<F> grid(f, a, h, -half, M + 2 * half);
  return h * detail::correction_sum(grid, M, coeffs);
}

/// Corrected-midpoint family rule of odd order n with N total evaluations:
/// M_{N-(n-1)}(f) + Delta_n(f). Evaluates f up to (n-2)h/2 beyond [a, b].
template <RealFunction F>
QuadratureOutcome integrate(const F& f, double a, double b, int n, std::int64_t N) {
  const CompositePlan plan = make_plan(Method::corrected, a, b, N, n);
  const std::int64_t M = plan.subintervals;
  const double h = plan.step;
  QuadratureOutcome out;
  if (n == 1) {
    out = midpoint_rule(f, a, b, M);
    return out;
  }
  const auto coeffs = detail::correction_doubles(n);
  const auto half = static_cast<std::int64_t>(coeffs.size());
  const detail::HalfGrid<F> grid(f, a, h, -half, M + 2 * half);
  out.base_midpoint = h * detail::midpoint_sum(grid, M);
  out.correction = h * detail::correction_sum(grid, M, coeffs);
  out.value = *out.base_midpoint + *out.correction;
  out.evaluations = grid.size();
  return out;
}

/// Third-order rule using only abscissae in [a, b]. The first and last steps
/// interpolate {a, a+h/2, a+3h/2} (mirrored at b); interior steps use the
/// ordinary third-order rule. Combined, this is
///   M_{N-2} + h(f(a)+f(b))/9 - h(f(a+h/2)+f(b-h/2))/8 + h(f(a+3h/2)+f(b-3h/2))/72.
template <RealFunction F>
QuadratureOutcome integrate_interval3(const F& f, double a, double b, std::int64_t N) {
  const CompositePlan plan = make_plan(Method::interval3, a, b, N);
  const std::int64_t M = plan.subintervals;
  const double h = plan.step;
  const double fa = detail::evaluate(f, a);
  const detail::HalfGrid<F> grid(f, a, h, 0, M);
  const double fb = detail::evaluate(f, b);

  const double first = h * (2.0 * fa + 15.0 * grid[0] + grid[1]) / 18.0;
  const double last = h * (2.0 * fb + 15.0 * grid[M - 1] + grid[M - 2]) / 18.0;
  double interior = 0.0;
  for (std::int64_t k = 1; k < M - 1; ++k) interior += grid[k];
  interior *= h;
  // Ordinary third-order correction for the interior span [a+h, b-h].
  const double interior_correction = h * (grid[0] - grid[1] - grid[M - 2] + grid[M - 1]) / 24.0;

  QuadratureOutcome out;
  out.value = first + interior + interior_correction + last;
  out.base_midpoint = h * detail::midpoint_sum(grid, M);
  out.correction = out.value - *out.base_midpoint;
  out.evaluations = M + 2;
  return out;
}

/// Midpoint rule on M = N-2 sub-intervals plus (h^2/24)(f'(b) - f'(a)).
/// The two derivative evaluations count towards N.
template <RealFunction F, RealFunction DF>
QuadratureOutcome integrate_derivative3(const F& f, const DF& df, double a, double b, std::int64_t N) {
  const CompositePlan plan = make_plan(Method::derivative3, a, b, N);
  const std::int64_t M = plan.subintervals;
  const double h = plan.step;
  const detail::HalfGrid<F> grid(f, a, h, 0, M);
  const double dfa = detail::evaluate(df, a);
  const double dfb = detail::evaluate(df, b);
  QuadratureOutcome out;
  out.base_midpoint = h * detail::midpoint_sum(grid, M);
  out.correction = h * h / 24.0 * (dfb - dfa);
  out.value = *out.base_midpoint + *out.correction;
  out.evaluations = M + 2;
  return out;
}

inline QuadratureOutcome integrate_derivative3(const Integrand& f, double a, double b, std::int64_t N) {
  if (!f.has_derivative())
    throw CapabilityError("derivative rule needs an integrand with a derivative" +
                          (f.label.empty() ? std::string() : " (" + f.label + ")"));
  return integrate_derivative3(f.eval, f.derivative, a, b, N);
}

/// Composite Simpson on N-1 panels (N odd).
template <RealFunction F>
QuadratureOutcome simpson(const F& f, double a, double b, std::int64_t N) {
  const CompositePlan plan = make_plan(Method::simpson, a, b, N);
  const double w = plan.step;
  double sum = detail::evaluate(f, a);
  for (std::int64_t i = 1; i < N - 1; ++i)
    sum += (i % 2 == 1 ? 4.0 : 2.0) * detail::evaluate(f, a + static_cast<double>(i) * w);
  sum += detail::evaluate(f, b);
  QuadratureOutcome out;
  out.value = w / 3.0 * sum;
  out.evaluations = N;
  return out;
}

/// Uses the third-order correction as an estimate of the M-point midpoint error.
/// With the true integral, also reports the actual error and (predicted-actual)/actual;
/// the deviation is left empty when the actual error is zero.
template <RealFunction F>
MidpointErrorPrediction predict_midpoint_error(const F& f, double a, double b, std::int64_t M,
                                               std::optional<double> exact = std::nullopt) {
  MidpointErrorPrediction out;
  out.predicted = correction_term(f, a, b, 3, M);
  if (exact) {
    out.actual = *exact - midpoint_rule(f, a, b, M).value;
    if (*out.actual != 0.0) out.relative_deviation = (out.predicted - *out.actual) / *out.actual;
  }
  return out;
}

/// Step h = sqrt(|24 target / (f'(b) - f'(a))|) for which the derivative
/// correction equals the target error.
inline double suggest_step(double fprime_a, double fprime_b, double target_error) {
  if (!(target_error > 0.0)) throw InvalidInput("target error must be positive");
  const double gap = fprime_b - fprime_a;
  const double scale = std::max(std::abs(fprime_a), std::abs(fprime_b));
  if (gap == 0.0 || std::abs(gap) <= 4.0 * std::numeric_limits<double>::epsilon() * scale)
    throw DegenerateEstimator("step estimate needs f'(b) != f'(a)");
  return std::sqrt(std::abs(24.0 * target_error / gap));
}

/// Derivative-rule budget for the suggested step: ceil((b-a)/h) + 2.
inline std::int64_t suggest_point_count(double a, double b, double fprime_a, double fprime_b,
                                        double target_error) {
  detail::require_interval(a, b);
  const double h = suggest_step(fprime_a, fprime_b, target_error);
  return static_cast<std::int64_t>(std::ceil((b - a) / h)) + 2;
}

/// |R-hat_n| (b-a)^(n+2) bound / (N-n+1)^(n+1), where `deriv_bound` bounds
/// |f^(n+1)| on the widened interval the rule touches.
inline double error_bound(int n, double a, double b, std::int64_t N, double deriv_bound) {
  const CompositePlan plan = make_plan(Method::corrected, a, b, N, n);
  if (!(deriv_bound >= 0.0)) throw InvalidInput("derivative bound must be >= 0");
  const double constant = std::abs(exact::family_error_constant(n).to_double());
  return constant * std::pow(b - a, n + 2) * deriv_bound /
         std::pow(static_cast<double>(plan.subintervals), n + 1);
}

/// Runs a resolved plan. The derivative method needs `f.derivative`.
inline QuadratureOutcome run(const CompositePlan& plan, const Integrand& f) {
  switch (plan.method) {
    case Method::corrected: return integrate(f.eval, plan.a, plan.b, plan.order, plan.points);
    case Method::interval3: return integrate_interval3(f.eval, plan.a, plan.b, plan.points);
    case Method::derivative3: return integrate_derivative3(f, plan.a, plan.b, plan.points);
    case Method::midpoint: return midpoint_rule(f.eval, plan.a, plan.b, plan.points);
    case Method::simpson: return simpson(f.eval, plan.a, plan.b, plan.points);
  }
  throw InvalidPlan("unknown method");
}

}  // namespace quadfam
