#pragma once

// Exact derivation of interpolatory weights, endpoint-correction coefficients,
// Peano-normalized error constants and Newton-Cotes counterparts.
//
// Sign convention throughout: error = (true integral) - (rule value).

#include <quadfam/errors.hpp>
#include <quadfam/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quadfam::exact {

/// Weights of an interpolatory rule on `nodes`, integrating over [lo, hi].
/// Weights are plain integrals of the Lagrange basis, so they sum to hi - lo.
struct NodeRule {
  std::vector<Rational> nodes;
  Rational lo;
  Rational hi;
  std::vector<Rational> weights;

  std::size_t size() const { return nodes.size(); }
  Rational width() const { return hi - lo; }

  /// Rule applied to u^degree.
  Rational apply_monomial(unsigned degree) const {
    Rational sum;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[j] * pow(nodes[j], degree);
    return sum;
  }

  /// Exact integral of u^degree over the window.
  Rational integrate_monomial(unsigned degree) const {
    return (pow(hi, degree + 1) - pow(lo, degree + 1)) / Rational(static_cast<long>(degree) + 1);
  }

  /// (true integral) - (rule value) for u^degree.
  Rational monomial_error(unsigned degree) const {
    return integrate_monomial(degree) - apply_monomial(degree);
  }
};

/// Half-weight vector [w_0 .. w_nhat] of the odd-order family rule together with
/// the endpoint correction coefficients c_i = sum_{k>=i} w_k.
struct RuleWeights {
  int order = 1;
  int half_order = 0;
  std::vector<Rational> weights;
  std::vector<Rational> correction_coeffs;

  /// Palindromic weight vector (w_nhat, ..., w_1, w_0, w_1, ..., w_nhat).
  std::vector<Rational> full_weights() const {
    std::vector<Rational> out(weights.rbegin(), weights.rend() - 1);
    out.insert(out.end(), weights.begin(), weights.end());
    return out;
  }

  /// The same rule as a NodeRule on nodes -nhat..nhat over [-1/2, 1/2].
  NodeRule node_rule() const {
    NodeRule rule;
    for (int k = -half_order; k <= half_order; ++k) rule.nodes.emplace_back(k);
    rule.lo = Rational(-1, 2);
    rule.hi = Rational(1, 2);
    rule.weights = full_weights();
    return rule;
  }
};

struct ComparisonMetrics {
  int order = 3;
  Rational family_constant;
  Rational nc_constant;
  Rational ratio_inf;
  Rational ratio_zero;
  std::int64_t transition_point = 0;
};

struct NewtonCotesRule {
  int points = 2;
  NodeRule rule;
  /// Degree at which the Peano constant is taken: p+1 for odd p (symmetry), p otherwise.
  unsigned degree = 2;
  /// Simple-rule constant in node-spacing units.
  Rational simple_constant;
  /// simple_constant / (p - 1): composite error is this times (b-a)^(degree+1) f^(degree) / (N-1)^degree.
  Rational composite_constant;
};

namespace detail {

inline BigInt lcm_up_to(unsigned n) {
  BigInt out = 1;
  for (unsigned k = 2; k <= n; ++k) mpz_lcm_ui(out.get_mpz_t(), out.get_mpz_t(), k);
  return out;
}

inline void require_odd_order(int n, int minimum) {
  if (n < minimum || n % 2 == 0)
    throw InvalidOrder("order must be odd and >= " + std::to_string(minimum) + ", got " +
                       std::to_string(n));
}

}  // namespace detail

/// Integrates each Lagrange basis polynomial on `nodes` over [lo, hi] exactly.
///
/// The node set and window are scaled by the lcm of their denominators so the
/// node polynomial prod(t - t_i) has integer coefficients. Each basis numerator
/// is obtained from it by synthetic division and integrated term by term over a
/// common denominator, so only one rational canonicalization happens per weight.
inline NodeRule interpolatory_weights(std::span<const Rational> nodes, const Rational& lo,
                                      const Rational& hi) {
  if (nodes.empty()) throw InvalidInput("interpolatory_weights: empty node set");
  if (!(lo < hi)) throw InvalidInput("interpolatory_weights: window must satisfy lo < hi");
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (nodes[j] == nodes[j - 1])
      throw InvalidInput("interpolatory_weights: duplicate node " + nodes[j].to_string());
    if (nodes[j] < nodes[j - 1])
      throw InvalidInput("interpolatory_weights: nodes must be strictly increasing");
  }

  BigInt scale = lo.denominator();
  mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), hi.denominator().get_mpz_t());
  for (const auto& x : nodes) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.denominator().get_mpz_t());

  const std::size_t count = nodes.size();
  std::vector<BigInt> t(count);
  for (std::size_t j = 0; j < count; ++j) t[j] = nodes[j].numerator() * (scale / nodes[j].denominator());
  const BigInt A = lo.numerator() * (scale / lo.denominator());
  const BigInt B = hi.numerator() * (scale / hi.denominator());

  // prod_i (t - t_i), ascending coefficients.
  std::vector<BigInt> node_poly{BigInt(1)};
  for (const auto& ti : t) {
    std::vector<BigInt> next(node_poly.size() + 1);
    for (std::size_t k = 0; k < node_poly.size(); ++k) {
      next[k + 1] += node_poly[k];
      next[k] -= node_poly[k] * ti;
    }
    node_poly = std::move(next);
  }

  // factor[m] = (B^{m+1} - A^{m+1}) * lcm / (m+1), so sum q_m factor[m] = lcm * integral.
  const BigInt common = detail::lcm_up_to(static_cast<unsigned>(count));
  std::vector<BigInt> factor(count);
  BigInt a_pow = A;
  BigInt b_pow = B;
  for (std::size_t m = 0; m < count; ++m) {
    factor[m] = (b_pow - a_pow) * (common / BigInt(static_cast<unsigned long>(m + 1)));
    a_pow *= A;
    b_pow *= B;
  }

  NodeRule rule;
  rule.nodes.assign(nodes.begin(), nodes.end());
  rule.lo = lo;
  rule.hi = hi;
  rule.weights.reserve(count);
  std::vector<BigInt> quotient(count);
  for (std::size_t j = 0; j < count; ++j) {
    // node_poly / (t - t_j), highest coefficient first.
    quotient[count - 1] = node_poly[count];
    for (std::size_t k = count - 1; k > 0; --k) quotient[k - 1] = node_poly[k] + t[j] * quotient[k];

    BigInt integral = 0;
    for (std::size_t m = 0; m < count; ++m) integral += quotient[m] * factor[m];

    BigInt denom = 1;
    for (std::size_t i = 0; i < count; ++i)
      if (i != j) denom *= t[j] - t[i];

    // Integral in t-units is divided by `scale` to return to u-units.
    rule.weights.emplace_back(integral, BigInt(common * denom * scale));
  }
  return rule;
}

inline NodeRule interpolatory_weights(const std::vector<Rational>& nodes, const Rational& lo,
                                      const Rational& hi) {
  return interpolatory_weights(std::span<const Rational>(nodes), lo, hi);
}

/// Normalized weights of the n-point family rule: nodes -nhat..nhat, window [-1/2, 1/2].
inline RuleWeights family_weights(int n) {
  detail::require_odd_order(n, 1);
  const int half = (n - 1) / 2;
  std::vector<Rational> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  for (int k = -half; k <= half; ++k) nodes.emplace_back(k);
  const NodeRule rule = interpolatory_weights(nodes, Rational(-1, 2), Rational(1, 2));

  RuleWeights out;
  out.order = n;
  out.half_order = half;
  out.weights.assign(rule.weights.begin() + half, rule.weights.end());
  out.correction_coeffs.resize(static_cast<std::size_t>(half));
  Rational tail;
  for (int i = half; i >= 1; --i) {
    tail += out.weights[static_cast<std::size_t>(i)];
    out.correction_coeffs[static_cast<std::size_t>(i - 1)] = tail;
  }
  return out;
}

/// Coefficients c_1..c_nhat multiplying
/// [f(a-(i-1/2)h) - f(a+(i-1/2)h) - f(b-(i-1/2)h) + f(b+(i-1/2)h)] in the correction term.
inline std::vector<Rational> correction_coefficients(int n) {
  detail::require_odd_order(n, 3);
  return family_weights(n).correction_coeffs;
}

/// [integral(u^degree) - rule(u^degree)] / degree!, after checking that every lower
/// degree is integrated exactly (otherwise the constant depends on the window).
inline Rational peano_constant(const NodeRule& rule, unsigned degree) {
  if (degree < 1) throw InvalidInput("peano_constant: degree must be >= 1");
  for (unsigned d = 0; d < degree; ++d) {
    if (!rule.monomial_error(d).is_zero())
      throw ConventionViolation("peano_constant: rule is not exact at degree " + std::to_string(d) +
                                " < " + std::to_string(degree));
  }
  return rule.monomial_error(degree) / Rational(factorial(degree));
}

/// R-hat_n of the n-point family rule, i.e. the Peano constant at degree n+1.
inline Rational family_error_constant(int n) {
  const NodeRule rule = family_weights(n).node_rule();
  // peano_constant also verifies exactness through degree n.
  return peano_constant(rule, static_cast<unsigned>(n) + 1);
}

/// Closed Newton-Cotes rule on p points 0..p-1 over [0, p-1].
inline NewtonCotesRule newton_cotes_rule(int p) {
  if (p < 2) throw InvalidInput("newton_cotes_rule: need at least 2 points, got " + std::to_string(p));
  std::vector<Rational> nodes;
  for (int k = 0; k < p; ++k) nodes.emplace_back(k);
  NewtonCotesRule out;
  out.points = p;
  out.rule = interpolatory_weights(nodes, Rational(0), Rational(p - 1));
  out.degree = static_cast<unsigned>(p % 2 == 1 ? p + 1 : p);
  out.simple_constant = peano_constant(out.rule, out.degree);
  out.composite_constant = out.simple_constant / Rational(p - 1);
  return out;
}

/// Sum of absolute weights after normalizing them to sum to one.
inline Rational stability_sum(const NodeRule& rule) {
  Rational total;
  Rational absolute;
  for (const auto& w : rule.weights) {
    total += w;
    absolute += abs(w);
  }
  return absolute / total;
}

inline Rational stability_sum(const RuleWeights& rule) {
  Rational absolute = abs(rule.weights.front());
  for (std::size_t k = 1; k < rule.weights.size(); ++k) absolute += Rational(2) * abs(rule.weights[k]);
  return absolute;
}

/// The rule transported to [lo, hi] by the affine map of its window.
inline NodeRule affine_map(const NodeRule& rule, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw InvalidInput("affine_map: window must satisfy lo < hi");
  const Rational s = (hi - lo) / rule.width();
  NodeRule out;
  out.lo = lo;
  out.hi = hi;
  for (const auto& x : rule.nodes) out.nodes.push_back(lo + (x - rule.lo) * s);
  for (const auto& w : rule.weights) out.weights.push_back(w * s);
  return out;
}

/// The ceiling-formula estimate of N*, used only to cross-check the integer scan.
/// The exponent is 1/(n+1); with 1/(n-1) the formula does not reproduce N*(3) = 8.
inline double transition_point_estimate(int n, double ratio_zero) {
  const double s = std::pow(ratio_zero, 1.0 / (n + 1));
  const double m = n - 1;
  return (1.0 - m * m / s) / (1.0 - m / s);
}

/// Family vs same-order closed Newton-Cotes: asymptotic and initial error
/// ratios plus the smallest budget N at which the family's composite constant wins.
inline ComparisonMetrics comparison_metrics(int n, int max_order = 21) {
  detail::require_odd_order(n, 3);
  if (n > max_order)
    throw InvalidOrder("comparison_metrics: order " + std::to_string(n) + " exceeds max " +
                       std::to_string(max_order));

  ComparisonMetrics m;
  m.order = n;
  m.family_constant = family_error_constant(n);
  m.nc_constant = newton_cotes_rule(n).composite_constant;
  m.ratio_inf = abs(m.family_constant / m.nc_constant);
  m.ratio_zero = m.ratio_inf * pow(Rational(n - 1), static_cast<unsigned>(n + 1));

  // |family| / (N-n+1)^(n+1) < |nc| / (N-1)^(n+1), cross-multiplied.
  const Rational fam = abs(m.family_constant);
  const Rational nc = abs(m.nc_constant);
  const auto e = static_cast<unsigned>(n + 1);
  std::int64_t N = n;
  while (!(fam * pow(Rational(static_cast<long>(N - 1)), e) < nc * pow(Rational(static_cast<long>(N - n + 1)), e)))
    ++N;
  m.transition_point = N;
  return m;
}

/// A linear functional sum_k c_k f^(d_k)(x_k) compared against the integral over [lo, hi].
struct HermiteTerm {
  Rational coefficient;
  Rational point;
  unsigned derivative = 0;
};

struct HermiteRule {
  std::vector<HermiteTerm> terms;
  Rational lo;
  Rational hi;

  Rational apply_monomial(unsigned degree) const {
    Rational sum;
    for (const auto& term : terms) {
      if (term.derivative > degree) continue;
      // d^k/dx^k x^d = d!/(d-k)! x^(d-k)
      const Rational falling(BigInt(factorial(degree) / factorial(degree - term.derivative)));
      sum += term.coefficient * falling * pow(term.point, degree - term.derivative);
    }
    return sum;
  }

  Rational monomial_error(unsigned degree) const {
    return (pow(hi, degree + 1) - pow(lo, degree + 1)) / Rational(static_cast<long>(degree) + 1) -
           apply_monomial(degree);
  }
};

inline Rational peano_constant(const HermiteRule& rule, unsigned degree) {
  for (unsigned d = 0; d < degree; ++d) {
    if (!rule.monomial_error(d).is_zero())
      throw ConventionViolation("peano_constant: functional is not exact at degree " + std::to_string(d));
  }
  return rule.monomial_error(degree) / Rational(factorial(degree));
}

/// Simple derivative rule on [-1/2, 1/2] with unit step:
/// f(0) + (1/24) (f'(1/2) - f'(-1/2)).
inline HermiteRule derivative_rule() {
  HermiteRule rule;
  rule.lo = Rational(-1, 2);
  rule.hi = Rational(1, 2);
  rule.terms = {
      {Rational(1), Rational(0), 0},
      {Rational(1, 24), Rational(1, 2), 1},
      {Rational(-1, 24), Rational(-1, 2), 1},
  };
  return rule;
}

/// Peano constant of the derivative rule at degree 4.
inline Rational derivative_rule_error_constant() { return peano_constant(derivative_rule(), 4); }

}  // namespace quadfam::exact
