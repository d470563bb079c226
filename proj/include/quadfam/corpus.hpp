#pragma once

// Twenty benchmark integrands on [0, 1] with closed-form derivatives and
// reference integrals. Ids 1..9 are k x^(k-1), k = 5..13, each integrating to 1.

#include <quadfam/errors.hpp>
#include <quadfam/quadrature.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace quadfam::corpus {

struct TestCase {
  int id = 0;
  Integrand integrand;
  double a = 0.0;
  double b = 1.0;
  /// Reference integral at full double precision.
  double exact = 0.0;
  /// The reference value rounded to 8 decimals, as shown in the benchmark tables.
  double printed_exact = 0.0;
  std::string notes;
};

inline constexpr int kCaseCount = 20;

namespace detail {

using std::numbers::pi;

// sin(10 pi x) reduced through frac(5x), so the integrand is exactly 1-periodic
// for abscissae whose shift by an integer is exact.
inline double sin_10pi(double x) {
  const double t = 5.0 * x;
  return std::sin(2.0 * pi * (t - std::floor(t)));
}

inline double cos_10pi(double x) {
  const double t = 5.0 * x;
  return std::cos(2.0 * pi * (t - std::floor(t)));
}

inline double signed_root_term(double x, double power) {
  // d/dx |x^2 - 1/4|^p = 2 p x sign(x^2 - 1/4) |x^2 - 1/4|^(p-1)
  const double g = x * x - 0.25;
  if (g == 0.0) return 0.0;
  const double sign = g > 0.0 ? 1.0 : -1.0;
  return 2.0 * power * x * sign * std::pow(std::abs(g), power - 1.0);
}

inline TestCase polynomial_case(int id) {
  const int k = id + 4;
  TestCase tc;
  tc.id = id;
  tc.integrand.eval = [k](double x) { return k * std::pow(x, k - 1); };
  tc.integrand.derivative = [k](double x) { return k * (k - 1) * std::pow(x, k - 2); };
  tc.integrand.label = std::to_string(k) + "x^" + std::to_string(k - 1);
  tc.exact = 1.0;
  tc.printed_exact = 1.0;
  tc.notes = "polynomial of degree " + std::to_string(k - 1);
  return tc;
}

inline TestCase make_case(int id) {
  if (id >= 1 && id <= 9) return polynomial_case(id);
  TestCase tc;
  tc.id = id;
  auto& f = tc.integrand;
  switch (id) {
    case 10:
      f.eval = [](double x) { return std::exp(x); };
      f.derivative = [](double x) { return std::exp(x); };
      f.label = "exp(x)";
      tc.exact = std::numbers::e - 1.0;
      tc.printed_exact = 1.71828183;
      break;
    case 11:
      f.eval = [](double x) { return std::sin(pi * x); };
      f.derivative = [](double x) { return pi * std::cos(pi * x); };
      f.label = "sin(pi x)";
      tc.exact = 2.0 / pi;
      tc.printed_exact = 0.63661977;
      break;
    case 12:
      f.eval = [](double x) { return std::cos(x); };
      f.derivative = [](double x) { return -std::sin(x); };
      f.label = "cos(x)";
      tc.exact = std::sin(1.0);
      tc.printed_exact = 0.84147098;
      break;
    case 13:
      f.eval = [](double x) { return 1.0 / (1.0 + x * x); };
      f.derivative = [](double x) { return -2.0 * x / ((1.0 + x * x) * (1.0 + x * x)); };
      f.label = "1/(1+x^2)";
      tc.exact = pi / 4.0;
      tc.printed_exact = 0.78539816;
      break;
    case 14:
      f.eval = [](double x) { return 2.0 / (2.0 + sin_10pi(x)); };
      f.derivative = [](double x) {
        const double d = 2.0 + sin_10pi(x);
        return -20.0 * pi * cos_10pi(x) / (d * d);
      };
      f.label = "2/(2+sin(10 pi x))";
      tc.exact = 2.0 / std::sqrt(3.0);
      tc.printed_exact = 1.15470054;
      tc.notes = "1-periodic, integrated over whole periods";
      break;
    case 15:
      f.eval = [](double x) { return 1.0 / (1.0 + x * x * x * x); };
      f.derivative = [](double x) {
        const double d = 1.0 + x * x * x * x;
        return -4.0 * x * x * x / (d * d);
      };
      f.label = "1/(1+x^4)";
      tc.exact = (pi + 2.0 * std::log(1.0 + std::numbers::sqrt2)) / (4.0 * std::numbers::sqrt2);
      tc.printed_exact = 0.86697299;
      break;
    case 16:
      f.eval = [](double x) { return 1.0 / (1.0 + std::exp(x)); };
      f.derivative = [](double x) {
        const double d = 1.0 + std::exp(x);
        return -std::exp(x) / (d * d);
      };
      f.label = "1/(1+exp(x))";
      tc.exact = 1.0 + std::numbers::ln2 - std::log(1.0 + std::numbers::e);
      tc.printed_exact = 0.37988549;
      break;
    case 17:
      f.eval = [](double x) { return 23.0 / 25.0 * std::cosh(x) - std::cos(x); };
      f.derivative = [](double x) { return 23.0 / 25.0 * std::sinh(x) + std::sin(x); };
      f.label = "(23/25)cosh(x)-cos(x)";
      tc.exact = 23.0 / 25.0 * std::sinh(1.0) - std::sin(1.0);
      tc.printed_exact = 0.23971411;
      break;
    case 18:
      f.eval = [](double x) { return 1.0 / (1.0 + x); };
      f.derivative = [](double x) { return -1.0 / ((1.0 + x) * (1.0 + x)); };
      f.label = "1/(1+x)";
      tc.exact = std::numbers::ln2;
      tc.printed_exact = 0.69314718;
      break;
    case 19:
      f.eval = [](double x) { return std::pow(std::abs(x * x - 0.25), 1.5); };
      f.derivative = [](double x) { return signed_root_term(x, 1.5); };
      f.label = "|x^2-0.25|^(3/2)";
      // No closed form used; 40-digit quadrature split at x = 0.5, rounded to double.
      tc.exact = 0.14887162122322190;
      tc.printed_exact = 0.14887162;
      tc.notes = "first derivative not differentiable at x = 0.5";
      break;
    case 20:
      f.eval = [](double x) { return std::pow(std::abs(x * x - 0.25), 2.5); };
      f.derivative = [](double x) { return signed_root_term(x, 2.5); };
      f.label = "|x^2-0.25|^(5/2)";
      tc.exact = 0.065514768395476305;
      tc.printed_exact = 0.06551477;
      tc.notes = "second derivative not differentiable at x = 0.5";
      break;
    default:
      throw NotFound("no test case with id " + std::to_string(id) + " (valid ids are 1..20)");
  }
  return tc;
}

}  // namespace detail

inline TestCase test_case(int id) { return detail::make_case(id); }

inline std::vector<TestCase> list_cases() {
  std::vector<TestCase> out;
  out.reserve(kCaseCount);
  for (int id = 1; id <= kCaseCount; ++id) out.push_back(test_case(id));
  return out;
}

}  // namespace quadfam::corpus
