#include <quadfam/exact.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using quadfam::Rational;
namespace ex = quadfam::exact;

namespace {

Rational R(const char* text) { return Rational::parse(text); }

std::vector<Rational> parse_all(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(R(t));
  return out;
}

// Independent oracle: solve the moment equations sum_j w_j x_j^d = int x^d,
// d = 0..k-1, by Gaussian elimination over the rationals.
std::vector<Rational> moment_weights(const std::vector<Rational>& nodes, const Rational& lo, const Rational& hi) {
  const std::size_t k = nodes.size();
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k + 1));
  for (std::size_t d = 0; d < k; ++d) {
    for (std::size_t j = 0; j < k; ++j) m[d][j] = quadfam::pow(nodes[j], static_cast<unsigned>(d));
    m[d][k] = (quadfam::pow(hi, static_cast<unsigned>(d + 1)) - quadfam::pow(lo, static_cast<unsigned>(d + 1))) /
              Rational(static_cast<long>(d + 1));
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (m[p][c].is_zero()) ++p;
    std::swap(m[p], m[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t j = c; j <= k; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<Rational> w(k);
  for (std::size_t j = 0; j < k; ++j) w[j] = m[j][k] / m[j][j];
  return w;
}

double round_significant(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::stod(buf);
}

std::vector<Rational> symmetric_nodes(int n) {
  std::vector<Rational> nodes;
  for (int i = -(n / 2); i <= n / 2; ++i) nodes.emplace_back(i);
  return nodes;
}

}  // namespace

TEST(InterpolatoryWeights, KnownRules) {
  const Rational lo = R("-1/2");
  const Rational hi = R("1/2");
  EXPECT_EQ(ex::interpolatory_weights(parse_all({"-1", "0", "1"}), lo, hi).weights,
            parse_all({"1/24", "11/12", "1/24"}));
  EXPECT_EQ(ex::interpolatory_weights(parse_all({"-1/2", "0", "1"}), lo, hi).weights,
            parse_all({"2/18", "15/18", "1/18"}));
  EXPECT_EQ(ex::interpolatory_weights(parse_all({"0"}), R("0"), R("1")).weights, parse_all({"1"}));
  EXPECT_EQ(ex::interpolatory_weights(parse_all({"0", "1", "2"}), R("0"), R("2")).weights,
            parse_all({"1/3", "4/3", "1/3"}));
}

TEST(InterpolatoryWeights, MatchesMomentSolveOracle) {
  const std::vector<std::vector<Rational>> node_sets = {
      parse_all({"-3", "-1/2", "1/3", "2", "7/5"}),
      parse_all({"0", "1/7", "2/7", "1"}),
      parse_all({"-5/2", "-3/2", "-1/2", "1/2", "3/2", "5/2"}),
  };
  for (auto nodes : node_sets) {
    std::sort(nodes.begin(), nodes.end());
    const auto got = ex::interpolatory_weights(nodes, R("-1/3"), R("5/4"));
    EXPECT_EQ(got.weights, moment_weights(nodes, R("-1/3"), R("5/4")));
  }
  for (int n = 1; n <= 15; n += 2) {
    EXPECT_EQ(ex::family_weights(n).full_weights(), moment_weights(symmetric_nodes(n), R("-1/2"), R("1/2")))
        << "n=" << n;
  }
}

TEST(InterpolatoryWeights, RejectsBadInput) {
  EXPECT_THROW(ex::interpolatory_weights(std::vector<Rational>{}, R("0"), R("1")), quadfam::InvalidInput);
  EXPECT_THROW(ex::interpolatory_weights(parse_all({"0", "0"}), R("0"), R("1")), quadfam::InvalidInput);
  EXPECT_THROW(ex::interpolatory_weights(parse_all({"0", "1"}), R("1"), R("1")), quadfam::InvalidInput);
}

TEST(FamilyWeights, ReferenceValues) {
  EXPECT_EQ(ex::family_weights(1).weights, parse_all({"1"}));
  EXPECT_EQ(ex::family_weights(3).weights, parse_all({"11/12", "1/24"}));
  EXPECT_EQ(ex::family_weights(5).weights, parse_all({"863/960", "77/1440", "-17/5760"}));
  EXPECT_EQ(ex::family_weights(7).weights, parse_all({"215641/241920", "6361/107520", "-281/53760", "367/967680"}));
  EXPECT_EQ(ex::family_weights(9).weights, parse_all({"41208059/46448640", "3629953/58060800", "-801973/116121600",
                                                      "49879/58060800", "-27859/464486400"}));
}

TEST(FamilyWeights, RejectsEvenOrNonPositive) {
  EXPECT_THROW(ex::family_weights(4), quadfam::InvalidOrder);
  EXPECT_THROW(ex::family_weights(0), quadfam::InvalidOrder);
  EXPECT_THROW(ex::family_weights(-3), quadfam::InvalidOrder);
}

TEST(FamilyWeights, SymmetricAndNormalized) {
  for (int n = 1; n <= 21; n += 2) {
    const auto full = ex::family_weights(n).full_weights();
    ASSERT_EQ(full.size(), static_cast<std::size_t>(n));
    Rational sum;
    for (std::size_t j = 0; j < full.size(); ++j) {
      EXPECT_EQ(full[j], full[full.size() - 1 - j]);
      sum += full[j];
    }
    EXPECT_EQ(sum, Rational(1)) << "n=" << n;
  }
}

TEST(FamilyWeights, ExactThroughDegreeNOnly) {
  for (int n = 1; n <= 21; n += 2) {
    const auto rule = ex::family_weights(n).node_rule();
    for (unsigned d = 0; d <= static_cast<unsigned>(n); ++d) EXPECT_TRUE(rule.monomial_error(d).is_zero());
    EXPECT_FALSE(rule.monomial_error(static_cast<unsigned>(n) + 1).is_zero());
  }
}

TEST(CorrectionCoefficients, Examples) {
  EXPECT_EQ(ex::correction_coefficients(3), parse_all({"1/24"}));
  EXPECT_EQ(ex::correction_coefficients(5), parse_all({"97/1920", "-17/5760"}));
  EXPECT_EQ(ex::correction_coefficients(7),
            (std::vector<Rational>{R("6361/107520") - R("281/53760") + R("367/967680"),
                                   R("-281/53760") + R("367/967680"), R("367/967680")}));
  EXPECT_THROW(ex::correction_coefficients(1), quadfam::InvalidOrder);
  EXPECT_THROW(ex::correction_coefficients(6), quadfam::InvalidOrder);
}

TEST(CorrectionCoefficients, PartialSumsOfWeights) {
  for (int n = 3; n <= 21; n += 2) {
    const auto w = ex::family_weights(n).weights;
    const auto c = ex::correction_coefficients(n);
    ASSERT_EQ(c.size(), w.size() - 1);
    for (std::size_t i = 1; i < w.size(); ++i) {
      Rational sum;
      for (std::size_t k = i; k < w.size(); ++k) sum += w[k];
      EXPECT_EQ(c[i - 1], sum) << "n=" << n << " i=" << i;
    }
  }
}

TEST(ErrorConstant, ReferenceValues) {
  EXPECT_EQ(ex::family_error_constant(1), R("1/24"));
  EXPECT_EQ(ex::family_error_constant(3), R("-17/5760"));
  EXPECT_EQ(ex::family_error_constant(5), R("367/967680"));
  EXPECT_EQ(ex::family_error_constant(7), R("-27859/464486400"));
  EXPECT_EQ(ex::family_error_constant(9), R("1295803/122624409600"));
}

TEST(ErrorConstant, ApproximationsAndSignPattern) {
  const double approx[] = {0.0416667, -0.00295139, 0.000379258, -5.99781e-5, 1.05673e-5};
  for (int i = 0; i < 5; ++i) {
    const int n = 2 * i + 1;
    const Rational c = ex::family_error_constant(n);
    EXPECT_NEAR(c.to_double() / approx[i], 1.0, 1e-5);
    EXPECT_EQ(c.sign(), i % 2 == 0 ? 1 : -1);
  }
}

TEST(PeanoConstant, InvariantUnderAffineMaps) {
  for (int n = 1; n <= 9; n += 2) {
    const auto rule = ex::family_weights(n).node_rule();
    const auto degree = static_cast<unsigned>(n) + 1;
    const Rational base = ex::peano_constant(rule, degree);
    for (const auto& [lo, hi] : {std::pair{R("0"), R("1")}, std::pair{R("-3"), R("5")}}) {
      const auto mapped = ex::affine_map(rule, lo, hi);
      const Rational s = (hi - lo) / rule.width();
      EXPECT_EQ(ex::peano_constant(mapped, degree) / quadfam::pow(s, degree + 1), base);
    }
  }
}

TEST(PeanoConstant, RequiresLowerDegreeExactness) {
  const auto midpoint = ex::family_weights(1).node_rule();
  EXPECT_THROW(ex::peano_constant(midpoint, 3), quadfam::ConventionViolation);
}

TEST(NewtonCotes, KnownRules) {
  const auto trapezoid = ex::newton_cotes_rule(2);
  EXPECT_EQ(trapezoid.rule.weights, parse_all({"1/2", "1/2"}));
  EXPECT_EQ(abs(trapezoid.simple_constant), R("1/12"));
  EXPECT_EQ(abs(ex::newton_cotes_rule(3).composite_constant), R("1/180"));
  EXPECT_EQ(abs(ex::newton_cotes_rule(5).composite_constant), R("2/945"));
  EXPECT_THROW(ex::newton_cotes_rule(1), quadfam::InvalidInput);
}

TEST(Stability, Values) {
  EXPECT_EQ(ex::stability_sum(ex::family_weights(3)), Rational(1));
  EXPECT_EQ(ex::stability_sum(ex::family_weights(5)), R("1457/1440"));
  EXPECT_EQ(ex::stability_sum(ex::newton_cotes_rule(3).rule), Rational(1));
  // Both overloads agree on the family rule.
  for (int n = 1; n <= 15; n += 2)
    EXPECT_EQ(ex::stability_sum(ex::family_weights(n)), ex::stability_sum(ex::family_weights(n).node_rule()));
}

TEST(Stability, FamilyBoundedAndNonDecreasing) {
  Rational previous;
  for (int n = 1; n <= 41; n += 2) {
    const Rational s = ex::stability_sum(ex::family_weights(n));
    EXPECT_LT(s, R("11/10")) << "n=" << n;
    EXPECT_GE(s, previous) << "n=" << n;
    previous = s;
  }
}

TEST(Stability, NewtonCotesDiverges) {
  bool exceeded = false;
  for (int p = 2; p <= 31 && !exceeded; ++p) {
    std::vector<Rational> nodes;
    for (int k = 0; k < p; ++k) nodes.emplace_back(k);
    exceeded = ex::stability_sum(ex::interpolatory_weights(nodes, Rational(0), Rational(p - 1))) > Rational(10);
  }
  EXPECT_TRUE(exceeded);
}

TEST(Comparison, Metrics) {
  const auto m3 = ex::comparison_metrics(3);
  EXPECT_EQ(m3.ratio_inf, R("17/32"));
  EXPECT_EQ(m3.transition_point, 8);
  EXPECT_NEAR(ex::transition_point_estimate(3, m3.ratio_zero.to_double()), 7.8371, 5e-5);

  const int orders[] = {3, 5, 7, 9, 11};
  const std::int64_t transition[] = {8, 14, 18, 22, 27};
  const double ratio[] = {0.53, 0.18, 0.056, 0.017, 0.0048};
  for (int i = 0; i < 5; ++i) {
    const auto m = ex::comparison_metrics(orders[i]);
    EXPECT_EQ(m.transition_point, transition[i]) << "n=" << orders[i];
    EXPECT_DOUBLE_EQ(round_significant(m.ratio_inf.to_double(), 2), ratio[i]) << "n=" << orders[i];
  }
}

TEST(Comparison, RejectsOutOfRange) {
  EXPECT_THROW(ex::comparison_metrics(1), quadfam::InvalidOrder);
  EXPECT_THROW(ex::comparison_metrics(4), quadfam::InvalidOrder);
  EXPECT_THROW(ex::comparison_metrics(23), quadfam::InvalidOrder);
  EXPECT_NO_THROW(ex::comparison_metrics(23, 25));
}

TEST(DerivativeRule, Constant) {
  EXPECT_EQ(ex::derivative_rule_error_constant(), R("-7/5760"));
  const auto rule = ex::derivative_rule();
  EXPECT_TRUE(rule.monomial_error(2).is_zero());
  EXPECT_TRUE(rule.monomial_error(3).is_zero());
}
