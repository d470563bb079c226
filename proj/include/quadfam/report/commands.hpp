#pragma once

// Report builders behind the quadfam command-line tool. Each returns tables;
// the tool decides how to render and where to write them.

#include <quadfam/corpus.hpp>
#include <quadfam/exact.hpp>
#include <quadfam/quadrature.hpp>
#include <quadfam/report/appendix_data.hpp>
#include <quadfam/report/table.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace quadfam::report {

/// Largest derivation order accepted unless overridden (QUADFAM_MAX_ORDER in the tool).
inline constexpr int kDefaultOrderCap = 201;

/// Absolute tolerance when comparing recomputed appendix cells with printed ones.
inline constexpr double kAppendixTolerance = 2e-8;

inline constexpr Method kAppendixMethods[] = {Method::midpoint, Method::simpson, Method::corrected,
                                              Method::interval3, Method::derivative3};

inline const char* appendix_column_name(Method m) {
  switch (m) {
    case Method::midpoint: return "Midpoint";
    case Method::simpson: return "Simpson";
    case Method::corrected: return "3rd Order";
    case Method::interval3: return "3rd Order interval";
    case Method::derivative3: return "Derivatives";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  if (name == "corrected") return Method::corrected;
  if (name == "interval") return Method::interval3;
  if (name == "derivative") return Method::derivative3;
  if (name == "midpoint") return Method::midpoint;
  if (name == "simpson") return Method::simpson;
  throw InvalidInput("unknown method '" + std::string(name) +
                     "' (expected corrected, interval, derivative, midpoint or simpson)");
}

inline void require_max_order(int max_order, int minimum, int cap) {
  if (max_order < minimum || max_order % 2 == 0)
    throw InvalidOrder("--max-order must be odd and >= " + std::to_string(minimum) + ", got " +
                       std::to_string(max_order));
  if (max_order > cap)
    throw InvalidOrder("--max-order " + std::to_string(max_order) + " exceeds the cap " + std::to_string(cap) +
                       " (raise it with QUADFAM_MAX_ORDER)");
}

// --------------------------------------------------------------------------
// weights / constants / stability

inline ReportTable cmd_weights(int max_order, int cap = kDefaultOrderCap) {
  require_max_order(max_order, 1, cap);
  ReportTable table;
  table.title = "Normalized weights w_0..w_k of the order-n rule";
  table.label_name = "n";
  const int widest = (max_order - 1) / 2;
  for (int k = 0; k <= widest; ++k) table.column_names.push_back("w_" + std::to_string(k));
  for (int n = 1; n <= max_order; n += 2) {
    const auto rule = exact::family_weights(n);
    std::vector<Cell> cells(rule.weights.begin(), rule.weights.end());
    cells.resize(table.column_names.size(), std::string());
    table.add_row(std::to_string(n), std::move(cells));
  }
  return table;
}

inline ReportTable cmd_constants(int max_order, int cap = kDefaultOrderCap) {
  require_max_order(max_order, 1, cap);
  ReportTable table;
  table.title = "Normalized error constants and Newton-Cotes comparison";
  table.label_name = "n";
  table.column_names = {"R_hat",     "R_hat_approx", "ratio_inf", "ratio_inf_approx",
                        "ratio_zero", "ratio_zero_approx", "N_star"};
  table.format_hint = {6, true, true};
  for (int n = 1; n <= max_order; n += 2) {
    const Rational constant = exact::family_error_constant(n);
    std::vector<Cell> cells{constant, constant.to_double()};
    if (n >= 3) {
      const auto m = exact::comparison_metrics(n, max_order);
      cells.insert(cells.end(), {m.ratio_inf, m.ratio_inf.to_double(), m.ratio_zero, m.ratio_zero.to_double(),
                                 m.transition_point});
    } else {
      cells.resize(table.column_names.size(), std::string());
    }
    table.add_row(std::to_string(n), std::move(cells));
  }
  return table;
}

enum class StabilityFamily { family, newton_cotes, both };

inline StabilityFamily parse_stability_family(std::string_view name) {
  if (name == "new") return StabilityFamily::family;
  if (name == "newton-cotes") return StabilityFamily::newton_cotes;
  if (name == "both") return StabilityFamily::both;
  throw InvalidInput("unknown family '" + std::string(name) + "' (expected new, newton-cotes or both)");
}

/// Sum of normalized absolute weights per odd order, exact internally and
/// rendered with 12 decimals.
inline ReportTable cmd_stability(int max_order, StabilityFamily family, int cap = kDefaultOrderCap) {
  if (max_order < 3) throw InvalidOrder("stability needs --max-order >= 3, got " + std::to_string(max_order));
  if (max_order > cap)
    throw InvalidOrder("--max-order " + std::to_string(max_order) + " exceeds the cap " + std::to_string(cap) +
                       " (raise it with QUADFAM_MAX_ORDER)");
  ReportTable table;
  table.title = "Sum of normalized absolute rule weights";
  table.label_name = "order";
  table.column_names = {"family", "sum_abs_weights"};
  table.format_hint = {12, false, false};
  for (int n = 3; n <= max_order; n += 2) {
    if (family != StabilityFamily::newton_cotes)
      table.add_row(std::to_string(n), {std::string("new"), exact::stability_sum(exact::family_weights(n))});
    if (family != StabilityFamily::family) {
      std::vector<Rational> nodes;
      for (int k = 0; k < n; ++k) nodes.emplace_back(k);
      const auto rule = exact::interpolatory_weights(nodes, Rational(0), Rational(n - 1));
      table.add_row(std::to_string(n), {std::string("newton-cotes"), exact::stability_sum(rule)});
    }
  }
  return table;
}

// --------------------------------------------------------------------------
// appendix

struct ExpectedCell {
  int function = 0;
  std::int64_t points = 0;
  Method method = Method::midpoint;
  double printed = 0.0;
  /// Non-empty when the printed value is a known typo.
  std::string erratum;
};

inline std::vector<ExpectedCell> parse_expected(std::string_view csv) {
  std::vector<ExpectedCell> out;
  std::istringstream is{std::string(csv)};
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 5) throw InvalidInput("malformed expectation row: " + line);
    try {
      out.push_back({std::stoi(f[0]), std::stoll(f[1]), parse_method(f[2]), std::stod(f[3]), f[4]});
    } catch (const std::logic_error&) {
      throw InvalidInput("malformed expectation row: " + line);
    }
  }
  return out;
}

inline const std::vector<ExpectedCell>& appendix_expected() {
  static const std::vector<ExpectedCell> cells = parse_expected(kAppendixExpectedCsv);
  return cells;
}

/// Budgets tabulated for a corpus function.
inline std::vector<std::int64_t> appendix_budgets(int function) {
  std::vector<std::int64_t> out{9, 17, 33, 65};
  if (function <= 9) out.push_back(129);
  return out;
}

inline double appendix_cell(const corpus::TestCase& tc, Method method, std::int64_t points) {
  const auto& f = tc.integrand;
  switch (method) {
    case Method::midpoint: return midpoint_rule(f.eval, tc.a, tc.b, points).value;
    case Method::simpson: return simpson(f.eval, tc.a, tc.b, points).value;
    case Method::corrected: return integrate(f.eval, tc.a, tc.b, 3, points).value;
    case Method::interval3: return integrate_interval3(f.eval, tc.a, tc.b, points).value;
    case Method::derivative3: return integrate_derivative3(f, tc.a, tc.b, points).value;
  }
  throw InvalidPlan("unknown method");
}

struct CellCheck {
  int table_id = 0;
  std::int64_t points = 0;
  std::string method;
  double expected = 0.0;
  double got = 0.0;
  std::string note;
};

struct CheckReport {
  std::int64_t total_cells = 0;
  std::int64_t matched = 0;
  std::vector<CellCheck> mismatches;
  std::vector<CellCheck> flagged_errata;

  bool ok() const { return mismatches.empty(); }

  std::string to_text() const {
    std::ostringstream os;
    os << "check: " << total_cells << " cells, " << matched << " matched, " << mismatches.size()
       << " mismatched, " << flagged_errata.size() << " flagged errata (tolerance "
       << detail::format_double("%.*g", 3, kAppendixTolerance) << ")\n";
    auto line = [&os](const char* kind, const CellCheck& c) {
      os << kind << " table " << c.table_id << " N=" << c.points << ' ' << c.method << ": printed "
         << detail::format_double("%.*f", 8, c.expected) << ", recomputed " << detail::format_double("%.*f", 8, c.got);
      if (!c.note.empty()) os << " (" << c.note << ')';
      os << '\n';
    };
    for (const auto& c : mismatches) line("MISMATCH", c);
    for (const auto& c : flagged_errata) line("ERRATUM", c);
    return os.str();
  }

  nlohmann::json to_json() const {
    auto cells = [](const std::vector<CellCheck>& v) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& c : v)
        out.push_back({{"table", c.table_id}, {"points", c.points}, {"method", c.method},
                       {"expected", c.expected}, {"got", c.got}, {"note", c.note}});
      return out;
    };
    return {{"total_cells", total_cells}, {"matched", matched}, {"mismatches", cells(mismatches)},
            {"flagged_errata", cells(flagged_errata)}};
  }
};

struct AppendixReport {
  std::vector<ReportTable> tables;
  std::optional<CheckReport> check;
};

/// Recomputes the five method columns for one corpus function (or all of them)
/// and optionally compares every cell with the printed values (the embedded
/// set unless `expected` is given).
inline AppendixReport cmd_appendix(std::optional<int> function, bool check,
                                   const std::vector<ExpectedCell>* expected = nullptr) {
  std::vector<corpus::TestCase> cases;
  if (function) {
    cases.push_back(corpus::test_case(*function));
  } else {
    cases = corpus::list_cases();
  }

  AppendixReport report;
  std::map<std::tuple<int, std::int64_t, Method>, double> computed;
  for (const auto& tc : cases) {
    ReportTable table;
    table.title = "(" + std::to_string(tc.id) + ") integral of " + tc.integrand.label + " over [0, 1]";
    table.label_name = "N";
    for (const Method m : kAppendixMethods) table.column_names.emplace_back(appendix_column_name(m));
    for (const auto N : appendix_budgets(tc.id)) {
      std::vector<Cell> cells;
      for (const Method m : kAppendixMethods) {
        const double v = appendix_cell(tc, m, N);
        computed[{tc.id, N, m}] = v;
        cells.emplace_back(v);
      }
      table.add_row(std::to_string(N), std::move(cells));
    }
    if (tc.id >= 10) table.add_row("Exact value", std::vector<Cell>(std::size(kAppendixMethods), tc.exact));
    report.tables.push_back(std::move(table));
  }

  if (check) {
    CheckReport cr;
    for (const auto& e : expected ? *expected : appendix_expected()) {
      if (function && e.function != *function) continue;
      ++cr.total_cells;
      const auto it = computed.find({e.function, e.points, e.method});
      const double got = it != computed.end() ? it->second : std::nan("");
      const bool close = std::abs(got - e.printed) <= kAppendixTolerance;
      CellCheck c{e.function, e.points, to_string(e.method), e.printed, got, e.erratum};
      if (close) {
        ++cr.matched;
      } else if (!e.erratum.empty()) {
        cr.flagged_errata.push_back(std::move(c));
      } else {
        cr.mismatches.push_back(std::move(c));
      }
    }
    report.check = std::move(cr);
  }
  return report;
}

// --------------------------------------------------------------------------
// integrate / estimate

struct IntegrateRequest {
  std::optional<int> function;
  /// Ascending coefficients c0, c1, ... used when no corpus function is given.
  std::vector<double> poly;
  Method method = Method::corrected;
  int order = 3;
  std::int64_t points = 0;
  double a = 0.0;
  double b = 1.0;
};

inline Integrand polynomial_integrand(std::vector<double> coeffs) {
  if (coeffs.empty()) throw InvalidInput("polynomial needs at least one coefficient");
  std::vector<double> deriv;
  for (std::size_t k = 1; k < coeffs.size(); ++k) deriv.push_back(static_cast<double>(k) * coeffs[k]);
  auto horner = [](const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  Integrand f;
  std::ostringstream label;
  label << "poly(";
  for (std::size_t k = 0; k < coeffs.size(); ++k) label << (k ? "," : "") << coeffs[k];
  label << ')';
  f.label = label.str();
  f.eval = [c = coeffs, horner](double x) { return horner(c, x); };
  f.derivative = [d = std::move(deriv), horner](double x) { return horner(d, x); };
  return f;
}

inline double polynomial_integral(const std::vector<double>& coeffs, double a, double b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const auto p = static_cast<double>(k + 1);
    sum += coeffs[k] * (std::pow(b, p) - std::pow(a, p)) / p;
  }
  return sum;
}

inline ReportTable cmd_integrate(const IntegrateRequest& req) {
  Integrand f;
  double a = req.a;
  double b = req.b;
  double exact_value = 0.0;
  if (req.function) {
    const auto tc = corpus::test_case(*req.function);
    f = tc.integrand;
    a = tc.a;
    b = tc.b;
    exact_value = tc.exact;
  } else {
    f = polynomial_integrand(req.poly);
    exact_value = polynomial_integral(req.poly, a, b);
  }
  if ((req.method == Method::interval3 || req.method == Method::derivative3) && req.order != 3)
    throw InvalidPlan(std::string("method '") + to_string(req.method) + "' exists for order 3 only");

  const CompositePlan plan = make_plan(req.method, a, b, req.points, req.order);
  const QuadratureOutcome out = run(plan, f);

  ReportTable table;
  table.title = f.label + " over [" + detail::full_precision(a) + ", " + detail::full_precision(b) + "], " +
                to_string(req.method) + (req.method == Method::corrected ? " n=" + std::to_string(plan.order) : "") +
                ", N=" + std::to_string(req.points);
  table.label_name = "method";
  table.format_hint = {10, true, true};
  table.column_names = {"value", "base_midpoint", "correction", "evaluations", "exact", "error"};
  auto opt = [](const std::optional<double>& v) -> Cell { return v ? Cell(*v) : Cell(std::string()); };
  table.add_row(to_string(req.method), {out.value, opt(out.base_midpoint), opt(out.correction), out.evaluations,
                                        exact_value, exact_value - out.value});
  return table;
}

/// Suggests a derivative-rule step for the target error, then checks the error
/// actually achieved at the resulting budget.
inline ReportTable cmd_estimate(int function, double target_error) {
  if (!(target_error > 0.0)) throw InvalidInput("target error must be positive");
  const auto tc = corpus::test_case(function);
  const double dfa = tc.integrand.derivative(tc.a);
  const double dfb = tc.integrand.derivative(tc.b);
  const double h = suggest_step(dfa, dfb, target_error);
  const std::int64_t N = suggest_point_count(tc.a, tc.b, dfa, dfb, target_error);
  const auto out = integrate_derivative3(tc.integrand, tc.a, tc.b, N);

  ReportTable table;
  table.title = "step estimate for (" + std::to_string(function) + ") " + tc.integrand.label;
  table.label_name = "function";
  table.column_names = {"target", "step", "points", "value", "error"};
  table.format_hint = {10, true, true};
  table.add_row(std::to_string(function), {target_error, h, N, out.value, tc.exact - out.value});
  return table;
}

}  // namespace quadfam::report
