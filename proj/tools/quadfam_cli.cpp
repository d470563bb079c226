// quadfam: derive rule constants, run the benchmark corpus and reproduce the
// benchmark tables from the command line.

#include <quadfam/quadfam.hpp>
#include <quadfam/report/commands.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace quadfam;
using namespace quadfam::report;

enum ExitCode { kOk = 0, kUsage = 1, kRuntime = 2, kCheckMismatch = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int order_cap() {
  const char* env = std::getenv("QUADFAM_MAX_ORDER");
  if (env == nullptr || *env == '\0') return kDefaultOrderCap;
  try {
    std::size_t used = 0;
    const int v = std::stoi(env, &used);
    if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(std::string("QUADFAM_MAX_ORDER must be a positive integer, got '") + env + "'");
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + out_path + "'");
}

std::string render_many(const std::vector<ReportTable>& tables, Format format) {
  std::string text;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i > 0) text += "\n";
    text += render(tables[i], format);
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Midpoint rules with end-point corrections: exact constants, benchmarks and tables"};
  app.name("quadfam");
  app.require_subcommand(1);

  std::optional<std::string> format_name;
  std::string out_path;
  std::optional<int> max_order;
  app.add_option("--format", format_name, "Output format: csv, json or markdown")
      ->check(CLI::IsMember({"csv", "json", "markdown", "md"}));
  app.add_option("--out", out_path, "Write the result to this file instead of stdout");
  app.add_option("--max-order", max_order, "Largest (odd) rule order to derive");

  auto* weights = app.add_subcommand("weights", "Exact normalized weights of the family rules")->fallthrough();
  auto* constants =
      app.add_subcommand("constants", "Error constants and the Newton-Cotes comparison")->fallthrough();

  auto* stability = app.add_subcommand("stability", "Sum of normalized absolute weights per order")->fallthrough();
  std::string family = "both";
  stability->add_option("--family", family, "new, newton-cotes or both")
      ->check(CLI::IsMember({"new", "newton-cotes", "both"}));

  auto* appendix = app.add_subcommand("appendix", "Recompute the benchmark tables")->fallthrough();
  std::string appendix_function = "all";
  bool check = false;
  appendix->add_option("--function", appendix_function, "Corpus id 1..20 or 'all'");
  std::string expected_path;
  appendix->add_flag("--check", check, "Compare every cell with the printed values");
  appendix->add_option("--expected", expected_path, "Compare against this CSV instead of the built-in values");

  auto* integrate_cmd = app.add_subcommand("integrate", "Integrate a corpus function or a polynomial")->fallthrough();
  IntegrateRequest req;
  std::optional<int> integrate_function;
  std::vector<double> poly;
  std::string method_name = "corrected";
  auto* fn_opt = integrate_cmd->add_option("--function", integrate_function, "Corpus id 1..20");
  auto* poly_opt = integrate_cmd->add_option("--poly", poly, "Ascending coefficients c0,c1,...")->delimiter(',');
  fn_opt->excludes(poly_opt);
  integrate_cmd->add_option("--method", method_name, "corrected, interval, derivative, midpoint or simpson");
  integrate_cmd->add_option("--order", req.order, "Rule order for the corrected method (odd)");
  integrate_cmd->add_option("--points", req.points, "Evaluation budget N")->required();
  integrate_cmd->add_option("--a", req.a, "Lower limit for --poly");
  integrate_cmd->add_option("--b", req.b, "Upper limit for --poly");

  auto* estimate = app.add_subcommand("estimate", "Suggest a derivative-rule step for a target error")->fallthrough();
  int estimate_function = 0;
  double target = 0.0;
  estimate->add_option("--function", estimate_function, "Corpus id 1..20")->required();
  estimate->add_option("--target", target, "Target absolute error")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const int cap = order_cap();
    auto format_or = [&](Format fallback) { return format_name ? parse_format(*format_name) : fallback; };

    if (weights->parsed()) {
      emit(render(cmd_weights(max_order.value_or(9), cap), format_or(Format::markdown)), out_path);
    } else if (constants->parsed()) {
      emit(render(cmd_constants(max_order.value_or(9), cap), format_or(Format::markdown)), out_path);
    } else if (stability->parsed()) {
      const auto table = cmd_stability(max_order.value_or(std::min(cap, kDefaultOrderCap)),
                                       parse_stability_family(family), cap);
      emit(render(table, format_or(Format::csv)), out_path);
    } else if (appendix->parsed()) {
      std::optional<int> id;
      if (appendix_function != "all") {
        try {
          std::size_t used = 0;
          id = std::stoi(appendix_function, &used);
          if (used != appendix_function.size()) throw std::invalid_argument(appendix_function);
        } catch (const std::exception&) {
          throw InvalidInput("--function must be a corpus id or 'all', got '" + appendix_function + "'");
        }
        corpus::test_case(*id);
      }
      const Format format = format_or(Format::markdown);
      std::optional<std::vector<ExpectedCell>> expected;
      if (!expected_path.empty()) {
        std::ifstream in(expected_path, std::ios::binary);
        if (!in) throw IoError("cannot read '" + expected_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        expected = parse_expected(text.str());
      }
      const AppendixReport report = cmd_appendix(id, check, expected ? &*expected : nullptr);
      std::string text;
      if (format == Format::json) {
        nlohmann::json doc;
        doc["tables"] = nlohmann::json::array();
        for (const auto& t : report.tables) doc["tables"].push_back(to_json(t));
        if (report.check) doc["check"] = report.check->to_json();
        text = doc.dump(2) + "\n";
      } else {
        text = render_many(report.tables, format);
        if (report.check) {
          if (format == Format::markdown) {
            text += "\n```\n" + report.check->to_text() + "```\n";
          } else {
            std::cerr << report.check->to_text();
          }
        }
      }
      emit(text, out_path);
      if (report.check && !report.check->ok()) {
        std::cerr << "quadfam: " << report.check->mismatches.size() << " appendix cell(s) differ from the printed values\n";
        return kCheckMismatch;
      }
    } else if (integrate_cmd->parsed()) {
      if (!integrate_function && poly.empty()) throw InvalidInput("integrate needs --function or --poly");
      req.function = integrate_function;
      req.poly = poly;
      req.method = parse_method(method_name);
      emit(render(cmd_integrate(req), format_or(Format::markdown)), out_path);
    } else if (estimate->parsed()) {
      emit(render(cmd_estimate(estimate_function, target), format_or(Format::markdown)), out_path);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "quadfam: " << e.what() << '\n';
    return kUsage;
  } catch (const NotFound& e) {
    std::cerr << "quadfam: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateEstimator& e) {
    std::cerr << "quadfam: " << e.what()
              << " (the endpoint derivatives are equal, so the derivative correction cannot size the step)\n";
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "quadfam: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
