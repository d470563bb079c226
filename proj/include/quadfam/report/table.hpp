#pragma once

// Tabular results with CSV / JSON / markdown emission and a CSV reader.

#include <quadfam/errors.hpp>
#include <quadfam/rational.hpp>

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace quadfam::report {

using Cell = std::variant<double, std::int64_t, Rational, std::string>;

struct FormatHint {
  /// Fractional digits (or significant digits when `significant`) for display.
  int decimals = 8;
  /// Render rationals as "p/q"; otherwise as rounded decimals.
  bool exact_fractions = true;
  bool significant = false;
};

struct Row {
  std::string label;
  std::vector<Cell> cells;
};

struct ReportTable {
  std::string title;
  std::string label_name = "label";
  std::vector<std::string> column_names;
  std::vector<Row> rows;
  FormatHint format_hint;

  void add_row(std::string label, std::vector<Cell> cells) {
    if (cells.size() != column_names.size())
      throw InvalidInput("row '" + label + "' has " + std::to_string(cells.size()) + " cells, table '" + title +
                         "' has " + std::to_string(column_names.size()) + " columns");
    rows.push_back({std::move(label), std::move(cells)});
  }
};

enum class Format { csv, json, markdown };

inline Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "markdown" || name == "md") return Format::markdown;
  throw InvalidInput("unknown format '" + std::string(name) + "' (expected csv, json or markdown)");
}

namespace detail {

inline std::string format_double(const char* spec, int digits, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, digits, v);
  return buf;
}

/// 17 significant digits: enough for an exact round trip.
inline std::string full_precision(double v) { return format_double("%.*g", 17, v); }

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string render_rational(const Rational& r, const FormatHint& hint) {
  return hint.exact_fractions ? r.to_string() : to_decimal(r, hint.decimals);
}

struct CsvCell {
  const FormatHint& hint;
  std::string operator()(double v) const { return full_precision(v); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(const Rational& r) const { return render_rational(r, hint); }
  std::string operator()(const std::string& s) const { return csv_escape(s); }
};

struct DisplayCell {
  const FormatHint& hint;
  std::string operator()(double v) const {
    return hint.significant ? format_double("%.*g", hint.decimals, v) : format_double("%.*f", hint.decimals, v);
  }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(const Rational& r) const { return render_rational(r, hint); }
  std::string operator()(const std::string& s) const { return s; }
};

struct JsonCell {
  const FormatHint& hint;
  nlohmann::json operator()(double v) const { return v; }
  nlohmann::json operator()(std::int64_t v) const { return v; }
  nlohmann::json operator()(const Rational& r) const { return render_rational(r, hint); }
  nlohmann::json operator()(const std::string& s) const { return s; }
};

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

inline bool all_digits(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

/// Reads back a CSV field: integers, "p/q" fractions, decimals, otherwise text.
inline Cell parse_cell(const std::string& text) {
  if (detail::all_digits(text)) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size()) return v;
    return Rational::parse(text);
  }
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    if (detail::all_digits(std::string_view(text).substr(0, slash)) &&
        detail::all_digits(std::string_view(text).substr(slash + 1)))
      return Rational::parse(text);
  }
  if (!text.empty()) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size()) return v;
  }
  return text;
}

/// Cells compare by value across numeric kinds (an integral double equals the
/// integer it prints as); text compares as text.
inline bool cells_equal(const Cell& x, const Cell& y) {
  auto as_rational = [](const Cell& c) -> std::optional<Rational> {
    if (const auto* r = std::get_if<Rational>(&c)) return *r;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return Rational(static_cast<long>(*i));
    if (const auto* d = std::get_if<double>(&c)) {
      if (!std::isfinite(*d)) return std::nullopt;
      return Rational::from_double(*d);
    }
    return std::nullopt;
  };
  const auto* sx = std::get_if<std::string>(&x);
  const auto* sy = std::get_if<std::string>(&y);
  if (sx || sy) return sx && sy && *sx == *sy;
  const auto rx = as_rational(x);
  const auto ry = as_rational(y);
  if (rx && ry) return *rx == *ry;
  // Non-finite doubles.
  const auto* dx = std::get_if<double>(&x);
  const auto* dy = std::get_if<double>(&y);
  return dx && dy && (*dx == *dy || (std::isnan(*dx) && std::isnan(*dy)));
}

inline std::string to_csv(const ReportTable& table) {
  std::ostringstream os;
  os << detail::csv_escape(table.label_name);
  for (const auto& c : table.column_names) os << ',' << detail::csv_escape(c);
  os << '\n';
  const detail::CsvCell fmt{table.format_hint};
  for (const auto& row : table.rows) {
    os << detail::csv_escape(row.label);
    for (const auto& cell : row.cells) os << ',' << std::visit(fmt, cell);
    os << '\n';
  }
  return os.str();
}

inline ReportTable parse_csv(std::string_view text, std::string title = {}) {
  ReportTable table;
  table.title = std::move(title);
  std::istringstream is{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (header) {
      table.label_name = fields.front();
      table.column_names.assign(fields.begin() + 1, fields.end());
      header = false;
      continue;
    }
    std::vector<Cell> cells;
    for (std::size_t i = 1; i < fields.size(); ++i) cells.push_back(parse_cell(fields[i]));
    table.add_row(fields.front(), std::move(cells));
  }
  if (header) throw InvalidInput("CSV input has no header row");
  return table;
}

inline nlohmann::json to_json(const ReportTable& table) {
  nlohmann::json columns = nlohmann::json::array({table.label_name});
  for (const auto& c : table.column_names) columns.push_back(c);
  nlohmann::json rows = nlohmann::json::array();
  const detail::JsonCell fmt{table.format_hint};
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array({row.label});
    for (const auto& cell : row.cells) r.push_back(std::visit(fmt, cell));
    rows.push_back(std::move(r));
  }
  return {{"title", table.title}, {"columns", std::move(columns)}, {"rows", std::move(rows)}};
}

inline std::string to_markdown(const ReportTable& table) {
  std::ostringstream os;
  if (!table.title.empty()) os << "### " << table.title << "\n\n";
  os << "| " << table.label_name;
  for (const auto& c : table.column_names) os << " | " << c;
  os << " |\n|---";
  for (std::size_t i = 0; i < table.column_names.size(); ++i) os << "|---:";
  os << "|\n";
  const detail::DisplayCell fmt{table.format_hint};
  for (const auto& row : table.rows) {
    os << "| " << row.label;
    for (const auto& cell : row.cells) os << " | " << std::visit(fmt, cell);
    os << " |\n";
  }
  return os.str();
}

inline std::string render(const ReportTable& table, Format format) {
  switch (format) {
    case Format::csv: return to_csv(table);
    case Format::json: return to_json(table).dump(2) + "\n";
    case Format::markdown: return to_markdown(table);
  }
  return {};
}

}  // namespace quadfam::report
