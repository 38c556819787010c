#include "doe/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "doe/error.hpp"

namespace doe {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t')) --end;
  return std::string(text.substr(begin, end - begin));
}

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line_no = 0;
};

// Comma-separated with optional double-quoted fields ("" escapes a quote).
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (i <= line.size()) {
    if (i == line.size()) {
      if (quoted) {
        throw ParseError("row " + std::to_string(line_no) + ": unterminated quoted field");
      }
      fields.push_back(trim(field));
      break;
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
    ++i;
  }
  return fields;
}

// All non-blank lines; CR-LF tolerated on input, line numbers are 1-based.
std::vector<CsvRow> read_csv_rows(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back({split_csv_line(line, line_no), line_no});
  }
  if (in.bad()) throw IoError("stream error while reading CSV");
  return rows;
}

Code parse_code(const std::string& token, std::size_t line_no, std::size_t column) {
  const auto fail = [&] {
    throw ParseError("row " + std::to_string(line_no) + ", column " +
                     std::to_string(column) + ": unknown level token '" + token + "'");
  };
  if (token == "L") return -1;
  if (token == "H") return +1;
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  int value = 0;
  const auto result = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (result.ec != std::errc{} || result.ptr != digits.data() + digits.size()) fail();
  if (value < -1 || value > 1) fail();
  return value;
}

double parse_response(const std::string& token, std::size_t line_no, std::size_t column) {
  double value = 0.0;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc{} || result.ptr != token.data() + token.size() ||
      !std::isfinite(value)) {
    throw ParseError("row " + std::to_string(line_no) + ", column " +
                     std::to_string(column) + ": invalid response '" + token + "'");
  }
  return value;
}

std::vector<std::string> parse_header(const std::vector<CsvRow>& rows) {
  if (rows.empty()) throw ParseError("empty file: missing header row");
  std::vector<std::string> names = rows.front().fields;
  std::set<std::string> seen;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c].empty()) {
      throw ParseError("header column " + std::to_string(c + 1) + " is empty");
    }
    if (!seen.insert(names[c]).second) {
      throw ParseError("duplicate column '" + names[c] + "'");
    }
  }
  return names;
}

void check_width(const CsvRow& row, std::size_t expected) {
  if (row.fields.size() != expected) {
    throw ParseError("row " + std::to_string(row.line_no) + ": expected " +
                     std::to_string(expected) + " fields, got " +
                     std::to_string(row.fields.size()));
  }
}

// Builds factor specs from observed codes: a column that uses 0 is three-level.
std::vector<FactorSpec> infer_factors(const std::vector<std::string>& names,
                                      const std::vector<std::vector<Code>>& columns) {
  std::vector<FactorSpec> factors;
  factors.reserve(names.size());
  for (std::size_t f = 0; f < names.size(); ++f) {
    const bool has_center =
        std::find(columns[f].begin(), columns[f].end(), 0) != columns[f].end();
    factors.push_back(has_center ? FactorSpec::three_level(names[f])
                                 : FactorSpec::two_level(names[f]));
  }
  return factors;
}

// Names go into CSV headers unquoted, so separators and quotes are rejected.
void ensure_writable_name(const std::string& name) {
  if (name.find_first_of(",\"\r\n") != std::string::npos) {
    throw ValidationError("name '" + name + "' cannot be written to CSV");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

DesignMatrix parse_design_csv(std::istream& in) {
  const std::vector<CsvRow> rows = read_csv_rows(in);
  const std::vector<std::string> names = parse_header(rows);
  if (names.empty()) throw ParseError("header row has no columns");
  if (rows.size() == 1) throw ParseError("no runs");

  std::vector<std::vector<Code>> columns(names.size());
  std::vector<Run> runs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    check_width(rows[r], names.size());
    Run run;
    run.id = static_cast<int>(r);
    for (std::size_t c = 0; c < names.size(); ++c) {
      const Code code = parse_code(rows[r].fields[c], rows[r].line_no, c + 1);
      run.settings.push_back(code);
      columns[c].push_back(code);
    }
    runs.push_back(std::move(run));
  }

  DesignMatrix design{infer_factors(names, columns), std::move(runs), DesignKind::custom};
  ensure_well_formed(design);
  return design;
}

DesignMatrix read_design_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_design_csv(in);
}

std::string design_to_csv(const DesignMatrix& design) {
  ensure_well_formed(design);
  if (design.factor_count() == 0) throw ValidationError("design has no factors to write");
  std::ostringstream out;
  for (std::size_t f = 0; f < design.factor_count(); ++f) {
    ensure_writable_name(design.factors[f].name);
    if (f > 0) out << ',';
    out << design.factors[f].name;
  }
  out << '\n';
  for (const auto& run : design.runs) {
    for (std::size_t f = 0; f < run.settings.size(); ++f) {
      if (f > 0) out << ',';
      out << run.settings[f];
    }
    out << '\n';
  }
  return out.str();
}

ExperimentData parse_results_csv(std::istream& in, std::string_view response_name) {
  const std::vector<CsvRow> rows = read_csv_rows(in);
  const std::vector<std::string> names = parse_header(rows);

  std::size_t response_col = names.size();
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c] == response_name) response_col = c;
  }
  if (response_col == names.size()) {
    throw ParseError("response column '" + std::string(response_name) + "' not found");
  }
  if (rows.size() == 1) throw ParseError("no runs");

  std::vector<std::string> factor_names;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c != response_col) factor_names.push_back(names[c]);
  }

  std::vector<std::vector<Code>> columns(factor_names.size());
  std::vector<Run> runs;
  std::vector<double> responses;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    check_width(rows[r], names.size());
    Run run;
    run.id = static_cast<int>(r);
    std::size_t f = 0;
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (c == response_col) {
        responses.push_back(parse_response(rows[r].fields[c], rows[r].line_no, c + 1));
      } else {
        const Code code = parse_code(rows[r].fields[c], rows[r].line_no, c + 1);
        run.settings.push_back(code);
        columns[f++].push_back(code);
      }
    }
    runs.push_back(std::move(run));
  }

  ExperimentData data{
      DesignMatrix{infer_factors(factor_names, columns), std::move(runs), DesignKind::custom},
      std::move(responses), std::string(response_name)};
  ensure_well_formed(data);
  return data;
}

ExperimentData read_results_csv(const std::filesystem::path& path,
                                std::string_view response_name) {
  auto in = open_input(path);
  return parse_results_csv(in, response_name);
}

std::string results_to_csv(const ExperimentData& data, int decimals) {
  ensure_well_formed(data);
  ensure_writable_name(data.response_name);
  std::ostringstream out;
  for (const auto& factor : data.design.factors) {
    ensure_writable_name(factor.name);
    out << factor.name << ',';
  }
  out << data.response_name << '\n';
  for (std::size_t r = 0; r < data.design.run_count(); ++r) {
    for (const Code code : data.design.runs[r].settings) {
      out << code << ',';
    }
    out << format_fixed(data.response[r], decimals) << '\n';
  }
  return out.str();
}

std::string labels_to_json(const DesignMatrix& design) {
  ordered_json j = ordered_json::object();
  for (const auto& factor : design.factors) {
    if (factor.labels.empty()) continue;
    ordered_json entry = ordered_json::object();
    for (const auto& [code, text] : factor.labels) {
      entry[std::to_string(code)] = text;
    }
    j[factor.name] = std::move(entry);
  }
  if (j.empty()) return "";
  return j.dump(2) + "\n";
}

void apply_labels_json(DesignMatrix& design, std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("label JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("label JSON: top level must be an object");
  for (const auto& [factor_name, entry] : j.items()) {
    const std::size_t f = design.factor_index(factor_name);
    if (!entry.is_object()) {
      throw ParseError("label JSON: factor '" + factor_name + "' must map codes to text");
    }
    for (const auto& [code_text, label] : entry.items()) {
      Code code = 0;
      try {
        code = parse_code(code_text, 0, 0);
      } catch (const ParseError&) {
        throw ParseError("label JSON: bad level key '" + code_text + "' for factor '" +
                         factor_name + "'");
      }
      if (!design.factors[f].has_level(code)) {
        throw ParseError("label JSON: factor '" + factor_name + "' has no level " +
                         code_text);
      }
      if (!label.is_string()) {
        throw ParseError("label JSON: label for '" + factor_name + "' level " + code_text +
                         " must be a string");
      }
      design.factors[f].labels[code] = label.get<std::string>();
    }
  }
}

std::filesystem::path label_sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path sidecar = csv_path;
  sidecar.replace_filename(csv_path.stem().string() + ".labels.json");
  return sidecar;
}

namespace {

double require_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError("model JSON: " + where + " must be a number");
  return value.get<double>();
}

}  // namespace

SimModel parse_model_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model JSON: top level must be an object");

  SimModel model;
  for (const auto& [key, value] : j.items()) {
    if (key == "intercept") {
      model.intercept = require_number(value, "intercept");
    } else if (key == "main") {
      if (!value.is_object()) throw ParseError("model JSON: main must be an object");
      for (const auto& [name, coef] : value.items()) {
        model.main_coefs[name] = require_number(coef, "main." + name);
      }
    } else if (key == "interactions") {
      if (!value.is_array()) throw ParseError("model JSON: interactions must be an array");
      for (const auto& item : value) {
        if (!item.is_object() || !item.contains("a") || !item.contains("b") ||
            !item.contains("coef") || !item["a"].is_string() || !item["b"].is_string()) {
          throw ParseError("model JSON: each interaction needs string a, string b, coef");
        }
        model.interaction_coefs.push_back({item["a"].get<std::string>(),
                                           item["b"].get<std::string>(),
                                           require_number(item["coef"], "interaction coef")});
      }
    } else if (key == "sd") {
      model.noise_sd = require_number(value, "sd");
    } else if (key == "round") {
      if (!value.is_number_integer()) throw ParseError("model JSON: round must be an integer");
      model.round_decimals = value.get<int>();
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<double>() < 0) {
        throw ParseError("model JSON: seed must be a non-negative integer");
      }
      model.seed = value.get<std::uint64_t>();
    } else {
      throw ParseError("model JSON: unknown key '" + key + "'");
    }
  }
  return model;
}

SimModel read_model_json(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_model_json(in);
}

std::string report_to_json(const ScreeningReport& report) {
  ordered_json j;
  j["effects"] = ordered_json::array();
  for (const auto& effect : report.effects) {
    ordered_json e;
    e["target"] = effect.target;
    e["mean_difference"] = effect.mean_difference;
    e["half_effect"] = effect.half_effect;
    e["mean_low"] = effect.mean_low;
    e["mean_high"] = effect.mean_high;
    e["n_low"] = effect.n_low;
    e["n_high"] = effect.n_high;
    j["effects"].push_back(std::move(e));
  }
  j["active"] = report.active;
  j["threshold_used"] = report.threshold_used;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string report_summary_text(const ScreeningReport& report) {
  std::size_t name_width = 6;
  for (const auto& effect : report.effects) {
    name_width = std::max(name_width, effect.target.size());
  }

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width)) << "target" << std::right
      << std::setw(11) << "mean_diff" << std::setw(11) << "half" << std::setw(10)
      << "mean(L)" << std::setw(10) << "mean(H)" << std::setw(6) << "n(L)" << std::setw(6)
      << "n(H)" << "  active\n";
  for (const auto& effect : report.effects) {
    const bool active = std::find(report.active.begin(), report.active.end(),
                                  effect.target) != report.active.end();
    out << std::left << std::setw(static_cast<int>(name_width)) << effect.target
        << std::right << std::setw(11) << format_fixed(effect.mean_difference, 3)
        << std::setw(11) << format_fixed(effect.half_effect, 3) << std::setw(10)
        << format_fixed(effect.mean_low, 3) << std::setw(10)
        << format_fixed(effect.mean_high, 3) << std::setw(6) << effect.n_low << std::setw(6)
        << effect.n_high << (active ? "  *" : "") << '\n';
  }
  out << "threshold_used: " << format_fixed(report.threshold_used, 3) << '\n';
  out << "active: ";
  if (report.active.empty()) {
    out << "(none)";
  } else {
    for (std::size_t i = 0; i < report.active.size(); ++i) {
      if (i > 0) out << ", ";
      out << report.active[i];
    }
  }
  out << '\n';
  out << "design: " << (report.diagnostics.balanced() ? "balanced" : "UNBALANCED") << ", "
      << (report.diagnostics.orthogonal() ? "orthogonal" : "NON-ORTHOGONAL");
  if (!report.diagnostics.duplicate_runs.empty()) {
    out << ", " << report.diagnostics.duplicate_runs.size() << " duplicated setting group"
        << (report.diagnostics.duplicate_runs.size() == 1 ? "" : "s");
  }
  out << '\n';
  if (report.warnings.empty()) {
    out << "warnings: (none)\n";
  } else {
    for (const auto& warning : report.warnings) {
      out << "warning: " << warning << '\n';
    }
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string format_fixed(double value, int decimals) {
  if (decimals < 0) throw ValidationError("decimals must be non-negative");
  if (!std::isfinite(value)) throw ValidationError("cannot format a non-finite value");
  char buffer[512];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value,
                                    std::chars_format::fixed, decimals);
  if (result.ec != std::errc{}) {
    throw ValidationError("value out of range for fixed-point formatting");
  }
  std::string text(buffer, result.ptr);
  const bool all_zero = text.find_first_not_of("-0.") == std::string::npos;
  if (all_zero && text.front() == '-') text.erase(0, 1);
  return text;
}

}  // namespace doe
