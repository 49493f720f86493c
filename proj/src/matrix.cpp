#include "semmap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "semmap/error.hpp"

namespace semmap {

using nlohmann::json;

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "csv") return MatrixFormat::kCsv;
  if (name == "tsv") return MatrixFormat::kTsv;
  if (name == "json") return MatrixFormat::kJson;
  throw std::invalid_argument("unknown matrix format '" + std::string(name) +
                              "' (expected csv, tsv or json)");
}

MatrixFormat matrix_format_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".tsv")) return MatrixFormat::kTsv;
  if (ends_with(".json")) return MatrixFormat::kJson;
  return MatrixFormat::kCsv;
}

FormFunctionMatrix::FormFunctionMatrix(std::vector<FunctionLabel> functions,
                                       std::vector<FormEntry> forms,
                                       const MatrixOptions& options)
    : functions_(std::move(functions)) {
  const std::size_t n = functions_.size();
  if (n < 2) {
    throw Error("a form-function matrix needs at least 2 functions, got " +
                std::to_string(n));
  }
  std::set<std::string> seen;
  for (std::size_t y = 0; y < n; ++y) {
    functions_[y].id = y;
    if (functions_[y].abbr.empty()) {
      throw Error("function " + std::to_string(y) + " has an empty label");
    }
    if (!seen.insert(functions_[y].abbr).second) {
      throw Error("duplicate function label '" + functions_[y].abbr + "'");
    }
  }

  forms_.reserve(forms.size());
  for (auto& form : forms) {
    if (form.functions.size() != n) {
      throw Error("form '" + form.gram + "' has " +
                  std::to_string(form.functions.size()) + " cells, expected " +
                  std::to_string(n));
    }
    bool any = std::find(form.functions.begin(), form.functions.end(), true) !=
               form.functions.end();
    if (!any) {
      if (options.skip_empty_forms) continue;
      throw Error("form '" + form.gram + "' expresses no function");
    }
    form.id = forms_.size();
    forms_.push_back(std::move(form));
  }

  if (!options.keep_empty_functions) {
    auto empty = empty_functions();
    if (!empty.empty()) {
      throw Error("function '" + functions_[empty.front()].abbr +
                  "' is expressed by no form");
    }
  }
}

const FunctionLabel& FormFunctionMatrix::function(FunctionId y) const {
  if (y >= functions_.size()) {
    throw std::out_of_range("unknown function id " + std::to_string(y));
  }
  return functions_[y];
}

const FormEntry& FormFunctionMatrix::form(FormId x) const {
  if (x >= forms_.size()) {
    throw std::out_of_range("unknown form id " + std::to_string(x));
  }
  return forms_[x];
}

bool FormFunctionMatrix::at(FormId x, FunctionId y) const {
  const auto& f = form(x);
  if (y >= functions_.size()) {
    throw std::out_of_range("unknown function id " + std::to_string(y));
  }
  return f.functions[y];
}

std::vector<FunctionId> FormFunctionMatrix::function_set(FormId x) const {
  const auto& bits = form(x).functions;
  std::vector<FunctionId> out;
  for (FunctionId y = 0; y < bits.size(); ++y) {
    if (bits[y]) out.push_back(y);
  }
  return out;
}

std::size_t FormFunctionMatrix::column_count(FunctionId y) const {
  function(y);
  return static_cast<std::size_t>(
      std::count_if(forms_.begin(), forms_.end(),
                    [y](const FormEntry& f) { return f.functions[y]; }));
}

std::size_t FormFunctionMatrix::total_ones() const {
  std::size_t total = 0;
  for (const auto& f : forms_) {
    total += static_cast<std::size_t>(
        std::count(f.functions.begin(), f.functions.end(), true));
  }
  return total;
}

std::optional<FunctionId> FormFunctionMatrix::find_function(
    std::string_view abbr) const {
  for (const auto& label : functions_) {
    if (label.abbr == abbr) return label.id;
  }
  return std::nullopt;
}

std::optional<FormId> FormFunctionMatrix::find_form(std::string_view gram) const {
  for (const auto& f : forms_) {
    if (f.gram == gram) return f.id;
  }
  return std::nullopt;
}

std::vector<FunctionId> FormFunctionMatrix::empty_functions() const {
  std::vector<FunctionId> out;
  for (FunctionId y = 0; y < functions_.size(); ++y) {
    bool any = std::any_of(forms_.begin(), forms_.end(),
                           [y](const FormEntry& f) { return f.functions[y]; });
    if (!any) out.push_back(y);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

FormFunctionMatrix parse_delimited(std::string_view text, char delim,
                                   const MatrixOptions& options) {
  // Strip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t row = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    auto line = text.substr(start, pos == std::string_view::npos
                                       ? std::string_view::npos
                                       : pos - start);
    ++row;
    if (!trim(line).empty()) lines.emplace_back(row, line);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (lines.empty()) {
    throw ParseError("empty input: missing header row", 1, 0);
  }

  auto header = split(lines.front().second, delim);
  const std::size_t header_row = lines.front().first;
  if (header.size() < 4) {
    throw ParseError(
        "header must name language, gram and at least 2 functions", header_row,
        0);
  }
  std::vector<FunctionLabel> functions;
  std::set<std::string_view> seen;
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (header[c].empty()) {
      throw ParseError("empty function label", header_row, c + 1);
    }
    if (!seen.insert(header[c]).second) {
      throw ParseError("duplicate function label '" + std::string(header[c]) +
                           "'",
                       header_row, c + 1);
    }
    functions.push_back({functions.size(), std::string(header[c]), {}});
  }
  const std::size_t n = functions.size();

  std::vector<FormEntry> forms;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, line] = lines[i];
    auto cells = split(line, delim);
    if (cells.size() != n + 2) {
      throw ParseError("expected " + std::to_string(n + 2) + " cells, got " +
                           std::to_string(cells.size()),
                       line_no, 0);
    }
    FormEntry form;
    form.language = std::string(cells[0]);
    form.gram = std::string(cells[1]);
    form.functions.resize(n);
    bool any = false;
    for (std::size_t y = 0; y < n; ++y) {
      auto cell = cells[y + 2];
      if (cell == "1") {
        form.functions[y] = true;
        any = true;
      } else if (cell != "0") {
        throw ParseError("non-binary cell '" + std::string(cell) +
                             "' in column '" + functions[y].abbr + "'",
                         line_no, y + 3);
      }
    }
    if (!any) {
      if (options.skip_empty_forms) continue;
      throw ParseError("form '" + form.gram + "' expresses no function",
                       line_no, 0);
    }
    forms.push_back(std::move(form));
  }
  return FormFunctionMatrix(std::move(functions), std::move(forms), options);
}

FormFunctionMatrix parse_json(std::string_view text,
                              const MatrixOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
  }
  if (!doc.is_object() || !doc.contains("functions") ||
      !doc.contains("forms")) {
    throw ParseError("matrix JSON needs 'functions' and 'forms'", 0, 0);
  }
  std::vector<FunctionLabel> functions;
  std::set<std::string> seen;
  for (const auto& item : doc.at("functions")) {
    FunctionLabel label;
    label.id = functions.size();
    if (item.is_string()) {
      label.abbr = item.get<std::string>();
    } else {
      label.abbr = item.at("abbr").get<std::string>();
      if (item.contains("full") && !item.at("full").is_null()) {
        label.full = item.at("full").get<std::string>();
      }
    }
    if (!seen.insert(label.abbr).second) {
      throw ParseError("duplicate function label '" + label.abbr + "'", 0,
                       functions.size() + 1);
    }
    functions.push_back(std::move(label));
  }
  const std::size_t n = functions.size();
  std::vector<FormEntry> forms;
  std::size_t row = 0;
  for (const auto& item : doc.at("forms")) {
    ++row;
    FormEntry form;
    form.language = item.value("language", "");
    form.gram = item.value("gram", "");
    const auto& cells = item.at("functions");
    if (!cells.is_array() || cells.size() != n) {
      throw ParseError("form '" + form.gram + "' must carry " +
                           std::to_string(n) + " cells",
                       row, 0);
    }
    form.functions.resize(n);
    bool any = false;
    for (std::size_t y = 0; y < n; ++y) {
      const auto& cell = cells[y];
      if (cell.is_number_integer() && (cell == 0 || cell == 1)) {
        form.functions[y] = cell == 1;
        any = any || cell == 1;
      } else {
        throw ParseError("non-binary cell '" + cell.dump() + "' in column '" +
                             functions[y].abbr + "'",
                         row, y + 1);
      }
    }
    if (!any) {
      if (options.skip_empty_forms) continue;
      throw ParseError("form '" + form.gram + "' expresses no function", row,
                       0);
    }
    forms.push_back(std::move(form));
  }
  return FormFunctionMatrix(std::move(functions), std::move(forms), options);
}

}  // namespace

FormFunctionMatrix parse_matrix(std::string_view text, MatrixFormat format,
                                const MatrixOptions& options) {
  switch (format) {
    case MatrixFormat::kCsv:
      return parse_delimited(text, ',', options);
    case MatrixFormat::kTsv:
      return parse_delimited(text, '\t', options);
    case MatrixFormat::kJson:
      return parse_json(text, options);
  }
  throw std::invalid_argument("unknown matrix format");
}

FormFunctionMatrix load_matrix(const std::string& path,
                               std::optional<MatrixFormat> format,
                               const MatrixOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read matrix file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix(buffer.str(), format.value_or(matrix_format_for_path(path)),
                      options);
}

std::string serialize_matrix(const FormFunctionMatrix& matrix,
                             MatrixFormat format) {
  if (format == MatrixFormat::kJson) {
    json doc;
    doc["functions"] = json::array();
    for (const auto& label : matrix.functions()) {
      json item = {{"abbr", label.abbr}};
      if (label.full) item["full"] = *label.full;
      doc["functions"].push_back(item);
    }
    doc["forms"] = json::array();
    for (const auto& form : matrix.forms()) {
      json cells = json::array();
      for (bool b : form.functions) cells.push_back(b ? 1 : 0);
      doc["forms"].push_back(
          {{"language", form.language}, {"gram", form.gram}, {"functions", cells}});
    }
    return doc.dump(2) + "\n";
  }

  const char delim = format == MatrixFormat::kCsv ? ',' : '\t';
  auto check = [&](const std::string& field) {
    if (field.find(delim) != std::string::npos ||
        field.find('\n') != std::string::npos) {
      throw std::invalid_argument("field '" + field +
                                  "' contains the delimiter or a newline");
    }
    return field;
  };
  std::string out = "language";
  out += delim;
  out += "gram";
  for (const auto& label : matrix.functions()) {
    out += delim;
    out += check(label.abbr);
  }
  out += '\n';
  for (const auto& form : matrix.forms()) {
    out += check(form.language);
    out += delim;
    out += check(form.gram);
    for (bool b : form.functions) {
      out += delim;
      out += b ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

FormFunctionMatrix binarize(const std::vector<std::vector<double>>& counts,
                            std::vector<FunctionLabel> functions,
                            std::vector<FormEntry> forms,
                            const MatrixOptions& options) {
  if (forms.size() != counts.size()) {
    throw std::invalid_argument("binarize: " + std::to_string(counts.size()) +
                                " count rows but " +
                                std::to_string(forms.size()) + " forms");
  }
  const std::size_t n = functions.size();
  for (std::size_t x = 0; x < counts.size(); ++x) {
    if (counts[x].size() != n) {
      throw std::invalid_argument("binarize: row " + std::to_string(x) +
                                  " has " + std::to_string(counts[x].size()) +
                                  " counts, expected " + std::to_string(n));
    }
    forms[x].functions.assign(n, false);
    for (std::size_t y = 0; y < n; ++y) {
      double f = counts[x][y];
      if (!std::isfinite(f) || f < 0) {
        throw std::invalid_argument("binarize: count at (" + std::to_string(x) +
                                    ", " + std::to_string(y) +
                                    ") must be finite and non-negative");
      }
      forms[x].functions[y] = f >= 1.0;
    }
  }
  return FormFunctionMatrix(std::move(functions), std::move(forms), options);
}

FormFunctionMatrix binarize(const std::vector<std::vector<double>>& counts,
                            const MatrixOptions& options) {
  std::size_t n = counts.empty() ? 0 : counts.front().size();
  std::vector<FunctionLabel> functions;
  for (std::size_t y = 0; y < n; ++y) {
    functions.push_back({y, "F" + std::to_string(y), {}});
  }
  std::vector<FormEntry> forms;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    forms.push_back({x, "", "x" + std::to_string(x), {}});
  }
  return binarize(counts, std::move(functions), std::move(forms), options);
}

}  // namespace semmap
