#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semmap {

using FunctionId = std::size_t;
using FormId = std::size_t;

struct FunctionLabel {
  FunctionId id = 0;
  std::string abbr;
  std::optional<std::string> full;

  bool operator==(const FunctionLabel&) const = default;
};

struct FormEntry {
  FormId id = 0;
  std::string language;
  std::string gram;
  std::vector<bool> functions;  // length n

  bool operator==(const FormEntry&) const = default;
};

enum class MatrixFormat { kCsv, kTsv, kJson };

// Parses "csv", "tsv" or "json". Throws std::invalid_argument otherwise.
MatrixFormat parse_matrix_format(std::string_view name);

// Guesses the format from a file extension; defaults to CSV.
MatrixFormat matrix_format_for_path(std::string_view path);

struct MatrixOptions {
  // Drop forms that carry no function instead of rejecting the input.
  bool skip_empty_forms = false;
  // Keep function columns with no 1 in them instead of rejecting the input.
  // Such columns are reported by FormFunctionMatrix::empty_functions().
  bool keep_empty_functions = false;
};

// Binary form-function matrix. Rows are forms (language-tagged grams),
// columns are functions. Immutable once constructed.
class FormFunctionMatrix {
 public:
  // Validates and takes ownership. Ids are reassigned to positions.
  FormFunctionMatrix(std::vector<FunctionLabel> functions,
                     std::vector<FormEntry> forms,
                     const MatrixOptions& options = {});

  std::size_t num_forms() const { return forms_.size(); }
  std::size_t num_functions() const { return functions_.size(); }

  const std::vector<FunctionLabel>& functions() const { return functions_; }
  const std::vector<FormEntry>& forms() const { return forms_; }

  const FunctionLabel& function(FunctionId y) const;
  const FormEntry& form(FormId x) const;

  bool at(FormId x, FunctionId y) const;

  // Sorted ids of the functions form x expresses. Never empty.
  std::vector<FunctionId> function_set(FormId x) const;

  // Number of forms expressing function y (column sum).
  std::size_t column_count(FunctionId y) const;

  // Number of 1 cells in the whole matrix.
  std::size_t total_ones() const;

  std::optional<FunctionId> find_function(std::string_view abbr) const;
  // First form whose gram matches.
  std::optional<FormId> find_form(std::string_view gram) const;

  // Columns without any 1 (only possible with keep_empty_functions).
  std::vector<FunctionId> empty_functions() const;

  bool operator==(const FormFunctionMatrix&) const = default;

 private:
  std::vector<FunctionLabel> functions_;
  std::vector<FormEntry> forms_;
};

// Reads a matrix. CSV/TSV: header "language,gram,<fn1>,...,<fnN>", one form
// per line, 0/1 cells. JSON: {"functions":[{"abbr":..}],"forms":[{"language":
// ..,"gram":..,"functions":[0,1,...]}]}.
FormFunctionMatrix parse_matrix(std::string_view text, MatrixFormat format,
                                const MatrixOptions& options = {});

FormFunctionMatrix load_matrix(const std::string& path,
                               std::optional<MatrixFormat> format = {},
                               const MatrixOptions& options = {});

std::string serialize_matrix(const FormFunctionMatrix& matrix,
                             MatrixFormat format);

// M[x][y] = 1 iff counts[x][y] >= 1. Counts must be finite and non-negative.
FormFunctionMatrix binarize(const std::vector<std::vector<double>>& counts,
                            std::vector<FunctionLabel> functions,
                            std::vector<FormEntry> forms,
                            const MatrixOptions& options = {});

// Same, with generated labels "F0".."Fn-1" and grams "x0".."xm-1".
FormFunctionMatrix binarize(const std::vector<std::vector<double>>& counts,
                            const MatrixOptions& options = {});

}  // namespace semmap
