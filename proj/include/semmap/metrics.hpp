#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "semmap/concept_graph.hpp"
#include "semmap/matrix.hpp"
#include "semmap/tree_enumerator.hpp"

namespace semmap {

struct RecallResult {
  std::size_t satisfied = 0;  // forms whose function set is connected
  std::size_t total = 0;      // m, duplicates counted
  std::vector<FormId> satisfied_forms;
  std::vector<FormId> violating_forms;

  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(satisfied) / total;
  }
};

// Share of forms (with multiplicity) whose function set induces a connected
// subgraph. Throws DimensionMismatch if graph and matrix disagree on n.
RecallResult recall(const ConceptGraph& graph, const FormFunctionMatrix& matrix);

enum class OverCap {
  kThrow,      // CapExceeded
  kEnumerate,  // count anyway
  kReportZero, // precision 0, denominator absent
};

// Memoizes connected-subset counts keyed on edge structure. Thread-safe.
class SubsetCountCache {
 public:
  std::uint64_t count(const ConceptGraph& graph, std::size_t min_size,
                      const SubsetCountOptions& options);
  std::size_t size() const;

 private:
  using Key = std::tuple<std::size_t, std::size_t, std::vector<EdgeKey>>;
  mutable std::mutex mutex_;
  std::map<Key, std::uint64_t> counts_;
};

struct PrecisionOptions {
  std::size_t min_size = 2;
  std::size_t cap = 25;
  OverCap over_cap = OverCap::kThrow;
  SubsetCountCache* cache = nullptr;  // optional, not owned
};

struct PrecisionResult {
  std::size_t numerator = 0;
  // Connected subsets of size >= min_size; absent when skipped over the cap.
  std::optional<std::uint64_t> denominator;
  double value = 0.0;
};

// Recall's numerator over the number of connected node subsets. A zero or
// absent denominator gives precision 0.
PrecisionResult precision(const ConceptGraph& graph,
                          const FormFunctionMatrix& matrix,
                          const PrecisionOptions& options = {});

// Population standard deviation of structural node degrees.
double div_d(const ConceptGraph& graph);

// Fraction of the n^2 adjacency cells (diagonal included) on which the two
// matrices agree.
double accuracy(const AdjacencyMatrix& candidate,
                const AdjacencyMatrix& reference);
double accuracy(const ConceptGraph& candidate, const ConceptGraph& reference);

// Accuracy floor of a tree sharing no edge with the reference:
// (n^2 - 4(n-1)) / n^2.
double lb_lt(std::size_t n);
// Closed-form complete-graph bound (4(n-1) + n) / n^2.
double lb_c(std::size_t n);
// Complete graph scored directly against a spanning-tree reference:
// diagonal plus the 2(n-1) tree cells, (3n - 2) / n^2.
double complete_vs_tree_accuracy(std::size_t n);

struct Evaluation {
  Weight size{0};
  RecallResult recall;
  PrecisionResult precision;
  double div_d = 0.0;
  std::optional<double> accuracy;
};

Evaluation evaluate(const ConceptGraph& graph, const FormFunctionMatrix& matrix,
                    const ConceptGraph* reference = nullptr,
                    const PrecisionOptions& options = {});

struct RankedEvaluation {
  std::size_t rank = 0;
  SpanningTree tree;
  Evaluation evaluation;
};

// One pass over the stream, evaluating the requested ranks (ascending).
// Throws std::out_of_range if a rank lies beyond the stream.
std::vector<RankedEvaluation> evaluate_candidates(
    SpanningTreeStream& stream, const ConceptGraph& source,
    const FormFunctionMatrix& matrix, const ConceptGraph* reference,
    const std::vector<std::size_t>& ranks,
    const PrecisionOptions& options = {});

inline const std::vector<std::size_t> kDefaultRanks = {0, 10'000, 20'000,
                                                       30'000, 40'000};

}  // namespace semmap
