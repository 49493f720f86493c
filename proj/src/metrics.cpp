#include "semmap/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "semmap/error.hpp"

namespace semmap {

namespace {

void check_dimensions(const ConceptGraph& graph,
                      const FormFunctionMatrix& matrix) {
  if (graph.num_nodes() != matrix.num_functions()) {
    throw DimensionMismatch("graph does not match the matrix's functions",
                            matrix.num_functions(), graph.num_nodes());
  }
}

}  // namespace

RecallResult recall(const ConceptGraph& graph,
                    const FormFunctionMatrix& matrix) {
  check_dimensions(graph, matrix);
  RecallResult out;
  out.total = matrix.num_forms();
  for (FormId x = 0; x < matrix.num_forms(); ++x) {
    auto nodes = matrix.function_set(x);
    if (is_connected_subset(graph, nodes)) {
      out.satisfied_forms.push_back(x);
    } else {
      out.violating_forms.push_back(x);
    }
  }
  out.satisfied = out.satisfied_forms.size();
  return out;
}

std::uint64_t SubsetCountCache::count(const ConceptGraph& graph,
                                      std::size_t min_size,
                                      const SubsetCountOptions& options) {
  std::vector<EdgeKey> keys;
  for (const auto& e : graph.edges()) keys.emplace_back(e.u, e.v);
  Key key{graph.num_nodes(), min_size, std::move(keys)};
  {
    std::lock_guard lock(mutex_);
    if (auto it = counts_.find(key); it != counts_.end()) return it->second;
  }
  // Counted outside the lock; concurrent misses on one key just duplicate
  // work.
  auto value = count_connected_subsets(graph, min_size, options);
  std::lock_guard lock(mutex_);
  counts_.emplace(std::move(key), value);
  return value;
}

std::size_t SubsetCountCache::size() const {
  std::lock_guard lock(mutex_);
  return counts_.size();
}

PrecisionResult precision(const ConceptGraph& graph,
                          const FormFunctionMatrix& matrix,
                          const PrecisionOptions& options) {
  PrecisionResult out;
  out.numerator = recall(graph, matrix).satisfied;

  SubsetCountOptions count_options{options.cap,
                                   options.over_cap == OverCap::kEnumerate};
  if (options.over_cap == OverCap::kReportZero &&
      graph.num_nodes() > options.cap && !is_forest(graph)) {
    return out;
  }
  out.denominator =
      options.cache
          ? options.cache->count(graph, options.min_size, count_options)
          : count_connected_subsets(graph, options.min_size, count_options);
  if (*out.denominator > 0) {
    out.value = static_cast<double>(out.numerator) /
                static_cast<double>(*out.denominator);
  }
  return out;
}

double div_d(const ConceptGraph& graph) {
  const auto degrees = graph.degrees();
  if (degrees.empty()) return 0.0;
  const double n = static_cast<double>(degrees.size());
  double mean = 0.0;
  for (auto d : degrees) mean += static_cast<double>(d);
  mean /= n;
  double var = 0.0;
  for (auto d : degrees) {
    double diff = static_cast<double>(d) - mean;
    var += diff * diff;
  }
  return std::sqrt(var / n);
}

double accuracy(const AdjacencyMatrix& candidate,
                const AdjacencyMatrix& reference) {
  const std::size_t n = candidate.size();
  if (reference.size() != n) {
    throw DimensionMismatch("reference map does not match the candidate", n,
                            reference.size());
  }
  if (n == 0) throw std::invalid_argument("accuracy of an empty graph");
  std::size_t matched = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (candidate.at(i, j) == reference.at(i, j)) ++matched;
    }
  }
  return static_cast<double>(matched) / static_cast<double>(n * n);
}

double accuracy(const ConceptGraph& candidate, const ConceptGraph& reference) {
  return accuracy(adjacency_matrix(candidate), adjacency_matrix(reference));
}

double lb_lt(std::size_t n) {
  if (n < 2) throw std::invalid_argument("lb_lt needs n >= 2");
  const double nn = static_cast<double>(n);
  return (nn * nn - 4.0 * (nn - 1.0)) / (nn * nn);
}

double lb_c(std::size_t n) {
  if (n < 2) throw std::invalid_argument("lb_c needs n >= 2");
  const double nn = static_cast<double>(n);
  return (4.0 * (nn - 1.0) + nn) / (nn * nn);
}

double complete_vs_tree_accuracy(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete_vs_tree needs n >= 2");
  const double nn = static_cast<double>(n);
  return (3.0 * nn - 2.0) / (nn * nn);
}

Evaluation evaluate(const ConceptGraph& graph, const FormFunctionMatrix& matrix,
                    const ConceptGraph* reference,
                    const PrecisionOptions& options) {
  check_dimensions(graph, matrix);
  Evaluation out;
  out.size = graph_size(graph);
  out.recall = recall(graph, matrix);
  out.precision = precision(graph, matrix, options);
  out.div_d = div_d(graph);
  if (reference != nullptr) out.accuracy = accuracy(graph, *reference);
  return out;
}

std::vector<RankedEvaluation> evaluate_candidates(
    SpanningTreeStream& stream, const ConceptGraph& source,
    const FormFunctionMatrix& matrix, const ConceptGraph* reference,
    const std::vector<std::size_t>& ranks, const PrecisionOptions& options) {
  for (std::size_t i = 1; i < ranks.size(); ++i) {
    if (ranks[i] < ranks[i - 1]) {
      throw std::invalid_argument("evaluation ranks must be ascending");
    }
  }
  std::vector<RankedEvaluation> out;
  std::size_t next_rank = 0;
  while (next_rank < ranks.size()) {
    auto tree = stream.next();
    if (!tree) {
      throw std::out_of_range(
          "rank " + std::to_string(ranks[next_rank]) +
          (stream.budget_reached()
               ? " is beyond the tree budget of " +
                     std::to_string(stream.options().budget)
               : " is beyond the number of spanning trees (" +
                     std::to_string(stream.emitted()) + ")"));
    }
    if (ranks[next_rank] < tree->rank) {
      throw std::invalid_argument("rank " + std::to_string(ranks[next_rank]) +
                                  " was already consumed from the stream");
    }
    while (next_rank < ranks.size() && ranks[next_rank] == tree->rank) {
      auto graph = tree->to_graph(source);
      out.push_back({tree->rank, *tree,
                     evaluate(graph, matrix, reference, options)});
      ++next_rank;
    }
  }
  return out;
}

}  // namespace semmap
