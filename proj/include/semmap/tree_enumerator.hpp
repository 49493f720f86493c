#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "semmap/concept_graph.hpp"

namespace semmap {

using EdgeKey = std::pair<NodeId, NodeId>;

struct SpanningTree {
  std::vector<Edge> edges;  // sorted by (u, v)
  Weight total_weight{0};
  std::size_t rank = 0;

  // The tree as a graph over the source graph's nodes and labels.
  ConceptGraph to_graph(const ConceptGraph& source) const;
};

enum class ZeroWeightEdges {
  // Enumerate over the positive-weight support only. This is the
  // colexification graph proper.
  kExclude,
  // Enumerate over every edge of the input, zero weights included.
  kInclude,
};

inline constexpr std::size_t kUnlimitedBudget =
    std::numeric_limits<std::size_t>::max();

struct EnumerationOptions {
  ZeroWeightEdges zero_edges = ZeroWeightEdges::kExclude;
  // Maximum number of trees a stream yields.
  std::size_t budget = 50'000;
};

// Maximum-weight spanning tree that contains every edge of `included` and
// none of `excluded`, or nullopt when no such tree exists. Among equal-weight
// optima the one with the lexicographically smallest sorted edge-id list is
// returned. Throws std::invalid_argument if `included` has a cycle or names
// an edge the graph lacks.
std::optional<SpanningTree> constrained_max_spanning_tree(
    const ConceptGraph& graph, const std::vector<EdgeKey>& included = {},
    const std::vector<EdgeKey>& excluded = {});

// Lazily yields the spanning trees of a graph in non-increasing total weight,
// ties ordered by sorted canonical edge ids. Single consumer.
//
// Each queued partition fixes some edges in and some out and carries its best
// tree; popping the best partition emits that tree and splits the rest of the
// partition into children that each exclude one more tree edge while fixing
// the preceding ones.
class SpanningTreeStream {
 public:
  // Throws Error if the (filtered) graph is not connected.
  explicit SpanningTreeStream(const ConceptGraph& graph,
                              EnumerationOptions options = {});
  ~SpanningTreeStream();
  SpanningTreeStream(SpanningTreeStream&&) noexcept;
  SpanningTreeStream& operator=(SpanningTreeStream&&) noexcept;

  // Next tree, or nullopt when every tree was emitted or the budget is spent.
  std::optional<SpanningTree> next();

  std::size_t emitted() const;
  // True once every spanning tree has been emitted.
  bool exhausted() const;
  bool budget_reached() const;
  const EnumerationOptions& options() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// The k-th tree (0-based) of the stream. Throws std::out_of_range when the
// graph has at most k trees or k is outside the budget.
SpanningTree tree_at_rank(const ConceptGraph& graph, std::size_t rank,
                          EnumerationOptions options = {});

struct WeightClass {
  Weight weight{0};
  std::size_t begin = 0;  // rank of the first tree with this weight

  bool operator==(const WeightClass&) const = default;
};

// Begin ranks of the `max_classes` heaviest weight values. Fewer classes are
// returned when the stream ends (or the budget runs out) first.
std::vector<WeightClass> weight_class_boundaries(
    const ConceptGraph& graph, std::size_t max_classes,
    EnumerationOptions options = {});

// A stream plus every tree it has emitted so far; rank lookups never
// re-enumerate. Safe for concurrent callers.
class CachedTreeStream {
 public:
  explicit CachedTreeStream(const ConceptGraph& graph,
                            EnumerationOptions options = {});

  // Throws std::out_of_range like tree_at_rank.
  SpanningTree at(std::size_t rank);
  std::vector<WeightClass> boundaries(std::size_t max_classes);
  std::size_t cached() const;
  const EnumerationOptions& options() const { return options_; }

 private:
  bool advance_locked();

  EnumerationOptions options_;
  mutable std::mutex mutex_;
  SpanningTreeStream stream_;
  std::vector<SpanningTree> trees_;
};

}  // namespace semmap
