#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semmap/matrix.hpp"
#include "semmap/weight.hpp"

namespace semmap {

using NodeId = std::size_t;

// Undirected weighted edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Weight w{0};

  bool operator==(const Edge&) const = default;
};

// Weighted undirected simple graph over function nodes 0..n-1. Used for the
// dense colexification graph, candidate trees, and reference maps alike.
class ConceptGraph {
 public:
  ConceptGraph() = default;
  explicit ConceptGraph(std::size_t n, std::vector<std::string> labels = {});

  static ConceptGraph from_edges(std::size_t n, const std::vector<Edge>& edges,
                                 std::vector<std::string> labels = {});

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  // Either empty or one label per node.
  const std::vector<std::string>& labels() const { return labels_; }
  // labels()[v] if present, otherwise the decimal id.
  std::string label(NodeId v) const;

  bool has_edge(NodeId u, NodeId v) const;
  std::optional<Weight> weight(NodeId u, NodeId v) const;

  // Throws std::invalid_argument for self-loops, duplicates and negative
  // weights, std::out_of_range for bad node ids.
  void add_edge(NodeId u, NodeId v, Weight w);
  // Throws std::invalid_argument if the edge is absent.
  void remove_edge(NodeId u, NodeId v);

  // Sorted by (u, v). The position of an edge in this list is its canonical
  // edge id.
  std::vector<Edge> edges() const;

  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<NodeId>> adjacency_lists() const;

  bool operator==(const ConceptGraph&) const = default;

 private:
  void check_node(NodeId v) const;

  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::map<std::pair<NodeId, NodeId>, Weight> edges_;
};

enum class WeightMode {
  kRaw,         // w = number of forms expressing both functions
  kNormalized,  // raw weight divided by the smaller of the two column counts
};

WeightMode parse_weight_mode(std::string_view name);
std::string_view to_string(WeightMode mode);

// Complete graph on the matrix's functions; w(i, j) is the dot product of
// columns i and j. Zero-weight edges are kept.
ConceptGraph build_dense_graph(const FormFunctionMatrix& matrix,
                               WeightMode mode = WeightMode::kRaw);

// True iff |nodes| <= 1 or the subgraph induced by nodes is connected. Only
// edge presence matters.
bool is_connected_subset(const ConceptGraph& graph,
                         std::span<const NodeId> nodes);

// Connected pieces of the induced subgraph, each sorted, ordered by smallest
// member.
std::vector<std::vector<NodeId>> induced_components(
    const ConceptGraph& graph, std::span<const NodeId> nodes);

bool is_connected(const ConceptGraph& graph);
bool is_forest(const ConceptGraph& graph);
bool is_spanning_tree(const ConceptGraph& graph);

struct SubsetCountOptions {
  // Largest non-forest graph enumerated without force.
  std::size_t cap = 25;
  bool force = false;
};

// Number of node subsets S with |S| >= min_size whose induced subgraph is
// connected. Forests use a size-indexed subtree DP and have no cap; other
// graphs are enumerated connected set by connected set and throw CapExceeded
// above options.cap unless options.force is set.
std::uint64_t count_connected_subsets(const ConceptGraph& graph,
                                      std::size_t min_size = 2,
                                      const SubsetCountOptions& options = {});

// Symmetric 0/1 matrix with zero diagonal. Membership is structural: an
// existing edge is a 1 whatever its weight.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  bool at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  void set_edge(std::size_t i, std::size_t j);
  std::size_t ones() const;

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> cells_;
};

AdjacencyMatrix adjacency_matrix(const ConceptGraph& graph);

// Sum of edge weights.
Weight graph_size(const ConceptGraph& graph);

}  // namespace semmap
