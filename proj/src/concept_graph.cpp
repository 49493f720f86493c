#include "semmap/concept_graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "semmap/error.hpp"

namespace semmap {

ConceptGraph::ConceptGraph(std::size_t n, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != n_) {
    throw std::invalid_argument("graph with " + std::to_string(n_) +
                                " nodes got " + std::to_string(labels_.size()) +
                                " labels");
  }
}

ConceptGraph ConceptGraph::from_edges(std::size_t n,
                                      const std::vector<Edge>& edges,
                                      std::vector<std::string> labels) {
  ConceptGraph graph(n, std::move(labels));
  for (const auto& e : edges) graph.add_edge(e.u, e.v, e.w);
  return graph;
}

std::string ConceptGraph::label(NodeId v) const {
  check_node(v);
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

void ConceptGraph::check_node(NodeId v) const {
  if (v >= n_) {
    throw std::out_of_range("node id " + std::to_string(v) +
                            " out of range for a graph with " +
                            std::to_string(n_) + " nodes");
  }
}

bool ConceptGraph::has_edge(NodeId u, NodeId v) const {
  return weight(u, v).has_value();
}

std::optional<Weight> ConceptGraph::weight(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  auto it = edges_.find(std::minmax(u, v));
  if (it == edges_.end()) return std::nullopt;
  return it->second;
}

void ConceptGraph::add_edge(NodeId u, NodeId v, Weight w) {
  check_node(u);
  check_node(v);
  if (u == v) {
    throw std::invalid_argument("self-loop on node " + std::to_string(u));
  }
  if (w < Weight(0)) {
    throw std::invalid_argument("negative edge weight " + to_string(w));
  }
  if (!edges_.emplace(std::minmax(u, v), w).second) {
    throw std::invalid_argument("duplicate edge {" + std::to_string(u) + ", " +
                                std::to_string(v) + "}");
  }
}

void ConceptGraph::remove_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (edges_.erase(std::minmax(u, v)) == 0) {
    throw std::invalid_argument("no edge {" + std::to_string(u) + ", " +
                                std::to_string(v) + "}");
  }
}

std::vector<Edge> ConceptGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [key, w] : edges_) out.push_back({key.first, key.second, w});
  return out;
}

std::vector<std::size_t> ConceptGraph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& [key, w] : edges_) {
    ++deg[key.first];
    ++deg[key.second];
  }
  return deg;
}

std::vector<std::vector<NodeId>> ConceptGraph::adjacency_lists() const {
  std::vector<std::vector<NodeId>> adj(n_);
  for (const auto& [key, w] : edges_) {
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  return adj;
}

WeightMode parse_weight_mode(std::string_view name) {
  if (name == "raw") return WeightMode::kRaw;
  if (name == "normalized") return WeightMode::kNormalized;
  throw std::invalid_argument("unknown weight mode '" + std::string(name) +
                              "' (expected raw or normalized)");
}

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::kRaw ? "raw" : "normalized";
}

ConceptGraph build_dense_graph(const FormFunctionMatrix& matrix,
                               WeightMode mode) {
  const std::size_t n = matrix.num_functions();
  std::vector<std::string> labels;
  for (const auto& f : matrix.functions()) labels.push_back(f.abbr);
  ConceptGraph graph(n, std::move(labels));

  std::vector<std::int64_t> column(n);
  for (std::size_t y = 0; y < n; ++y) {
    column[y] = static_cast<std::int64_t>(matrix.column_count(y));
  }
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      std::int64_t dot = 0;
      for (const auto& form : matrix.forms()) {
        if (form.functions[i] && form.functions[j]) ++dot;
      }
      Weight w(dot);
      if (mode == WeightMode::kNormalized) {
        std::int64_t denom = std::min(column[i], column[j]);
        w = denom == 0 ? Weight(0) : Weight(dot, denom);
      }
      graph.add_edge(i, j, w);
    }
  }
  return graph;
}

std::vector<std::vector<NodeId>> induced_components(
    const ConceptGraph& graph, std::span<const NodeId> nodes) {
  const std::size_t n = graph.num_nodes();
  std::vector<char> member(n, 0);
  for (NodeId v : nodes) {
    if (v >= n) {
      throw std::out_of_range("node id " + std::to_string(v) +
                              " out of range for a graph with " +
                              std::to_string(n) + " nodes");
    }
    member[v] = 1;
  }
  // Union-find over the induced edges.
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : graph.edges()) {
    if (member[e.u] && member[e.v]) {
      NodeId a = find(e.u), b = find(e.v);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<NodeId, std::vector<NodeId>> pieces;
  for (NodeId v = 0; v < n; ++v) {
    if (member[v]) pieces[find(v)].push_back(v);
  }
  std::vector<std::vector<NodeId>> out;
  for (auto& [root, piece] : pieces) out.push_back(std::move(piece));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected_subset(const ConceptGraph& graph,
                         std::span<const NodeId> nodes) {
  auto pieces = induced_components(graph, nodes);
  return pieces.size() <= 1;
}

bool is_connected(const ConceptGraph& graph) {
  std::vector<NodeId> all(graph.num_nodes());
  std::iota(all.begin(), all.end(), NodeId{0});
  return is_connected_subset(graph, all);
}

bool is_forest(const ConceptGraph& graph) {
  std::vector<NodeId> all(graph.num_nodes());
  std::iota(all.begin(), all.end(), NodeId{0});
  // A graph is acyclic iff |E| = |V| - (number of components).
  auto pieces = induced_components(graph, all);
  return graph.num_edges() + pieces.size() == graph.num_nodes();
}

bool is_spanning_tree(const ConceptGraph& graph) {
  return graph.num_nodes() > 0 && graph.num_edges() + 1 == graph.num_nodes() &&
         is_connected(graph);
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw CapExceeded("connected subset count exceeds 64-bit range");
  }
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapExceeded("connected subset count exceeds 64-bit range");
  }
  return out;
}

// by_size[v][k]: connected subsets of v's subtree that contain v and have
// k nodes.
std::uint64_t count_forest(const ConceptGraph& graph, std::size_t min_size) {
  const std::size_t n = graph.num_nodes();
  auto adj = graph.adjacency_lists();
  std::vector<std::vector<std::uint64_t>> by_size(n);
  std::vector<char> visited(n, 0);
  std::uint64_t total = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (visited[root]) continue;
    // Iterative DFS to get a post-order.
    std::vector<std::pair<NodeId, NodeId>> order;  // (node, parent)
    std::vector<std::pair<NodeId, NodeId>> stack{{root, root}};
    visited[root] = 1;
    while (!stack.empty()) {
      auto [v, p] = stack.back();
      stack.pop_back();
      order.emplace_back(v, p);
      for (NodeId w : adj[v]) {
        if (!visited[w]) {
          visited[w] = 1;
          stack.emplace_back(w, v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto [v, p] = *it;
      std::vector<std::uint64_t> acc{0, 1};
      for (NodeId c : adj[v]) {
        if (c == p) continue;
        const auto& child = by_size[c];
        std::vector<std::uint64_t> next(acc.size() + child.size() - 1, 0);
        for (std::size_t a = 0; a < acc.size(); ++a) next[a] = acc[a];
        for (std::size_t a = 1; a < acc.size(); ++a) {
          if (acc[a] == 0) continue;
          for (std::size_t b = 1; b < child.size(); ++b) {
            next[a + b] = checked_add(next[a + b], checked_mul(acc[a], child[b]));
          }
        }
        acc = std::move(next);
        by_size[c].clear();
        by_size[c].shrink_to_fit();
      }
      for (std::size_t k = std::max<std::size_t>(min_size, 1); k < acc.size(); ++k) {
        total = checked_add(total, acc[k]);
      }
      by_size[v] = std::move(acc);
    }
  }
  return total;
}

// Enumerates each connected set exactly once, rooted at its smallest node,
// by growing it through exclusive neighbours only.
class ConnectedSetCounter {
 public:
  ConnectedSetCounter(const ConceptGraph& graph, std::size_t min_size)
      : adj_(graph.num_nodes(), 0), min_size_(min_size) {
    for (const auto& e : graph.edges()) {
      adj_[e.u] |= std::uint64_t{1} << e.v;
      adj_[e.v] |= std::uint64_t{1} << e.u;
    }
  }

  std::uint64_t run() {
    const std::size_t n = adj_.size();
    for (std::size_t v = 0; v < n; ++v) {
      std::uint64_t self = std::uint64_t{1} << v;
      above_ = v + 1 >= 64 ? 0 : ~((std::uint64_t{1} << (v + 1)) - 1);
      extend(self, adj_[v] & above_, adj_[v] | self, 1);
    }
    return total_;
  }

 private:
  void extend(std::uint64_t subset, std::uint64_t extension,
              std::uint64_t closed, std::size_t size) {
    if (size >= min_size_) ++total_;
    while (extension != 0) {
      int w = std::countr_zero(extension);
      std::uint64_t bit = std::uint64_t{1} << w;
      extension &= ~bit;
      std::uint64_t exclusive = adj_[w] & ~closed & above_;
      extend(subset | bit, extension | exclusive, closed | adj_[w], size + 1);
    }
  }

  std::vector<std::uint64_t> adj_;
  std::size_t min_size_;
  std::uint64_t above_ = 0;
  std::uint64_t total_ = 0;
};

}  // namespace

std::uint64_t count_connected_subsets(const ConceptGraph& graph,
                                      std::size_t min_size,
                                      const SubsetCountOptions& options) {
  if (is_forest(graph)) {
    return count_forest(graph, min_size);
  }
  const std::size_t n = graph.num_nodes();
  if (n > 64) {
    throw CapExceeded("exhaustive subset counting supports at most 64 nodes, "
                      "graph has " + std::to_string(n));
  }
  if (n > options.cap && !options.force) {
    throw CapExceeded(
        "graph has " + std::to_string(n) + " nodes, above the subset-count cap "
        "of " + std::to_string(options.cap) +
        "; trees and forests are counted without a cap, otherwise force the "
        "enumeration explicitly");
  }
  return ConnectedSetCounter(graph, min_size).run();
}

AdjacencyMatrix::AdjacencyMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

void AdjacencyMatrix::set_edge(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_ || i == j) {
    throw std::out_of_range("invalid adjacency cell");
  }
  cells_[i * n_ + j] = 1;
  cells_[j * n_ + i] = 1;
}

std::size_t AdjacencyMatrix::ones() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

AdjacencyMatrix adjacency_matrix(const ConceptGraph& graph) {
  AdjacencyMatrix t(graph.num_nodes());
  for (const auto& e : graph.edges()) t.set_edge(e.u, e.v);
  return t;
}

Weight graph_size(const ConceptGraph& graph) {
  Weight total(0);
  for (const auto& e : graph.edges()) total += e.w;
  return total;
}

}  // namespace semmap
