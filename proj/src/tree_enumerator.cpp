#include "semmap/tree_enumerator.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

#include "semmap/error.hpp"

namespace semmap {

ConceptGraph SpanningTree::to_graph(const ConceptGraph& source) const {
  return ConceptGraph::from_edges(source.num_nodes(), edges, source.labels());
}

namespace {

class EdgeBits {
 public:
  explicit EdgeBits(std::size_t size = 0) : words_((size + 63) / 64, 0) {}

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

 private:
  std::vector<std::uint64_t> words_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Graph edges indexed by canonical id, plus the greedy scan order.
struct IndexedGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<std::uint32_t> order;  // weight desc, id asc

  IndexedGraph(const ConceptGraph& graph, ZeroWeightEdges zero_edges)
      : n(graph.num_nodes()) {
    for (const auto& e : graph.edges()) {
      if (zero_edges == ZeroWeightEdges::kExclude && e.w == Weight(0)) continue;
      edges.push_back(e);
    }
    order.resize(edges.size());
    std::iota(order.begin(), order.end(), std::uint32_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return edges[a].w > edges[b].w;
                     });
  }

  struct Result {
    std::vector<std::uint32_t> tree;  // sorted ids
    Weight weight{0};
  };

  // Seeds a union-find with the included edges (assumed acyclic) and scans
  // the rest greedily.
  std::optional<Result> kruskal(const EdgeBits& included,
                                const EdgeBits& excluded) const {
    if (n == 0) return std::nullopt;
    UnionFind uf(n);
    Result out;
    for (std::uint32_t id = 0; id < edges.size(); ++id) {
      if (!included.test(id)) continue;
      uf.unite(edges[id].u, edges[id].v);
      out.tree.push_back(id);
      out.weight += edges[id].w;
    }
    for (std::uint32_t id : order) {
      if (out.tree.size() + 1 == n) break;
      if (included.test(id) || excluded.test(id)) continue;
      if (uf.unite(edges[id].u, edges[id].v)) {
        out.tree.push_back(id);
        out.weight += edges[id].w;
      }
    }
    if (out.tree.size() + 1 != n) return std::nullopt;
    std::sort(out.tree.begin(), out.tree.end());
    return out;
  }

  SpanningTree materialize(const Result& result, std::size_t rank) const {
    SpanningTree tree;
    tree.edges.reserve(result.tree.size());
    for (std::uint32_t id : result.tree) tree.edges.push_back(edges[id]);
    tree.total_weight = result.weight;
    tree.rank = rank;
    return tree;
  }
};

}  // namespace

std::optional<SpanningTree> constrained_max_spanning_tree(
    const ConceptGraph& graph, const std::vector<EdgeKey>& included,
    const std::vector<EdgeKey>& excluded) {
  IndexedGraph indexed(graph, ZeroWeightEdges::kInclude);
  std::map<EdgeKey, std::size_t> ids;
  for (std::size_t i = 0; i < indexed.edges.size(); ++i) {
    ids[{indexed.edges[i].u, indexed.edges[i].v}] = i;
  }
  auto lookup = [&](const EdgeKey& key) {
    auto it = ids.find(std::minmax(key.first, key.second));
    if (it == ids.end()) {
      throw std::invalid_argument("edge {" + std::to_string(key.first) + ", " +
                                  std::to_string(key.second) +
                                  "} is not in the graph");
    }
    return it->second;
  };
  EdgeBits in(indexed.edges.size());
  EdgeBits out(indexed.edges.size());
  UnionFind uf(graph.num_nodes());
  for (const auto& key : included) {
    auto id = lookup(key);
    if (!uf.unite(indexed.edges[id].u, indexed.edges[id].v)) {
      throw std::invalid_argument("included edges contain a cycle");
    }
    in.set(id);
  }
  for (const auto& key : excluded) {
    auto id = lookup(key);
    if (in.test(id)) return std::nullopt;
    out.set(id);
  }
  auto result = indexed.kruskal(in, out);
  if (!result) return std::nullopt;
  return indexed.materialize(*result, 0);
}

class SpanningTreeStream::Impl {
 public:
  Impl(const ConceptGraph& graph, EnumerationOptions options)
      : options_(options), graph_(graph, options.zero_edges) {
    if (graph.num_nodes() == 0) {
      throw Error("cannot enumerate spanning trees of an empty graph");
    }
    EdgeBits none(graph_.edges.size());
    auto best = graph_.kruskal(none, none);
    if (!best) {
      throw Error(options.zero_edges == ZeroWeightEdges::kExclude
                      ? "graph restricted to positive-weight edges is not "
                        "connected; no spanning tree exists (enumerate with "
                        "zero-weight edges kept instead)"
                      : "graph is not connected; no spanning tree exists");
    }
    queue_.insert({none, none, std::move(best->tree), best->weight});
  }

  std::optional<SpanningTree> next() {
    if (budget_reached() || queue_.empty()) return std::nullopt;
    auto node = queue_.extract(queue_.begin());
    Partition& part = node.value();
    SpanningTree tree =
        graph_.materialize({part.tree, part.weight}, emitted_++);
    assert(tree.edges.size() + 1 == graph_.n);
    branch(part);
    return tree;
  }

  std::size_t emitted() const { return emitted_; }
  bool exhausted() const { return queue_.empty(); }
  bool budget_reached() const { return emitted_ >= options_.budget; }
  const EnumerationOptions& options() const { return options_; }

 private:
  struct Partition {
    EdgeBits included;
    EdgeBits excluded;
    std::vector<std::uint32_t> tree;
    Weight weight;
  };

  struct Before {
    bool operator()(const Partition& a, const Partition& b) const {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.tree < b.tree;
    }
  };

  void branch(const Partition& part) {
    EdgeBits included = part.included;
    for (std::uint32_t id : part.tree) {
      if (part.included.test(id)) continue;
      EdgeBits excluded = part.excluded;
      excluded.set(id);
      if (auto child = graph_.kruskal(included, excluded)) {
        queue_.insert({included, std::move(excluded), std::move(child->tree),
                       child->weight});
      }
      included.set(id);
    }
    // Every queued partition yields at least one tree, so anything ranked
    // below the remaining budget can never be reached.
    if (options_.budget != kUnlimitedBudget) {
      std::size_t remaining = options_.budget - emitted_;
      while (queue_.size() > remaining) queue_.erase(std::prev(queue_.end()));
    }
  }

  EnumerationOptions options_;
  IndexedGraph graph_;
  std::set<Partition, Before> queue_;
  std::size_t emitted_ = 0;
};

SpanningTreeStream::SpanningTreeStream(const ConceptGraph& graph,
                                       EnumerationOptions options)
    : impl_(std::make_unique<Impl>(graph, options)) {}

SpanningTreeStream::~SpanningTreeStream() = default;
SpanningTreeStream::SpanningTreeStream(SpanningTreeStream&&) noexcept = default;
SpanningTreeStream& SpanningTreeStream::operator=(SpanningTreeStream&&) noexcept =
    default;

std::optional<SpanningTree> SpanningTreeStream::next() { return impl_->next(); }
std::size_t SpanningTreeStream::emitted() const { return impl_->emitted(); }
bool SpanningTreeStream::exhausted() const { return impl_->exhausted(); }
bool SpanningTreeStream::budget_reached() const {
  return impl_->budget_reached();
}
const EnumerationOptions& SpanningTreeStream::options() const {
  return impl_->options();
}

namespace {

[[noreturn]] void throw_rank(std::size_t rank, const SpanningTreeStream& s) {
  if (s.budget_reached()) {
    throw std::out_of_range("rank " + std::to_string(rank) +
                            " is beyond the tree budget of " +
                            std::to_string(s.options().budget));
  }
  throw std::out_of_range("rank " + std::to_string(rank) +
                          " is beyond the number of spanning trees (" +
                          std::to_string(s.emitted()) + ")");
}

}  // namespace

SpanningTree tree_at_rank(const ConceptGraph& graph, std::size_t rank,
                          EnumerationOptions options) {
  SpanningTreeStream stream(graph, options);
  while (auto tree = stream.next()) {
    if (tree->rank == rank) return std::move(*tree);
  }
  throw_rank(rank, stream);
}

std::vector<WeightClass> weight_class_boundaries(const ConceptGraph& graph,
                                                 std::size_t max_classes,
                                                 EnumerationOptions options) {
  std::vector<WeightClass> out;
  if (max_classes == 0) return out;
  SpanningTreeStream stream(graph, options);
  while (auto tree = stream.next()) {
    if (out.empty() || out.back().weight != tree->total_weight) {
      out.push_back({tree->total_weight, tree->rank});
      if (out.size() == max_classes) break;
    }
  }
  return out;
}

CachedTreeStream::CachedTreeStream(const ConceptGraph& graph,
                                   EnumerationOptions options)
    : options_(options), stream_(graph, options) {}

bool CachedTreeStream::advance_locked() {
  auto tree = stream_.next();
  if (!tree) return false;
  trees_.push_back(std::move(*tree));
  return true;
}

SpanningTree CachedTreeStream::at(std::size_t rank) {
  std::lock_guard lock(mutex_);
  while (trees_.size() <= rank) {
    if (!advance_locked()) throw_rank(rank, stream_);
  }
  return trees_[rank];
}

std::vector<WeightClass> CachedTreeStream::boundaries(std::size_t max_classes) {
  std::lock_guard lock(mutex_);
  std::vector<WeightClass> out;
  if (max_classes == 0) return out;
  std::size_t i = 0;
  while (true) {
    if (i == trees_.size() && !advance_locked()) break;
    const auto& tree = trees_[i];
    if (out.empty() || out.back().weight != tree.total_weight) {
      out.push_back({tree.total_weight, tree.rank});
      if (out.size() == max_classes) break;
    }
    ++i;
  }
  return out;
}

std::size_t CachedTreeStream::cached() const {
  std::lock_guard lock(mutex_);
  return trees_.size();
}

}  // namespace semmap
