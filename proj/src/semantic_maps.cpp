#include "semmap/semantic_maps.hpp"

#include "semmap/error.hpp"

namespace semmap {

SemanticMap region(const ConceptGraph& graph, const FormFunctionMatrix& matrix,
                   FormId form) {
  if (graph.num_nodes() != matrix.num_functions()) {
    throw DimensionMismatch("graph does not match the matrix's functions",
                            matrix.num_functions(), graph.num_nodes());
  }
  SemanticMap map;
  map.form = form;
  map.nodes = matrix.function_set(form);
  std::vector<char> member(graph.num_nodes(), 0);
  for (NodeId v : map.nodes) member[v] = 1;
  for (const auto& e : graph.edges()) {
    if (member[e.u] && member[e.v]) map.induced_edges.push_back(e);
  }
  map.components = induced_components(graph, map.nodes);
  map.connected = map.components.size() == 1;
  return map;
}

std::vector<SemanticMap> violations(const ConceptGraph& graph,
                                    const FormFunctionMatrix& matrix) {
  std::vector<SemanticMap> out;
  for (FormId x = 0; x < matrix.num_forms(); ++x) {
    auto map = region(graph, matrix, x);
    if (!map.connected) out.push_back(std::move(map));
  }
  return out;
}

MapDiff diff(const ConceptGraph& candidate, const ConceptGraph& reference) {
  if (candidate.num_nodes() != reference.num_nodes()) {
    throw DimensionMismatch("reference map does not match the candidate",
                            candidate.num_nodes(), reference.num_nodes());
  }
  MapDiff out;
  for (const auto& e : candidate.edges()) {
    (reference.has_edge(e.u, e.v) ? out.matched : out.extra).push_back(e);
  }
  for (const auto& e : reference.edges()) {
    if (!candidate.has_edge(e.u, e.v)) out.missing.push_back(e);
  }
  return out;
}

}  // namespace semmap
