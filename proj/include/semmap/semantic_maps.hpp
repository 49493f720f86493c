#pragma once

#include <vector>

#include "semmap/concept_graph.hpp"
#include "semmap/matrix.hpp"

namespace semmap {

// The region a single form occupies in a conceptual space.
struct SemanticMap {
  FormId form = 0;
  std::vector<NodeId> nodes;          // function_set(form)
  std::vector<Edge> induced_edges;    // graph edges inside nodes
  bool connected = true;
  // Connected pieces, each sorted, ordered by smallest member. Exactly one
  // piece iff connected.
  std::vector<std::vector<NodeId>> components;
};

SemanticMap region(const ConceptGraph& graph, const FormFunctionMatrix& matrix,
                   FormId form);

// Forms whose region is disconnected, ordered by form id.
std::vector<SemanticMap> violations(const ConceptGraph& graph,
                                    const FormFunctionMatrix& matrix);

// Structural comparison of two maps; weights ignored. Edge weights in the
// result come from the graph the edge was found in (candidate for matched).
struct MapDiff {
  std::vector<Edge> matched;
  std::vector<Edge> missing;  // reference only
  std::vector<Edge> extra;    // candidate only
};

MapDiff diff(const ConceptGraph& candidate, const ConceptGraph& reference);

}  // namespace semmap
