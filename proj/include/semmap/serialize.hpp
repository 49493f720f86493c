#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semmap/baselines.hpp"
#include "semmap/concept_graph.hpp"
#include "semmap/matrix.hpp"
#include "semmap/metrics.hpp"
#include "semmap/semantic_maps.hpp"
#include "semmap/tree_enumerator.hpp"

namespace semmap {

using nlohmann::json;

// Weights are JSON integers when integral and "num/den" strings otherwise.
json weight_to_json(const Weight& w);
Weight weight_from_json(const json& value);

json edge_to_json(const Edge& e);

// {"n":..,"labels":[..],"edges":[{"u":..,"v":..,"w":..}]}
json graph_to_json(const ConceptGraph& graph);
// Accepts the layout above; a missing "w" defaults to 1. Throws ParseError.
ConceptGraph graph_from_json(const json& doc);

json tree_to_json(const SpanningTree& tree, const ConceptGraph& source);
json boundaries_to_json(const std::vector<WeightClass>& classes);

json matrix_to_json(const FormFunctionMatrix& matrix);

json evaluation_to_json(const Evaluation& evaluation);

// Fixed columns rank, size, recall, precision, div_d, accuracy; decimals with
// 3 significant digits, "-" for a missing value.
std::string evaluation_tsv_header();
std::string evaluation_tsv_row(const std::string& rank,
                               const Evaluation& evaluation);

json semantic_map_to_json(const SemanticMap& map,
                          const FormFunctionMatrix& matrix);
json diff_to_json(const MapDiff& diff);
json study_to_json(const StudyResult& result);

// "%.3g" in the C locale.
std::string format_3g(double value);

enum class GraphFormat { kJson, kDot, kGraphml };
GraphFormat parse_graph_format(std::string_view name);

struct DotStyle {
  // Reference edges missing from the graph are drawn dashed.
  const ConceptGraph* reference = nullptr;
  // Named node groups to fill, one colour per group.
  std::vector<std::pair<std::string, std::vector<NodeId>>> regions;
};

std::string to_dot(const ConceptGraph& graph, const DotStyle& style = {});
std::string to_graphml(const ConceptGraph& graph);
ConceptGraph graph_from_graphml(std::string_view text);

// Reads JSON or GraphML (by extension, then by sniffing).
ConceptGraph load_graph(const std::string& path);

}  // namespace semmap
