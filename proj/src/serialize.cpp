#include "semmap/serialize.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "semmap/error.hpp"

namespace semmap {

json weight_to_json(const Weight& w) {
  if (w.denominator() == 1) return w.numerator();
  return to_string(w);
}

Weight weight_from_json(const json& value) {
  if (value.is_number_integer()) return Weight(value.get<std::int64_t>());
  if (value.is_string()) return parse_weight(value.get<std::string>());
  throw ParseError("edge weight must be an integer or a \"num/den\" string, got " +
                       value.dump(),
                   0, 0);
}

json edge_to_json(const Edge& e) {
  return {{"u", e.u}, {"v", e.v}, {"w", weight_to_json(e.w)}};
}

json graph_to_json(const ConceptGraph& graph) {
  json edges = json::array();
  for (const auto& e : graph.edges()) edges.push_back(edge_to_json(e));
  return {{"n", graph.num_nodes()},
          {"labels", graph.labels()},
          {"edges", std::move(edges)}};
}

ConceptGraph graph_from_json(const json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("n")) {
      throw ParseError("graph JSON needs an 'n' field", 0, 0);
    }
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<std::string> labels;
    if (doc.contains("labels") && !doc.at("labels").is_null()) {
      labels = doc.at("labels").get<std::vector<std::string>>();
    }
    ConceptGraph graph(n, std::move(labels));
    if (doc.contains("edges")) {
      std::size_t index = 0;
      for (const auto& item : doc.at("edges")) {
        ++index;
        Weight w = item.contains("w") ? weight_from_json(item.at("w")) : Weight(1);
        try {
          graph.add_edge(item.at("u").get<NodeId>(), item.at("v").get<NodeId>(),
                         w);
        } catch (const std::logic_error& e) {
          throw ParseError(std::string("edge ") + std::to_string(index) + ": " +
                               e.what(),
                           index, 0);
        }
      }
    }
    return graph;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what(), 0, 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what(), 0, 0);
  }
}

json tree_to_json(const SpanningTree& tree, const ConceptGraph& source) {
  json out = graph_to_json(tree.to_graph(source));
  out["rank"] = tree.rank;
  out["total_weight"] = weight_to_json(tree.total_weight);
  return out;
}

json boundaries_to_json(const std::vector<WeightClass>& classes) {
  json out = json::array();
  for (const auto& c : classes) {
    out.push_back({{"weight", weight_to_json(c.weight)}, {"begin", c.begin}});
  }
  return out;
}

json matrix_to_json(const FormFunctionMatrix& matrix) {
  return json::parse(serialize_matrix(matrix, MatrixFormat::kJson));
}

json evaluation_to_json(const Evaluation& evaluation) {
  json out;
  out["size"] = weight_to_json(evaluation.size);
  out["recall"] = evaluation.recall.value();
  out["recall_numerator"] = evaluation.recall.satisfied;
  out["forms"] = evaluation.recall.total;
  out["precision"] = evaluation.precision.value;
  out["precision_denominator"] =
      evaluation.precision.denominator ? json(*evaluation.precision.denominator)
                                       : json(nullptr);
  out["div_d"] = evaluation.div_d;
  out["accuracy"] =
      evaluation.accuracy ? json(*evaluation.accuracy) : json(nullptr);
  out["satisfied_forms"] = evaluation.recall.satisfied_forms;
  out["violating_forms"] = evaluation.recall.violating_forms;
  return out;
}

std::string format_3g(double value) {
  std::array<char, 64> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%.3g", value);
  std::string out(buffer.data());
  // Guard against a non-C numeric locale.
  for (auto& c : out) {
    if (c == ',') c = '.';
  }
  return out;
}

std::string evaluation_tsv_header() {
  return "rank\tsize\trecall\tprecision\tdiv_d\taccuracy\n";
}

std::string evaluation_tsv_row(const std::string& rank,
                               const Evaluation& evaluation) {
  const auto& size = evaluation.size;
  std::string out = rank + "\t";
  out += size.denominator() == 1 ? std::to_string(size.numerator())
                                 : format_3g(to_double(size));
  out += "\t" + format_3g(evaluation.recall.value());
  out += "\t" + (evaluation.precision.denominator
                     ? format_3g(evaluation.precision.value)
                     : std::string("-"));
  out += "\t" + format_3g(evaluation.div_d);
  out += "\t" + (evaluation.accuracy ? format_3g(*evaluation.accuracy)
                                     : std::string("-"));
  out += "\n";
  return out;
}

json semantic_map_to_json(const SemanticMap& map,
                          const FormFunctionMatrix& matrix) {
  const auto& form = matrix.form(map.form);
  json labels = json::array();
  for (NodeId v : map.nodes) labels.push_back(matrix.function(v).abbr);
  json edges = json::array();
  for (const auto& e : map.induced_edges) edges.push_back(edge_to_json(e));
  return {{"form", map.form},
          {"language", form.language},
          {"gram", form.gram},
          {"nodes", map.nodes},
          {"node_labels", std::move(labels)},
          {"induced_edges", std::move(edges)},
          {"connected", map.connected},
          {"components", map.components}};
}

json diff_to_json(const MapDiff& diff) {
  auto list = [](const std::vector<Edge>& edges) {
    json out = json::array();
    for (const auto& e : edges) out.push_back(edge_to_json(e));
    return out;
  };
  return {{"matched", list(diff.matched)},
          {"missing", list(diff.missing)},
          {"extra", list(diff.extra)}};
}

json study_to_json(const StudyResult& result) {
  const auto& c = result.config;
  json rounds = json::array();
  for (std::size_t i = 0; i < result.per_round_r.size(); ++i) {
    rounds.push_back({{"round", i + 1},
                      {"r", result.per_round_r[i]},
                      {"r_x100", result.per_round_r[i] * 100.0}});
  }
  return {{"config",
           {{"rounds", c.rounds},
            {"samples_per_round", c.samples_per_round},
            {"generator", std::string(to_string(c.generator))},
            {"rg1_edge_probability", result.rg1_edge_probability},
            {"rg2_target_edge_count", result.rg2_target_edge_count},
            {"seed", c.seed},
            {"rng", std::string(Rng::kAlgorithm)}}},
          {"rounds", std::move(rounds)},
          {"mean", result.mean},
          {"std_dev", result.std_dev},
          {"mean_x100", result.mean * 100.0},
          {"std_dev_x100", result.std_dev * 100.0}};
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "json") return GraphFormat::kJson;
  if (name == "dot") return GraphFormat::kDot;
  if (name == "graphml") return GraphFormat::kGraphml;
  throw std::invalid_argument("unknown graph format '" + std::string(name) +
                              "' (expected json, dot or graphml)");
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::array<const char*, 8> kPalette = {
    "#a6d96a", "#74add1", "#fdae61", "#d7b5d8",
    "#fee08b", "#80cdc1", "#f4a582", "#bababa"};

}  // namespace

std::string to_dot(const ConceptGraph& graph, const DotStyle& style) {
  std::map<NodeId, std::vector<std::string>> fills;
  for (std::size_t r = 0; r < style.regions.size(); ++r) {
    for (NodeId v : style.regions[r].second) {
      fills[v].push_back(kPalette[r % kPalette.size()]);
    }
  }

  std::ostringstream out;
  out << "graph semmap {\n";
  out << "  node [shape=ellipse];\n";
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    out << "  " << v << " [label=" << dot_quote(graph.label(v));
    if (auto it = fills.find(v); it != fills.end()) {
      std::string colors;
      for (const auto& c : it->second) {
        if (!colors.empty()) colors += ':';
        colors += c;
      }
      out << ", style=" << (it->second.size() > 1 ? "wedged" : "filled")
          << ", fillcolor=" << dot_quote(colors);
    }
    out << "];\n";
  }
  for (std::size_t r = 0; r < style.regions.size(); ++r) {
    out << "  // region " << style.regions[r].first << ": "
        << kPalette[r % kPalette.size()] << "\n";
  }
  for (const auto& e : graph.edges()) {
    out << "  " << e.u << " -- " << e.v << " [label=" << dot_quote(to_string(e.w))
        << "];\n";
  }
  if (style.reference != nullptr) {
    for (const auto& e : diff(graph, *style.reference).missing) {
      out << "  " << e.u << " -- " << e.v
          << " [label=" << dot_quote(to_string(e.w)) << ", style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_graphml(const ConceptGraph& graph) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" "
         "attr.type=\"string\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" "
         "attr.type=\"string\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    out << "    <node id=\"n" << v << "\">";
    if (!graph.labels().empty()) {
      out << "<data key=\"label\">" << xml_escape(graph.labels()[v]) << "</data>";
    }
    out << "</node>\n";
  }
  for (const auto& e : graph.edges()) {
    out << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v
        << "\"><data key=\"weight\">" << to_string(e.w) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

ConceptGraph graph_from_graphml(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("malformed GraphML: ") + e.what(), e.line(), 0);
  }
  const auto* graph_node = tree.get_child_optional("graphml.graph").get_ptr();
  if (graph_node == nullptr) {
    throw ParseError("GraphML has no <graph> element", 0, 0);
  }

  std::map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  bool any_label = false;
  std::vector<std::tuple<std::string, std::string, Weight>> edges;
  for (const auto& [tag, child] : *graph_node) {
    if (tag == "node") {
      auto id = child.get<std::string>("<xmlattr>.id");
      ids.emplace(id, labels.size());
      std::string label = id;
      for (const auto& [dtag, data] : child) {
        if (dtag == "data" && data.get<std::string>("<xmlattr>.key", "") == "label") {
          label = data.get_value<std::string>();
          any_label = true;
        }
      }
      labels.push_back(label);
    } else if (tag == "edge") {
      Weight w(1);
      for (const auto& [dtag, data] : child) {
        if (dtag == "data" && data.get<std::string>("<xmlattr>.key", "") == "weight") {
          try {
            w = parse_weight(data.get_value<std::string>());
          } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("GraphML edge weight: ") + e.what(), 0, 0);
          }
        }
      }
      edges.emplace_back(child.get<std::string>("<xmlattr>.source"),
                         child.get<std::string>("<xmlattr>.target"), w);
    }
  }
  const std::size_t n = labels.size();
  ConceptGraph graph(n, any_label ? std::move(labels) : std::vector<std::string>{});
  for (const auto& [s, t, w] : edges) {
    auto si = ids.find(s), ti = ids.find(t);
    if (si == ids.end() || ti == ids.end()) {
      throw ParseError("GraphML edge references unknown node '" +
                           (si == ids.end() ? s : t) + "'",
                       0, 0);
    }
    try {
      graph.add_edge(si->second, ti->second, w);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("GraphML: ") + e.what(), 0, 0);
    }
  }
  return graph;
}

ConceptGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  auto first = text.find_first_not_of(" \t\r\n");
  bool xml = (path.size() >= 8 && path.substr(path.size() - 8) == ".graphml") ||
             (first != std::string::npos && text[first] == '<');
  if (xml) return graph_from_graphml(text);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("graph file '" + path + "' is not valid JSON: " + e.what(),
                     0, 0);
  }
  return graph_from_json(doc);
}

}  // namespace semmap
