#include "semmap/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>

#include "semmap/api_service.hpp"
#include "semmap/baselines.hpp"
#include "semmap/error.hpp"
#include "semmap/semantic_maps.hpp"
#include "semmap/serialize.hpp"

namespace semmap {

namespace {

struct CommonOptions {
  std::string matrix_path;
  std::string matrix_format;  // empty: by extension
  std::string weights = "raw";
  bool lenient = false;
  bool keep_empty_functions = false;
  std::string reference_path;
  std::string output_format;
  std::string out_path;
};

struct PrecisionFlags {
  std::size_t min_size = 2;
  std::size_t cap = 25;
  std::string over_cap = "throw";

  PrecisionOptions resolve() const {
    PrecisionOptions options;
    options.min_size = min_size;
    options.cap = cap;
    options.over_cap = over_cap == "enumerate" ? OverCap::kEnumerate
                       : over_cap == "zero"    ? OverCap::kReportZero
                                               : OverCap::kThrow;
    return options;
  }

  json to_json() const {
    return {{"min_size", min_size}, {"subset_cap", cap}, {"over_cap", over_cap}};
  }
};

struct EnumerationFlags {
  std::size_t budget = 50'000;
  bool keep_zero_edges = false;

  EnumerationOptions resolve() const {
    return {keep_zero_edges ? ZeroWeightEdges::kInclude
                            : ZeroWeightEdges::kExclude,
            budget};
  }
};

void add_matrix_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("matrix", o.matrix_path, "Form-function matrix file")
      ->required();
  cmd.add_option("--format", o.matrix_format, "Matrix format")
      ->check(CLI::IsMember({"csv", "tsv", "json"}));
  cmd.add_option("--weights", o.weights, "Edge weight mode")
      ->check(CLI::IsMember({"raw", "normalized"}))
      ->capture_default_str();
  cmd.add_flag("--lenient", o.lenient, "Skip forms without any function");
  cmd.add_flag("--keep-empty-functions", o.keep_empty_functions,
               "Keep function columns no form expresses");
}

void add_precision_options(CLI::App& cmd, PrecisionFlags& p) {
  cmd.add_option("--min-size", p.min_size,
                 "Smallest subset counted in the precision denominator")
      ->capture_default_str();
  cmd.add_option("--subset-cap", p.cap,
                 "Largest non-tree graph whose subsets are enumerated")
      ->capture_default_str();
  cmd.add_option("--over-cap", p.over_cap,
                 "Above the cap: throw, enumerate anyway, or report zero")
      ->check(CLI::IsMember({"throw", "enumerate", "zero"}))
      ->capture_default_str();
}

FormFunctionMatrix load(const CommonOptions& o) {
  MatrixOptions options{o.lenient, o.keep_empty_functions};
  std::optional<MatrixFormat> format;
  if (!o.matrix_format.empty()) format = parse_matrix_format(o.matrix_format);
  return load_matrix(o.matrix_path, format, options);
}

std::optional<ConceptGraph> load_reference(const CommonOptions& o,
                                           std::size_t n) {
  if (o.reference_path.empty()) return std::nullopt;
  auto graph = load_graph(o.reference_path);
  if (graph.num_nodes() != n) {
    throw DimensionMismatch("reference map '" + o.reference_path +
                                "' does not match the matrix",
                            n, graph.num_nodes());
  }
  return graph;
}

json common_config(const CommonOptions& o) {
  return {{"input", o.matrix_path},
          {"matrix_format", o.matrix_format.empty()
                                ? std::string("auto")
                                : o.matrix_format},
          {"weights", o.weights},
          {"lenient", o.lenient},
          {"keep_empty_functions", o.keep_empty_functions},
          {"reference",
           o.reference_path.empty() ? json(nullptr) : json(o.reference_path)},
          {"output_format", o.output_format}};
}

std::string tsv_config(const json& config) {
  std::string out;
  for (const auto& [key, value] : config.items()) {
    out += "# " + key + "=" +
           (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

std::vector<std::size_t> parse_ranks(const std::string& text) {
  std::vector<std::size_t> ranks;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long long value = -1;
    try {
      value = std::stoll(item, &pos);
    } catch (const std::exception&) {
    }
    if (value < 0 || pos != item.size()) {
      throw CLI::ValidationError("--ranks", "'" + item +
                                                "' is not a non-negative integer");
    }
    ranks.push_back(static_cast<std::size_t>(value));
  }
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  return ranks;
}

// ---------------------------------------------------------------------------

struct EnumerateCommand {
  CommonOptions common;
  PrecisionFlags precision;
  EnumerationFlags enumeration;
  std::string ranks = "0,10000,20000,30000,40000";
  std::size_t boi = 3;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "enumerate", "Rank spanning trees of the colexification graph");
    add_matrix_options(*cmd, common);
    add_precision_options(*cmd, precision);
    cmd->add_option("--ranks", ranks, "Comma-separated tree ranks to evaluate")
        ->capture_default_str();
    cmd->add_option("--boi", boi, "Number of weight-class boundaries")
        ->capture_default_str();
    cmd->add_option("--budget", enumeration.budget, "Maximum trees to enumerate")
        ->capture_default_str();
    cmd->add_flag("--keep-zero-edges", enumeration.keep_zero_edges,
                  "Enumerate over zero-weight edges too");
    cmd->add_option("--reference", common.reference_path, "Reference map");
    common.output_format = "tsv";
    cmd->add_option("--output-format", common.output_format, "Report format")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();
    cmd->add_option("--out", common.out_path, "Write the report here");
  }

  int run(std::ostream& out) const {
    const auto rank_list = parse_ranks(ranks);
    if (!rank_list.empty() && rank_list.back() + 1 > enumeration.budget) {
      throw CLI::ValidationError(
          "--budget", "budget " + std::to_string(enumeration.budget) +
                          " is below the largest rank + 1 (" +
                          std::to_string(rank_list.back() + 1) + ")");
    }
    const auto matrix = load(common);
    const auto reference = load_reference(common, matrix.num_functions());
    const auto dense = build_dense_graph(matrix, parse_weight_mode(common.weights));
    const auto precision_options = precision.resolve();

    SpanningTreeStream stream(dense, enumeration.resolve());
    std::vector<WeightClass> classes;
    std::vector<RankedEvaluation> evaluations;
    std::size_t next = 0;
    while (next < rank_list.size() || classes.size() < boi) {
      auto tree = stream.next();
      if (!tree) break;
      if (classes.size() < boi &&
          (classes.empty() || classes.back().weight != tree->total_weight)) {
        classes.push_back({tree->total_weight, tree->rank});
      }
      if (next < rank_list.size() && rank_list[next] == tree->rank) {
        evaluations.push_back(
            {tree->rank, *tree,
             evaluate(tree->to_graph(dense), matrix,
                      reference ? &*reference : nullptr, precision_options)});
        ++next;
      }
    }
    if (next < rank_list.size()) {
      throw std::out_of_range("rank " + std::to_string(rank_list[next]) +
                              " is beyond the number of spanning trees (" +
                              std::to_string(stream.emitted()) + ")");
    }

    json config = common_config(common);
    config["command"] = "enumerate";
    config["ranks"] = rank_list;
    config["boi"] = boi;
    config["budget"] = enumeration.budget;
    config["keep_zero_edges"] = enumeration.keep_zero_edges;
    config["precision"] = precision.to_json();

    if (common.output_format == "json") {
      json candidates = json::array();
      for (const auto& r : evaluations) {
        candidates.push_back({{"rank", r.rank},
                              {"tree", tree_to_json(r.tree, dense)},
                              {"evaluation", evaluation_to_json(r.evaluation)}});
      }
      json report = {{"config", config},
                     {"boundaries", boundaries_to_json(classes)},
                     {"candidates", std::move(candidates)}};
      emit(report.dump(2) + "\n", common.out_path, out);
      return 0;
    }
    std::string text = tsv_config(config);
    text += "weight\tboi\n";
    for (const auto& c : classes) {
      text += to_string(c.weight) + "\t" + std::to_string(c.begin) + "\n";
    }
    if (!evaluations.empty()) {
      text += "\n" + evaluation_tsv_header();
      for (const auto& r : evaluations) {
        text += evaluation_tsv_row(std::to_string(r.rank), r.evaluation);
      }
    }
    emit(text, common.out_path, out);
    return 0;
  }
};

struct EvaluateCommand {
  CommonOptions common;
  PrecisionFlags precision;
  std::string graph_path;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand("evaluate", "Score one conceptual space");
    add_matrix_options(*cmd, common);
    add_precision_options(*cmd, precision);
    cmd->add_option("graph", graph_path, "Graph file (JSON or GraphML)")
        ->required();
    cmd->add_option("--reference", common.reference_path, "Reference map");
    common.output_format = "json";
    cmd->add_option("--output-format", common.output_format, "Report format")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();
    cmd->add_option("--out", common.out_path, "Write the report here");
  }

  int run(std::ostream& out) const {
    const auto matrix = load(common);
    const auto graph = load_graph(graph_path);
    const auto reference = load_reference(common, matrix.num_functions());
    const auto evaluation = evaluate(graph, matrix,
                                     reference ? &*reference : nullptr,
                                     precision.resolve());
    const std::size_t n = matrix.num_functions();

    json config = common_config(common);
    config["command"] = "evaluate";
    config["graph"] = graph_path;
    config["precision"] = precision.to_json();

    if (common.output_format == "json") {
      json report = {{"config", config},
                     {"evaluation", evaluation_to_json(evaluation)}};
      if (reference) {
        report["lower_bounds"] = {
            {"n", n},
            {"lb_lt", lb_lt(n)},
            {"lb_c", lb_c(n)},
            {"complete_vs_tree", complete_vs_tree_accuracy(n)}};
      }
      emit(report.dump(2) + "\n", common.out_path, out);
      return 0;
    }
    std::string text = tsv_config(config) + evaluation_tsv_header() +
                       evaluation_tsv_row("-", evaluation);
    if (reference) {
      text += "# lb_lt=" + format_3g(lb_lt(n)) + "\n";
      text += "# lb_c=" + format_3g(lb_c(n)) + "\n";
      text += "# complete_vs_tree=" + format_3g(complete_vs_tree_accuracy(n)) +
              "\n";
    }
    emit(text, common.out_path, out);
    return 0;
  }
};

struct BaselinesCommand {
  CommonOptions common;
  StudyConfig study;
  std::string generator = "rg1";
  std::optional<double> probability;
  std::optional<double> target_edges;
  std::optional<std::uint64_t> seed;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "baselines", "Correlate degree spread with accuracy on random graphs");
    add_matrix_options(*cmd, common);
    cmd->add_option("--reference", common.reference_path, "Reference map")
        ->required();
    cmd->add_option("--rounds", study.rounds)->capture_default_str();
    cmd->add_option("--samples", study.samples_per_round, "Samples per round")
        ->capture_default_str();
    cmd->add_option("--generator", generator)
        ->check(CLI::IsMember({"rg1", "rg2"}))
        ->capture_default_str();
    cmd->add_option("--p", probability,
                    "RG_1 edge probability (default (n-1)/C(n,2))")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--target-edges", target_edges,
                    "RG_2 expected edge count (default n-1)");
    cmd->add_option("--seed", seed, "Seed (falls back to $SEMMAP_SEED, then 0)");
    common.output_format = "json";
    cmd->add_option("--output-format", common.output_format, "Report format")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();
    cmd->add_option("--out", common.out_path, "Write the report here");
  }

  int run(std::ostream& out) const {
    const auto matrix = load(common);
    const auto reference = load_reference(common, matrix.num_functions());
    StudyConfig config = study;
    config.generator = parse_generator(generator);
    config.rg1_edge_probability = probability;
    config.rg2_target_edge_count = target_edges;
    if (seed) {
      config.seed = *seed;
    } else if (const char* env = std::getenv("SEMMAP_SEED")) {
      try {
        config.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw CLI::ValidationError("SEMMAP_SEED", "must be an unsigned integer");
      }
    }
    auto result = correlation_study(matrix, *reference, config);
    json report = study_to_json(result);
    json run_config = common_config(common);
    run_config["command"] = "baselines";
    report["config"].update(run_config);

    if (common.output_format == "json") {
      emit(report.dump(2) + "\n", common.out_path, out);
      return 0;
    }
    std::string text = tsv_config(report["config"]);
    text += "round\tr\tr_x100\n";
    for (std::size_t i = 0; i < result.per_round_r.size(); ++i) {
      text += std::to_string(i + 1) + "\t" + format_3g(result.per_round_r[i]) +
              "\t" + format_3g(result.per_round_r[i] * 100) + "\n";
    }
    text += "mean\t" + format_3g(result.mean) + "\t" +
            format_3g(result.mean * 100) + "\n";
    text += "std_dev\t" + format_3g(result.std_dev) + "\t" +
            format_3g(result.std_dev * 100) + "\n";
    emit(text, common.out_path, out);
    return 0;
  }
};

struct ExportCommand {
  std::string graph_path;
  std::string format = "dot";
  std::string reference_path;
  std::string matrix_path;
  std::vector<std::string> forms;
  std::string out_path;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand("export", "Render a graph as DOT, GraphML or JSON");
    cmd->add_option("graph", graph_path, "Graph file (JSON or GraphML)")
        ->required();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "dot", "graphml"}))
        ->capture_default_str();
    cmd->add_option("--reference", reference_path,
                    "Reference map; its missing edges are drawn dashed");
    cmd->add_option("--matrix", matrix_path, "Matrix for --form regions");
    cmd->add_option("--form", forms, "Highlight the region of a form (gram)")
        ->needs(cmd->get_option("--matrix"));
    cmd->add_option("--out", out_path, "Write here instead of stdout");
  }

  int run(std::ostream& out) const {
    const auto graph = load_graph(graph_path);
    std::optional<ConceptGraph> reference;
    if (!reference_path.empty()) {
      reference = load_graph(reference_path);
      if (reference->num_nodes() != graph.num_nodes()) {
        throw DimensionMismatch("reference map does not match the graph",
                                graph.num_nodes(), reference->num_nodes());
      }
    }
    std::string text;
    switch (parse_graph_format(format)) {
      case GraphFormat::kJson:
        text = graph_to_json(graph).dump(2) + "\n";
        break;
      case GraphFormat::kGraphml:
        text = to_graphml(graph);
        break;
      case GraphFormat::kDot: {
        DotStyle style;
        if (reference) style.reference = &*reference;
        if (!forms.empty()) {
          auto matrix = load_matrix(matrix_path);
          for (const auto& gram : forms) {
            auto x = matrix.find_form(gram);
            if (!x) throw Error("unknown form '" + gram + "'");
            style.regions.emplace_back(gram, matrix.function_set(*x));
          }
        }
        text = to_dot(graph, style);
        break;
      }
    }
    emit(text, out_path, out);
    return 0;
  }
};

struct GraphCommand {
  CommonOptions common;
  EnumerationFlags enumeration;
  std::optional<std::size_t> rank;
  bool dense_only;

  GraphCommand(bool dense) : dense_only(dense) {}

  void setup(CLI::App& app) {
    auto* cmd = dense_only
                    ? app.add_subcommand("dense", "Print the dense colexification graph")
                    : app.add_subcommand("tree", "Print the spanning tree at a rank");
    add_matrix_options(*cmd, common);
    if (!dense_only) {
      cmd->add_option("--rank", rank, "Tree rank")->required();
      cmd->add_option("--budget", enumeration.budget)->capture_default_str();
      cmd->add_flag("--keep-zero-edges", enumeration.keep_zero_edges);
    }
    cmd->add_option("--out", common.out_path, "Write here instead of stdout");
  }

  int run(std::ostream& out) const {
    const auto matrix = load(common);
    const auto dense = build_dense_graph(matrix, parse_weight_mode(common.weights));
    json doc;
    if (dense_only) {
      doc = graph_to_json(dense);
      doc["total_weight"] = weight_to_json(graph_size(dense));
    } else {
      doc = tree_to_json(tree_at_rank(dense, *rank, enumeration.resolve()), dense);
    }
    emit(doc.dump(2) + "\n", common.out_path, out);
    return 0;
  }
};

struct ServeCommand {
  CommonOptions common;
  PrecisionFlags precision;
  EnumerationFlags enumeration;
  std::string host = "127.0.0.1";
  int port = 8470;
  std::string ui_dir;
  std::string snapshot_dir;
  bool dev = false;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand("serve", "Serve the JSON API and web UI");
    add_matrix_options(*cmd, common);
    add_precision_options(*cmd, precision);
    cmd->add_option("--reference", common.reference_path, "Reference map");
    cmd->add_option("--host", host)->capture_default_str();
    cmd->add_option("--port", port)->capture_default_str()->check(
        CLI::Range(0, 65535));
    cmd->add_option("--budget", enumeration.budget)->capture_default_str();
    cmd->add_flag("--keep-zero-edges", enumeration.keep_zero_edges);
    cmd->add_option("--ui-dir", ui_dir, "Static web UI bundle");
    cmd->add_option("--snapshot-dir", snapshot_dir,
                    "Write session snapshots here after each edit");
    cmd->add_flag("--dev", dev, "Enable CORS for a separately served UI");
  }

  int run(std::ostream& out, std::ostream& err) const {
    auto matrix = load(common);
    auto reference = load_reference(common, matrix.num_functions());
    ServiceConfig config;
    config.weights = parse_weight_mode(common.weights);
    config.enumeration = enumeration.resolve();
    config.precision = precision.resolve();
    if (!ui_dir.empty()) config.ui_dir = ui_dir;
    if (!snapshot_dir.empty()) config.snapshot_dir = snapshot_dir;
    config.cors = dev;
    ApiService service(std::move(matrix), std::move(reference), config);

    httplib::Server server;
    // httplib also sets SO_REUSEPORT, which lets a second server share a busy
    // port silently.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                 reinterpret_cast<const void*>(&yes), sizeof yes);
    });
    service.bind(server);
    if (!server.bind_to_port(host, port)) {
      err << "semmap: cannot bind " << host << ":" << port << "\n";
      return 1;
    }
    out << "serving on http://" << host << ":" << port << "\n" << std::flush;
    server.listen_after_bind();
    return 0;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Build and evaluate conceptual spaces from form-function data",
               "semmap"};
  app.require_subcommand(1);

  EnumerateCommand enumerate;
  EvaluateCommand evaluate_cmd;
  BaselinesCommand baselines;
  ExportCommand export_cmd;
  GraphCommand dense_cmd(true);
  GraphCommand tree_cmd(false);
  ServeCommand serve;
  enumerate.setup(app);
  evaluate_cmd.setup(app);
  baselines.setup(app);
  export_cmd.setup(app);
  dense_cmd.setup(app);
  tree_cmd.setup(app);
  serve.setup(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("enumerate")) return enumerate.run(out);
    if (app.got_subcommand("evaluate")) return evaluate_cmd.run(out);
    if (app.got_subcommand("baselines")) return baselines.run(out);
    if (app.got_subcommand("export")) return export_cmd.run(out);
    if (app.got_subcommand("dense")) return dense_cmd.run(out);
    if (app.got_subcommand("tree")) return tree_cmd.run(out);
    if (app.got_subcommand("serve")) return serve.run(out, err);
  } catch (const CLI::ValidationError& e) {
    err << "semmap: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "semmap: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace semmap
