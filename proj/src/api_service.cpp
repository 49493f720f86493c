#include "semmap/api_service.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include <httplib.h>

#include "semmap/error.hpp"
#include "semmap/semantic_maps.hpp"
#include "semmap/serialize.hpp"

namespace semmap {

namespace {

ApiService::Response error(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

// Non-negative decimal integer, nothing else.
std::optional<std::size_t> parse_index(const std::string& text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

json edit_to_json(const EditOp& op) {
  return {{"op", op.kind == EditOp::Kind::kAdd ? "add" : "remove"},
          {"u", op.u},
          {"v", op.v}};
}

EditOp edit_from_json(const json& doc) {
  EditOp op;
  auto kind = doc.at("op").get<std::string>();
  if (kind == "add" || kind == "add_edge") {
    op.kind = EditOp::Kind::kAdd;
  } else if (kind == "remove" || kind == "remove_edge") {
    op.kind = EditOp::Kind::kRemove;
  } else {
    throw std::domain_error("unknown edit op '" + kind + "'");
  }
  op.u = doc.at("u").get<NodeId>();
  op.v = doc.at("v").get<NodeId>();
  return op;
}

}  // namespace

Session::Session(std::string id, ConceptGraph base)
    : id_(std::move(id)), base_(base), current_(std::move(base)) {}

void Session::apply(const EditOp& op, const ConceptGraph& dense) {
  if (op.u >= current_.num_nodes() || op.v >= current_.num_nodes()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (op.u == op.v) {
    throw std::invalid_argument("self-loop on node " + std::to_string(op.u));
  }
  if (op.kind == EditOp::Kind::kAdd) {
    if (current_.has_edge(op.u, op.v)) {
      throw std::logic_error("edge {" + std::to_string(op.u) + ", " +
                             std::to_string(op.v) + "} already present");
    }
    current_.add_edge(op.u, op.v, dense.weight(op.u, op.v).value_or(Weight(0)));
  } else {
    if (!current_.has_edge(op.u, op.v)) {
      throw std::logic_error("edge {" + std::to_string(op.u) + ", " +
                             std::to_string(op.v) + "} not present");
    }
    current_.remove_edge(op.u, op.v);
  }
  edits_.push_back(op);
}

json Session::snapshot() const {
  json edits = json::array();
  for (const auto& op : edits_) edits.push_back(edit_to_json(op));
  return {{"base", graph_to_json(base_)}, {"edits", std::move(edits)}};
}

std::shared_ptr<Session> Session::restore(std::string id, const json& snapshot,
                                          const ConceptGraph& dense) {
  auto session = std::make_shared<Session>(std::move(id),
                                           graph_from_json(snapshot.at("base")));
  for (const auto& item : snapshot.value("edits", json::array())) {
    session->apply(edit_from_json(item), dense);
  }
  return session;
}

ApiService::ApiService(FormFunctionMatrix matrix,
                       std::optional<ConceptGraph> reference,
                       ServiceConfig config)
    : matrix_(std::move(matrix)),
      dense_(build_dense_graph(matrix_, config.weights)),
      reference_(std::move(reference)),
      config_(std::move(config)),
      trees_(dense_, config_.enumeration),
      id_state_(std::random_device{}()) {
  if (reference_ && reference_->num_nodes() != matrix_.num_functions()) {
    throw DimensionMismatch("reference map does not match the matrix",
                            matrix_.num_functions(), reference_->num_nodes());
  }
  config_.precision.cache = &subset_cache_;
}

ApiService::~ApiService() = default;

json ApiService::evaluate_json(const ConceptGraph& graph) {
  return evaluation_to_json(evaluate(graph, matrix_,
                                     reference_ ? &*reference_ : nullptr,
                                     config_.precision));
}

ApiService::Response ApiService::dataset() const {
  return {200, matrix_to_json(matrix_)};
}

ApiService::Response ApiService::dense_graph() const {
  json out = graph_to_json(dense_);
  out["total_weight"] = weight_to_json(graph_size(dense_));
  return {200, out};
}

ApiService::Response ApiService::reference() const {
  if (!reference_) return error(404, "no reference map loaded");
  return {200, graph_to_json(*reference_)};
}

ApiService::Response ApiService::tree(const std::optional<std::string>& rank) {
  if (!rank) return error(400, "missing 'rank' parameter");
  auto k = parse_index(*rank);
  if (!k) return error(400, "rank must be a non-negative integer");
  try {
    auto t = trees_.at(*k);
    return {200,
            {{"tree", tree_to_json(t, dense_)},
             {"evaluation", evaluate_json(t.to_graph(dense_))}}};
  } catch (const std::out_of_range& e) {
    return error(400, e.what());
  }
}

ApiService::Response ApiService::boundaries(
    const std::optional<std::string>& classes) {
  std::size_t count = 3;
  if (classes) {
    auto parsed = parse_index(*classes);
    if (!parsed || *parsed == 0) {
      return error(400, "classes must be a positive integer");
    }
    count = *parsed;
  }
  return {200, {{"boundaries", boundaries_to_json(trees_.boundaries(count))}}};
}

std::string ApiService::new_session_id() {
  std::lock_guard lock(id_mutex_);
  id_state_ = mix_seed(id_state_, 0x5E55);
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(id_state_));
  return buffer;
}

std::shared_ptr<Session> ApiService::find_session(const std::string& id) {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

json ApiService::session_state(const Session& session) {
  const auto& graph = session.current();
  json violating = json::array();
  for (const auto& map : violations(graph, matrix_)) {
    violating.push_back(semantic_map_to_json(map, matrix_));
  }
  json edits = json::array();
  for (const auto& op : session.edits()) edits.push_back(edit_to_json(op));
  return {{"id", session.id()},
          {"graph", graph_to_json(graph)},
          {"connected", is_connected(graph)},
          {"evaluation", evaluate_json(graph)},
          {"violations", std::move(violating)},
          {"edits", std::move(edits)}};
}

void ApiService::persist(const Session& session) const {
  if (!config_.snapshot_dir) return;
  std::filesystem::create_directories(*config_.snapshot_dir);
  std::ofstream out(std::filesystem::path(*config_.snapshot_dir) /
                    (session.id() + ".json"));
  out << session.snapshot().dump(2) << "\n";
}

ApiService::Response ApiService::create_session(const std::string& body) {
  json doc;
  try {
    doc = body.empty() ? json::object() : json::parse(body);
  } catch (const json::parse_error& e) {
    return error(400, std::string("invalid JSON body: ") + e.what());
  }
  std::shared_ptr<Session> session;
  const std::string id = new_session_id();
  try {
    if (doc.contains("snapshot")) {
      session = Session::restore(id, doc.at("snapshot"), dense_);
    } else if (doc.contains("graph")) {
      session = std::make_shared<Session>(id, graph_from_json(doc.at("graph")));
    } else {
      std::size_t rank = 0;
      if (doc.contains("from_rank")) {
        const auto& r = doc.at("from_rank");
        if (!r.is_number_integer() || r.get<long long>() < 0) {
          return error(400, "from_rank must be a non-negative integer");
        }
        rank = r.get<std::size_t>();
      }
      session = std::make_shared<Session>(id, trees_.at(rank).to_graph(dense_));
    }
  } catch (const std::out_of_range& e) {
    return error(400, e.what());
  } catch (const std::exception& e) {
    return error(400, e.what());
  }
  if (session->current().num_nodes() != matrix_.num_functions()) {
    return error(400, "session graph has " +
                          std::to_string(session->current().num_nodes()) +
                          " nodes, dataset has " +
                          std::to_string(matrix_.num_functions()) +
                          " functions");
  }
  json state;
  try {
    state = session_state(*session);
  } catch (const CapExceeded& e) {
    return error(422, e.what());
  }
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_.emplace(id, session);
  }
  persist(*session);
  return {201, state};
}

ApiService::Response ApiService::get_session(const std::string& id) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(session->mutex());
  return {200, session_state(*session)};
}

ApiService::Response ApiService::edit(const std::string& id,
                                      const std::string& body) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown session '" + id + "'");
  EditOp op;
  try {
    op = edit_from_json(json::parse(body));
  } catch (const std::exception& e) {
    return error(400, std::string("malformed edit: ") + e.what());
  }
  std::lock_guard lock(session->mutex());
  try {
    session->apply(op, dense_);
  } catch (const std::out_of_range& e) {
    return error(400, e.what());
  } catch (const std::invalid_argument& e) {
    return error(422, e.what());
  } catch (const std::logic_error& e) {
    return error(409, e.what());
  }
  json state;
  try {
    state = session_state(*session);
  } catch (const CapExceeded& e) {
    return error(422, e.what());
  }
  persist(*session);
  return {200, state};
}

ApiService::Response ApiService::form(const std::string& id,
                                      const std::string& form) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown session '" + id + "'");
  std::optional<FormId> x = parse_index(form);
  if (!x) x = matrix_.find_form(form);
  if (!x || *x >= matrix_.num_forms()) {
    return error(404, "unknown form '" + form + "'");
  }
  std::lock_guard lock(session->mutex());
  return {200, semantic_map_to_json(region(session->current(), matrix_, *x),
                                    matrix_)};
}

ApiService::Response ApiService::session_diff(const std::string& id) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown session '" + id + "'");
  if (!reference_) return error(404, "no reference map loaded");
  std::lock_guard lock(session->mutex());
  return {200, diff_to_json(diff(session->current(), *reference_))};
}

ApiService::Response ApiService::snapshot(const std::string& id) {
  auto session = find_session(id);
  if (!session) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(session->mutex());
  return {200, session->snapshot()};
}

void ApiService::bind(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto param = [](const httplib::Request& req,
                  const char* name) -> std::optional<std::string> {
    if (!req.has_param(name)) return std::nullopt;
    return req.get_param_value(name);
  };

  server.Get("/api/dataset", [=, this](const httplib::Request&,
                                       httplib::Response& res) {
    send(res, dataset());
  });
  server.Get("/api/graph/dense", [=, this](const httplib::Request&,
                                           httplib::Response& res) {
    send(res, dense_graph());
  });
  server.Get("/api/reference", [=, this](const httplib::Request&,
                                         httplib::Response& res) {
    send(res, reference());
  });
  server.Get("/api/trees/boi", [=, this](const httplib::Request& req,
                                         httplib::Response& res) {
    send(res, boundaries(param(req, "classes")));
  });
  server.Get("/api/trees", [=, this](const httplib::Request& req,
                                     httplib::Response& res) {
    send(res, tree(param(req, "rank")));
  });
  server.Post("/api/session", [=, this](const httplib::Request& req,
                                        httplib::Response& res) {
    send(res, create_session(req.body));
  });
  server.Get(R"(/api/session/([^/]+))", [=, this](const httplib::Request& req,
                                                  httplib::Response& res) {
    send(res, get_session(req.matches[1]));
  });
  server.Post(R"(/api/session/([^/]+)/edit)",
              [=, this](const httplib::Request& req, httplib::Response& res) {
                send(res, edit(req.matches[1], req.body));
              });
  server.Get(R"(/api/session/([^/]+)/form/([^/]+))",
             [=, this](const httplib::Request& req, httplib::Response& res) {
               send(res, form(req.matches[1],
                              httplib::detail::decode_url(req.matches[2], false)));
             });
  server.Get(R"(/api/session/([^/]+)/diff)",
             [=, this](const httplib::Request& req, httplib::Response& res) {
               send(res, session_diff(req.matches[1]));
             });
  server.Get(R"(/api/session/([^/]+)/snapshot)",
             [=, this](const httplib::Request& req, httplib::Response& res) {
               send(res, snapshot(req.matches[1]));
             });

  if (config_.ui_dir) server.set_mount_point("/", *config_.ui_dir);

  if (config_.cors) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods",
                                 "GET, POST, OPTIONS"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&,
                                    httplib::Response& res) {
      res.status = 204;
    });
  }

  server.set_exception_handler([](const httplib::Request&,
                                  httplib::Response& res,
                                  std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(json{{"error", message}}.dump(), "application/json");
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(json{{"error", httplib::status_message(res.status)}}.dump(),
                      "application/json");
    }
  });
}

}  // namespace semmap
