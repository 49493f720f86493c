#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "semmap/concept_graph.hpp"
#include "semmap/matrix.hpp"
#include "semmap/metrics.hpp"
#include "semmap/tree_enumerator.hpp"

namespace httplib {
class Server;
}

namespace semmap {

struct ServiceConfig {
  WeightMode weights = WeightMode::kRaw;
  EnumerationOptions enumeration;
  PrecisionOptions precision;  // cache is supplied by the service
  std::optional<std::string> ui_dir;
  std::optional<std::string> snapshot_dir;
  bool cors = false;
};

struct EditOp {
  enum class Kind { kAdd, kRemove };
  Kind kind = Kind::kAdd;
  NodeId u = 0;
  NodeId v = 0;

  bool operator==(const EditOp&) const = default;
};

// A base graph plus the edits applied to it. Replaying the log over the base
// reproduces the current graph.
class Session {
 public:
  Session(std::string id, ConceptGraph base);

  const std::string& id() const { return id_; }
  const ConceptGraph& base() const { return base_; }
  const ConceptGraph& current() const { return current_; }
  const std::vector<EditOp>& edits() const { return edits_; }

  // Applies and logs an edit; added edges take their weight from `dense`.
  // Throws std::invalid_argument (self-loop), std::out_of_range (bad id) or
  // std::logic_error (duplicate add / missing remove) and leaves the session
  // unchanged.
  void apply(const EditOp& op, const ConceptGraph& dense);

  nlohmann::json snapshot() const;
  static std::shared_ptr<Session> restore(std::string id,
                                          const nlohmann::json& snapshot,
                                          const ConceptGraph& dense);

  std::mutex& mutex() const { return mutex_; }

 private:
  std::string id_;
  ConceptGraph base_;
  ConceptGraph current_;
  std::vector<EditOp> edits_;
  mutable std::mutex mutex_;
};

// JSON-over-HTTP facade over one dataset. Handlers are plain methods so they
// can be exercised without a socket; bind() attaches them to an httplib
// server.
class ApiService {
 public:
  struct Response {
    int status = 200;
    nlohmann::json body;
  };

  ApiService(FormFunctionMatrix matrix, std::optional<ConceptGraph> reference,
             ServiceConfig config = {});
  ~ApiService();

  Response dataset() const;
  Response dense_graph() const;
  Response reference() const;
  Response tree(const std::optional<std::string>& rank);
  Response boundaries(const std::optional<std::string>& classes);
  Response create_session(const std::string& body);
  Response get_session(const std::string& id);
  Response edit(const std::string& id, const std::string& body);
  Response form(const std::string& id, const std::string& form);
  Response session_diff(const std::string& id);
  Response snapshot(const std::string& id);

  // Evaluation JSON of an arbitrary graph under this service's settings.
  nlohmann::json evaluate_json(const ConceptGraph& graph);

  void bind(httplib::Server& server);

  const FormFunctionMatrix& matrix() const { return matrix_; }
  const ConceptGraph& dense() const { return dense_; }

 private:
  std::shared_ptr<Session> find_session(const std::string& id);
  nlohmann::json session_state(const Session& session);
  void persist(const Session& session) const;
  std::string new_session_id();

  FormFunctionMatrix matrix_;
  ConceptGraph dense_;
  std::optional<ConceptGraph> reference_;
  ServiceConfig config_;
  SubsetCountCache subset_cache_;
  CachedTreeStream trees_;

  std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mutex_;
  std::uint64_t id_state_;
};

}  // namespace semmap
