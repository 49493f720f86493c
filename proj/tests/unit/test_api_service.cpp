#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "semmap/api_service.hpp"
#include "semmap/fixture.hpp"
#include "semmap/serialize.hpp"

using namespace semmap;

namespace {

ConceptGraph reference_path() {
  ConceptGraph g(18);
  for (NodeId i = 0; i + 1 < 18; ++i) g.add_edge(i, i + 1, Weight(1));
  return g;
}

struct Served {
  ApiService service;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  explicit Served(ServiceConfig config = {})
      : service(fixtures::supplement_adverbs(), reference_path(), config) {
    service.bind(server);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~Served() {
    server.stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

}  // namespace

TEST_CASE("handlers without a socket") {
  ApiService api(fixtures::supplement_adverbs(), reference_path());
  auto ds = api.dataset();
  CHECK(ds.status == 200);
  CHECK(ds.body["forms"].size() == 28);
  CHECK(ds.body["functions"].size() == 18);
  CHECK(api.dense_graph().body["total_weight"] == 286);
  CHECK(api.tree("0").body["tree"]["total_weight"] == 90);
  CHECK(api.tree("-1").status == 400);
  CHECK(api.tree(std::nullopt).status == 400);
  CHECK(api.tree("99999999").status == 400);
  auto boi = api.boundaries(std::nullopt).body["boundaries"];
  CHECK(boi.size() == 3);
  CHECK(boi[1]["begin"] == 1440);
}

TEST_CASE("session lifecycle") {
  ApiService api(fixtures::supplement_adverbs(), reference_path());
  auto created = api.create_session(R"({"from_rank":0})");
  REQUIRE(created.status == 201);
  std::string id = created.body["id"];
  CHECK(created.body["evaluation"]["size"] == 90);
  CHECK(created.body["violations"].size() == 4);

  auto e = api.edit(id, R"({"op":"add","u":0,"v":17})");
  CHECK(e.status == 200);
  CHECK(e.body["edits"].size() == 1);
  CHECK(api.edit(id, R"({"op":"add","u":0,"v":17})").status == 409);
  CHECK(api.edit(id, R"({"op":"add","u":3,"v":3})").status == 422);
  CHECK(api.edit(id, R"({"op":"add","u":3,"v":30})").status == 400);
  CHECK(api.edit(id, R"({"op":"flip","u":1,"v":2})").status == 400);
  CHECK(api.edit(id, "not json").status == 400);
  CHECK(api.edit("nope", R"({"op":"add","u":0,"v":1})").status == 404);
  auto removed = api.edit(id, R"({"op":"remove","u":0,"v":17})");
  CHECK(removed.body["graph"] == created.body["graph"]);

  CHECK(api.form(id, "tarong").body["connected"] == false);
  CHECK(api.form(id, "0").status == 200);
  CHECK(api.form(id, "zzz").status == 404);

  auto d = api.session_diff(id).body;
  CHECK(d["matched"].size() + d["extra"].size() == 17);

  auto snap = api.snapshot(id).body;
  auto restored = api.create_session(json{{"snapshot", snap}}.dump());
  CHECK(restored.status == 201);
  CHECK(restored.body["graph"] == removed.body["graph"]);
  CHECK(restored.body["id"] != id);

  CHECK(api.create_session(R"({"from_rank":-2})").status == 400);
  CHECK(api.create_session("{").status == 400);
  CHECK(api.create_session(R"({"graph":{"n":3,"edges":[]}})").status == 400);
}

TEST_CASE("no reference means 404 for diff") {
  ApiService api(fixtures::supplement_adverbs(), std::nullopt);
  CHECK(api.reference().status == 404);
  std::string id = api.create_session("").body["id"];
  CHECK(api.session_diff(id).status == 404);
  CHECK(api.get_session(id).body["evaluation"]["accuracy"].is_null());
}

TEST_CASE("http routes") {
  Served s;
  auto cli = s.client();
  auto res = cli.Get("/api/dataset");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["forms"].size() == 28);
  res = cli.Get("/api/nothing-here");
  REQUIRE(res);
  CHECK(res->status == 404);
  res = cli.Get("/api/trees?rank=-1");
  CHECK(res->status == 400);
  res = cli.Get("/api/trees?rank=3");
  CHECK(res->status == 200);
  res = cli.Get("/api/trees/boi?classes=2");
  CHECK(json::parse(res->body)["boundaries"].size() == 2);

  res = cli.Post("/api/session", R"({"from_rank":1})", "application/json");
  REQUIRE(res->status == 201);
  std::string id = json::parse(res->body)["id"];
  res = cli.Post("/api/session/" + id + "/edit", R"({"op":"remove","u":0,"v":17})",
                 "application/json");
  CHECK(res->status == 409);
  res = cli.Post("/api/session/" + id + "/edit", R"({"op":"add","u":5,"v":5})",
                 "application/json");
  CHECK(res->status == 422);
  res = cli.Get("/api/session/" + id + "/form/c%C5%A9ng");
  REQUIRE(res->status == 200);
  CHECK(json::parse(res->body)["gram"] == "cũng");
  CHECK(cli.Get("/api/session/" + id + "/diff")->status == 200);
  CHECK(cli.Get("/api/session/unknown")->status == 404);
}

TEST_CASE("cors only in dev mode") {
  ServiceConfig dev;
  dev.cors = true;
  Served s(dev);
  auto res = s.client().Get("/api/dataset");
  REQUIRE(res);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  Served plain;
  CHECK(plain.client().Get("/api/dataset")->get_header_value(
            "Access-Control-Allow-Origin") == "");
}
