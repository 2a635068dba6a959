// HTTP contract of the annotation service, exercised the way the UI does.
#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <thread>

#include "tdkit/annotation/service.hpp"
#include "tdkit/annotation/store.hpp"

using namespace tdkit;
using namespace tdkit::annotation;
namespace fs = std::filesystem;

namespace {

struct Running {
  fs::path dir;
  std::unique_ptr<AnnotationStore> store;
  std::unique_ptr<AnnotationService> service;
  std::thread thread;
  int port = 0;

  explicit Running(const std::string& name) : dir(fs::temp_directory_path() / name) {
    fs::remove_all(dir);
    store = std::make_unique<AnnotationStore>(dir);
    std::vector<AnnotationTask> tasks;
    for (int i = 1; i <= 4; ++i) {
      AnnotationTask t;
      t.id = "T" + std::to_string(i);
      t.comment_id = "c" + std::to_string(i);
      t.annotator_a = "alice";
      t.annotator_b = "bob";
      tasks.push_back(t);
    }
    store->add_tasks(tasks);
    service = std::make_unique<AnnotationService>(*store, [](const std::string& cid) -> std::optional<json> {
      if (cid == "c1") return json{{"comment", "// todo"}, {"function", "void f() {}"}};
      return std::nullopt;
    });
    port = service->bind("127.0.0.1", 0);
    thread = std::thread([this] { service->serve(); });
    service->wait_until_ready();
  }
  ~Running() {
    service->stop();
    thread.join();
    service.reset();
    store.reset();
    fs::remove_all(dir);
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

json post_label(httplib::Client& c, const std::string& id, const std::string& who, const std::string& label, int* status) {
  auto r = c.Post("/tasks/" + id + "/label", json{{"annotator", who}, {"label", label}}.dump(), "application/json");
  REQUIRE(r);
  *status = r->status;
  return json::parse(r->body);
}

}  // namespace

TEST_CASE("label round trip, conflict board, audit and metrics") {
  Running svc("tdkit-test-service");
  auto c = svc.client();
  int status = 0;

  auto r = c.Get("/tasks?annotator=alice");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(json::parse(r->body).size() == 4);

  auto after = post_label(c, "T1", "alice", "DESIGN", &status);
  CHECK(status == 200);
  CHECK(after["state"] == "PARTIAL");

  // bob has not submitted, so nothing of alice's label may reach him
  for (const char* path : {"/tasks/T1?annotator=bob", "/tasks?annotator=bob"}) {
    auto g = c.Get(path);
    REQUIRE(g);
    CHECK(g->body.find("DESIGN") == std::string::npos);
  }
  httplib::Headers h = {{"X-Annotator-Id", "bob"}};
  auto via_header = c.Get("/tasks/T1", h);
  REQUIRE(via_header);
  CHECK(via_header->body.find("DESIGN") == std::string::npos);

  post_label(c, "T1", "bob", "DEFECT", &status);
  CHECK(status == 200);
  post_label(c, "T1", "bob", "DEFECT", &status);
  CHECK(status == 409);
  post_label(c, "T1", "mallory", "DEFECT", &status);
  CHECK(status == 403);
  post_label(c, "T2", "alice", "TEST", &status);
  post_label(c, "T2", "bob", "TEST", &status);
  post_label(c, "T3", "alice", "NOT_A_LABEL", &status);
  CHECK(status == 400);

  auto conflicts = json::parse(c.Get("/conflicts")->body);
  REQUIRE(conflicts.size() == 1);
  CHECK(conflicts[0]["id"] == "T1");

  const std::string metrics_before = c.Get("/metrics")->body;
  auto resolved = c.Post("/tasks/T1/resolve", json{{"label", "DEFECT"}, {"note", "review"}}.dump(), "application/json");
  REQUIRE(resolved);
  CHECK(resolved->status == 200);
  CHECK(json::parse(resolved->body)["state"] == "AUDITED");
  CHECK(c.Post("/tasks/T2/resolve", json{{"label", "TEST"}}.dump(), "application/json")->status == 409);

  const std::string metrics_after = c.Get("/metrics")->body;
  CHECK(metrics_before == metrics_after);
  CHECK(metrics_after == to_json(svc.store->metrics()).dump());

  auto exported = c.Get("/export");
  REQUIRE(exported);
  CHECK(exported->body.find("\"final_label\":\"DEFECT\"") != std::string::npos);
  CHECK(exported->body.find("\"final_label\":\"TEST\"") != std::string::npos);
  CHECK(json::parse(c.Get("/conflicts")->body).empty());
}

TEST_CASE("task detail carries context; unknown ids are 404") {
  Running svc("tdkit-test-service-ctx");
  auto c = svc.client();
  auto r = c.Get("/tasks/T1?annotator=alice");
  REQUIRE(r);
  CHECK(json::parse(r->body)["context"]["function"] == "void f() {}");
  CHECK(json::parse(c.Get("/tasks/T2")->body)["context"].is_null());
  CHECK(c.Get("/tasks/NOPE")->status == 404);
  auto m = c.Get("/metrics");
  REQUIRE(m);
  CHECK(json::parse(m->body)["n_items"] == 0);
}
