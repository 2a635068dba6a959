#include "tdkit/annotation/service.hpp"

#include <httplib.h>

namespace tdkit::annotation {

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, json{{"error", message}});
}

std::string viewer_of(const httplib::Request& req) {
  if (req.has_param("annotator")) return req.get_param_value("annotator");
  if (req.has_header("X-Annotator-Id")) return req.get_header_value("X-Annotator-Id");
  return {};
}

json view(const AnnotationTask& t, const std::string& viewer) {
  return viewer.empty() ? to_json(t) : redacted_view(t, viewer);
}

std::optional<int> phase_param(const httplib::Request& req) {
  if (!req.has_param("phase") || req.get_param_value("phase").empty()) return std::nullopt;
  return std::stoi(req.get_param_value("phase"));
}

}  // namespace

struct AnnotationService::Impl {
  AnnotationStore& store;
  ContextLookup lookup;
  httplib::Server server;

  Impl(AnnotationStore& s, ContextLookup l) : store(s), lookup(std::move(l)) {}

  template <typename Fn>
  void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const NotFoundError& e) {
      send_error(res, 404, e.what());
    } catch (const AuthorizationError& e) {
      send_error(res, 403, e.what());
    } catch (const ConflictError& e) {
      send_error(res, 409, e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, std::string("bad request: ") + e.what());
    } catch (const Error& e) {
      send_error(res, 400, e.what());
    } catch (const std::invalid_argument& e) {
      send_error(res, 400, std::string("bad request: ") + e.what());
    }
  }

  void routes() {
    server.Get("/tasks", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        TaskFilter f;
        const std::string viewer = viewer_of(req);
        if (!viewer.empty()) f.annotator = viewer;
        if (req.has_param("state") && !req.get_param_value("state").empty()) {
          f.state = state_from_string(req.get_param_value("state"));
        }
        f.phase = phase_param(req);
        json out = json::array();
        for (const auto& t : store.list(f)) out.push_back(view(t, viewer));
        send_json(res, 200, out);
      });
    });

    server.Get(R"(/tasks/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const AnnotationTask t = store.get(req.matches[1]);
        json out = view(t, viewer_of(req));
        if (lookup) {
          auto ctx = lookup(t.comment_id);
          out["context"] = ctx ? *ctx : json(nullptr);
        }
        send_json(res, 200, out);
      });
    });

    server.Post(R"(/tasks/([^/]+)/label)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = json::parse(req.body);
        std::string annotator = body.value("annotator", "");
        if (annotator.empty()) annotator = req.get_header_value("X-Annotator-Id");
        if (annotator.empty()) throw Error("missing annotator");
        const TDLabel label = label_from_string(body.at("label").get<std::string>());
        const AnnotationTask t = store.submit_label(req.matches[1], annotator, label);
        send_json(res, 200, redacted_view(t, annotator));
      });
    });

    server.Get("/conflicts", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        json out = json::array();
        for (const auto& t : store.conflicts()) out.push_back(to_json(t));
        send_json(res, 200, out);
      });
    });

    server.Post(R"(/tasks/([^/]+)/resolve)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = json::parse(req.body);
        const TDLabel label = label_from_string(body.at("label").get<std::string>());
        const AnnotationTask t = store.resolve(req.matches[1], label, body.value("note", ""));
        send_json(res, 200, to_json(t));
      });
    });

    server.Get("/metrics", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto phase = phase_param(req);
        try {
          send_json(res, 200, to_json(store.metrics(phase)));
        } catch (const Error&) {
          json empty = {{"n_items", 0}, {"raw_agreement", nullptr}, {"kappa", nullptr}, {"band", nullptr},
                        {"per_phase", json::object()}};
          send_json(res, 200, empty);
        }
      });
    });

    server.Get("/export", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        std::string body;
        for (const auto& r : store.export_finals()) body += dump_line(r) + "\n";
        res.status = 200;
        res.set_content(body, "application/x-ndjson");
      });
    });
  }
};

AnnotationService::AnnotationService(AnnotationStore& store, ContextLookup lookup)
    : impl_(std::make_unique<Impl>(store, std::move(lookup))) {
  impl_->routes();
}

AnnotationService::~AnnotationService() { stop(); }

int AnnotationService::bind(const std::string& host, int port) {
  if (port == 0) {
    const int p = impl_->server.bind_to_any_port(host);
    if (p < 0) throw Error("cannot bind " + host);
    return p;
  }
  if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void AnnotationService::serve() { impl_->server.listen_after_bind(); }

void AnnotationService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool AnnotationService::running() const { return impl_->server.is_running(); }

void AnnotationService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace tdkit::annotation
