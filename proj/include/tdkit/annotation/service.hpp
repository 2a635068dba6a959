#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "tdkit/annotation/store.hpp"

namespace tdkit::annotation {

// Payload for GET /tasks/{id}: comment text, owning function, code contexts.
using ContextLookup = std::function<std::optional<json>(const std::string& comment_id)>;

// HTTP/JSON front end over an AnnotationStore.
//
//   GET  /tasks?annotator=&state=&phase=
//   GET  /tasks/{id}                   (+ "context" from the lookup)
//   POST /tasks/{id}/label   {annotator, label}
//   GET  /conflicts
//   POST /tasks/{id}/resolve {label, note}
//   GET  /metrics?phase=
//   GET  /export                       final labels as JSONL
//
// The viewer is the `annotator` query parameter or the X-Annotator-Id
// header; task views for a viewer never carry the co-annotator's label
// before the viewer has submitted.
class AnnotationService {
 public:
  explicit AnnotationService(AnnotationStore& store, ContextLookup lookup = {});
  ~AnnotationService();

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  // port 0 picks a free port; returns the bound port or throws.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void serve();
  void stop();
  bool running() const;
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tdkit::annotation
