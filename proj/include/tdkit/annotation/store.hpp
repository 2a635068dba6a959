#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "tdkit/annotation/metrics.hpp"
#include "tdkit/annotation/task.hpp"

namespace tdkit::annotation {

struct TaskFilter {
  std::optional<std::string> annotator;
  std::optional<TaskState> state;
  std::optional<int> phase;
};

// Task store backed by an append-only event log (events.jsonl) and a
// snapshot (snapshot.json) in one directory. Every mutation is appended and
// fsync'ed before it is applied in memory, so an acknowledged write survives
// a crash. Readers share a lock; writers are serialized.
class AnnotationStore {
 public:
  explicit AnnotationStore(std::filesystem::path dir, std::size_t snapshot_every = 256);
  ~AnnotationStore();

  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  // ConflictError if a task id already exists.
  void add_tasks(const std::vector<AnnotationTask>& tasks);

  AnnotationTask submit_label(const std::string& task_id, const std::string& annotator, TDLabel label);
  AnnotationTask resolve(const std::string& task_id, TDLabel consensus, const std::string& note);

  AnnotationTask get(const std::string& task_id) const;  // NotFoundError
  std::vector<AnnotationTask> list(const TaskFilter& filter = {}) const;
  std::vector<AnnotationTask> conflicts() const;
  AgreementReport metrics(std::optional<int> phase = std::nullopt) const;

  // {comment_id, final_label, provenance} for every AGREED/AUDITED task.
  std::vector<json> export_finals() const;

  void snapshot();
  std::uint64_t sequence() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  void load();
  void apply(const json& event);
  void append(json event);
  void maybe_snapshot();
  void write_snapshot_locked();

  std::filesystem::path dir_;
  std::size_t snapshot_every_;
  mutable std::shared_mutex mu_;
  std::map<std::string, AnnotationTask> tasks_;
  std::uint64_t seq_ = 0;
  std::uint64_t since_snapshot_ = 0;
  int log_fd_ = -1;
};

json final_record(const AnnotationTask& t);

}  // namespace tdkit::annotation
