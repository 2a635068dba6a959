#include "tdkit/annotation/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>

namespace tdkit::annotation {

namespace fs = std::filesystem;

AnnotationStore::AnnotationStore(fs::path dir, std::size_t snapshot_every)
    : dir_(std::move(dir)), snapshot_every_(snapshot_every) {
  fs::create_directories(dir_);
  load();
  const auto log = dir_ / "events.jsonl";
  log_fd_ = ::open(log.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (log_fd_ < 0) throw Error("cannot open event log " + log.string() + ": " + std::strerror(errno));
}

AnnotationStore::~AnnotationStore() {
  if (log_fd_ >= 0) ::close(log_fd_);
}

void AnnotationStore::load() {
  const auto snap = dir_ / "snapshot.json";
  if (fs::exists(snap)) {
    const json j = read_json_file(snap);
    seq_ = j.at("seq").get<std::uint64_t>();
    for (const auto& t : j.at("tasks")) {
      AnnotationTask task = task_from_json(t);
      tasks_.emplace(task.id, std::move(task));
    }
  }
  const auto log = dir_ / "events.jsonl";
  if (!fs::exists(log)) return;
  std::ifstream in(log, std::ios::binary);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json e = json::parse(line, nullptr, false);
    if (e.is_discarded()) {
      // A torn final write was never acknowledged; anything else is corruption.
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw Error(log.string() + ":" + std::to_string(line_no) + ": corrupt event");
    }
    const auto s = e.at("seq").get<std::uint64_t>();
    if (s <= seq_) continue;
    apply(e);
    seq_ = s;
    ++since_snapshot_;
  }
}

void AnnotationStore::apply(const json& e) {
  const std::string type = e.at("type").get<std::string>();
  if (type == "assign") {
    AnnotationTask t = task_from_json(e.at("task"));
    tasks_[t.id] = std::move(t);
  } else if (type == "label") {
    auto& t = tasks_.at(e.at("task_id").get<std::string>());
    t = annotation::submit_label(t, e.at("annotator").get<std::string>(),
                                 label_from_string(e.at("label").get<std::string>()), e.value("at", ""));
  } else if (type == "resolve") {
    auto& t = tasks_.at(e.at("task_id").get<std::string>());
    t = resolve_audit(t, label_from_string(e.at("label").get<std::string>()), e.at("note").get<std::string>(),
                      e.value("at", ""));
  } else {
    throw Error("unknown event type '" + type + "'");
  }
}

void AnnotationStore::append(json event) {
  event["seq"] = seq_ + 1;
  std::string line = dump_line(event);
  line += '\n';
  const char* p = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    const ssize_t w = ::write(log_fd_, p, left);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw Error(std::string("event log write failed: ") + std::strerror(errno));
    }
    p += w;
    left -= static_cast<std::size_t>(w);
  }
  if (::fsync(log_fd_) != 0) throw Error(std::string("event log fsync failed: ") + std::strerror(errno));
  ++seq_;
  ++since_snapshot_;
}

void AnnotationStore::maybe_snapshot() {
  if (snapshot_every_ > 0 && since_snapshot_ >= snapshot_every_) write_snapshot_locked();
}

void AnnotationStore::write_snapshot_locked() {
  json tasks = json::array();
  for (const auto& [id, t] : tasks_) tasks.push_back(to_json(t));
  write_json_file(dir_ / "snapshot.json", json{{"seq", seq_}, {"tasks", std::move(tasks)}});
  since_snapshot_ = 0;
}

void AnnotationStore::snapshot() {
  std::unique_lock lock(mu_);
  write_snapshot_locked();
}

std::uint64_t AnnotationStore::sequence() const {
  std::shared_lock lock(mu_);
  return seq_;
}

void AnnotationStore::add_tasks(const std::vector<AnnotationTask>& tasks) {
  std::unique_lock lock(mu_);
  for (const auto& t : tasks) {
    check_invariants(t);
    if (tasks_.contains(t.id)) throw ConflictError("task " + t.id + " already exists");
  }
  for (const auto& t : tasks) {
    append(json{{"type", "assign"}, {"task", to_json(t)}});
    tasks_[t.id] = t;
  }
  maybe_snapshot();
}

AnnotationTask AnnotationStore::submit_label(const std::string& task_id, const std::string& annotator, TDLabel label) {
  std::unique_lock lock(mu_);
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) throw NotFoundError("no task " + task_id);
  const std::string now = utc_timestamp();
  AnnotationTask next = annotation::submit_label(it->second, annotator, label, now);
  append(json{{"type", "label"}, {"task_id", task_id}, {"annotator", annotator}, {"label", to_string(label)}, {"at", now}});
  it->second = next;
  maybe_snapshot();
  return next;
}

AnnotationTask AnnotationStore::resolve(const std::string& task_id, TDLabel consensus, const std::string& note) {
  std::unique_lock lock(mu_);
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) throw NotFoundError("no task " + task_id);
  const std::string now = utc_timestamp();
  AnnotationTask next = resolve_audit(it->second, consensus, note, now);
  append(json{{"type", "resolve"}, {"task_id", task_id}, {"label", to_string(consensus)}, {"note", note}, {"at", now}});
  it->second = next;
  maybe_snapshot();
  return next;
}

AnnotationTask AnnotationStore::get(const std::string& task_id) const {
  std::shared_lock lock(mu_);
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) throw NotFoundError("no task " + task_id);
  return it->second;
}

std::vector<AnnotationTask> AnnotationStore::list(const TaskFilter& f) const {
  std::shared_lock lock(mu_);
  std::vector<AnnotationTask> out;
  for (const auto& [id, t] : tasks_) {
    if (f.annotator && t.annotator_a != *f.annotator && t.annotator_b != *f.annotator) continue;
    if (f.state && t.state != *f.state) continue;
    if (f.phase && t.phase != *f.phase) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<AnnotationTask> AnnotationStore::conflicts() const {
  return list(TaskFilter{std::nullopt, TaskState::Conflict, std::nullopt});
}

AgreementReport AnnotationStore::metrics(std::optional<int> phase) const {
  const auto all = list();
  return agreement_report(all, phase);
}

json final_record(const AnnotationTask& t) {
  return json{{"comment_id", t.comment_id},
              {"final_label", to_string(*t.final_label)},
              {"provenance",
               {{"task_id", t.id},
                {"phase", t.phase},
                {"state", to_string(t.state)},
                {"annotators", {t.annotator_a, t.annotator_b}},
                {"labels", {to_string(*t.label_a), to_string(*t.label_b)}},
                {"audit_note", t.audit_note ? json(*t.audit_note) : json(nullptr)}}}};
}

std::vector<json> AnnotationStore::export_finals() const {
  std::shared_lock lock(mu_);
  std::vector<json> out;
  for (const auto& [id, t] : tasks_) {
    if (t.is_final()) out.push_back(final_record(t));
  }
  return out;
}

}  // namespace tdkit::annotation
