#include "tdkit/annotation/task.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>

#include "tdkit/rng.hpp"

namespace tdkit::annotation {

std::string_view to_string(TaskState s) {
  switch (s) {
    case TaskState::Assigned: return "ASSIGNED";
    case TaskState::Partial: return "PARTIAL";
    case TaskState::Agreed: return "AGREED";
    case TaskState::Conflict: return "CONFLICT";
    case TaskState::Audited: return "AUDITED";
  }
  return "?";
}

TaskState state_from_string(std::string_view s) {
  for (TaskState st : {TaskState::Assigned, TaskState::Partial, TaskState::Agreed, TaskState::Conflict,
                       TaskState::Audited}) {
    if (s == to_string(st)) return st;
  }
  throw Error("unknown task state '" + std::string(s) + "'");
}

void check_invariants(const AnnotationTask& t) {
  if (t.annotator_a == t.annotator_b) throw Error("task " + t.id + ": annotators must differ");
  if (t.final_label.has_value() != t.is_final()) throw Error("task " + t.id + ": final_label/state mismatch");
  if (t.state == TaskState::Agreed && !(t.label_a == t.label_b && t.label_a == t.final_label)) {
    throw Error("task " + t.id + ": AGREED requires equal labels");
  }
  const int n_labels = t.label_a.has_value() + t.label_b.has_value();
  switch (t.state) {
    case TaskState::Assigned:
      if (n_labels != 0) throw Error("task " + t.id + ": ASSIGNED with labels");
      break;
    case TaskState::Partial:
      if (n_labels != 1) throw Error("task " + t.id + ": PARTIAL needs exactly one label");
      break;
    default:
      if (n_labels != 2) throw Error("task " + t.id + ": closed task needs both labels");
  }
}

std::vector<AnnotationTask> assign(std::span<const std::string> comment_ids, std::span<const std::string> annotators,
                                   std::uint64_t seed, const AssignOptions& opts) {
  std::vector<std::string> people(annotators.begin(), annotators.end());
  std::sort(people.begin(), people.end());
  people.erase(std::unique(people.begin(), people.end()), people.end());
  if (people.size() < 2) throw Error("assignment needs at least two distinct annotators");

  Rng rng(seed);
  const std::size_t k = people.size();
  std::vector<std::size_t> remaining(k, 0);
  if (opts.balanced) {
    const std::size_t slots = 2 * comment_ids.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_in_place(order, rng);
    for (std::size_t i = 0; i < k; ++i) remaining[order[i]] = slots / k + (i < slots % k ? 1 : 0);
  }

  std::vector<AnnotationTask> tasks;
  tasks.reserve(comment_ids.size());
  std::vector<std::size_t> idx(k);
  for (std::size_t c = 0; c < comment_ids.size(); ++c) {
    std::size_t first, second;
    if (opts.balanced) {
      // Take the two annotators with the most remaining quota (random tie
      // break); this keeps max quota <= half the remaining slots.
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      shuffle_in_place(idx, rng);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::size_t a, std::size_t b) { return remaining[a] > remaining[b]; });
      first = idx[0];
      second = idx[1];
      --remaining[first];
      --remaining[second];
      if (uniform_index(rng, 2)) std::swap(first, second);
    } else {
      first = static_cast<std::size_t>(uniform_index(rng, k));
      second = static_cast<std::size_t>(uniform_index(rng, k - 1));
      if (second >= first) ++second;
    }
    AnnotationTask t;
    char id[64];
    std::snprintf(id, sizeof id, "%s%06zu", opts.id_prefix.c_str(), opts.first_id + c);
    t.id = id;
    t.comment_id = comment_ids[c];
    t.phase = opts.phase;
    t.annotator_a = people[first];
    t.annotator_b = people[second];
    t.created_at = opts.now;
    t.updated_at = opts.now;
    tasks.push_back(std::move(t));
  }
  return tasks;
}

std::map<std::string, std::size_t> workload(std::span<const AnnotationTask> tasks) {
  std::map<std::string, std::size_t> w;
  for (const auto& t : tasks) {
    ++w[t.annotator_a];
    ++w[t.annotator_b];
  }
  return w;
}

AnnotationTask submit_label(AnnotationTask task, const std::string& annotator, TDLabel label, const std::string& now) {
  std::optional<TDLabel>* slot = nullptr;
  if (annotator == task.annotator_a) slot = &task.label_a;
  else if (annotator == task.annotator_b) slot = &task.label_b;
  else throw AuthorizationError("annotator '" + annotator + "' is not assigned to task " + task.id);
  if (slot->has_value()) throw ConflictError("annotator '" + annotator + "' already labeled task " + task.id);
  if (task.state != TaskState::Assigned && task.state != TaskState::Partial) {
    throw ConflictError("task " + task.id + " is closed");
  }
  *slot = label;
  task.updated_at = now;
  if (task.has_both_labels()) {
    cross_check(task);
  } else {
    task.state = TaskState::Partial;
  }
  return task;
}

TaskState cross_check(AnnotationTask& task) {
  if (!task.has_both_labels()) throw Error("cross_check on task " + task.id + " with a missing label");
  if (*task.label_a == *task.label_b) {
    task.state = TaskState::Agreed;
    task.final_label = task.label_a;
  } else {
    task.state = TaskState::Conflict;
    task.final_label.reset();
  }
  return task.state;
}

AnnotationTask resolve_audit(AnnotationTask task, TDLabel consensus, const std::string& note, const std::string& now) {
  if (task.state != TaskState::Conflict) {
    throw ConflictError("task " + task.id + " is " + std::string(to_string(task.state)) + ", not CONFLICT");
  }
  task.state = TaskState::Audited;
  task.final_label = consensus;
  task.audit_note = note;
  task.updated_at = now;
  return task;
}

namespace {

json opt_label(const std::optional<TDLabel>& l) { return l ? json(to_string(*l)) : json(nullptr); }

std::optional<TDLabel> read_opt_label(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return label_from_string(j.at(key).get<std::string>());
}

}  // namespace

json to_json(const AnnotationTask& t) {
  return json{{"id", t.id},
              {"comment_id", t.comment_id},
              {"phase", t.phase},
              {"annotator_a", t.annotator_a},
              {"annotator_b", t.annotator_b},
              {"label_a", opt_label(t.label_a)},
              {"label_b", opt_label(t.label_b)},
              {"state", to_string(t.state)},
              {"final_label", opt_label(t.final_label)},
              {"audit_note", t.audit_note ? json(*t.audit_note) : json(nullptr)},
              {"created_at", t.created_at},
              {"updated_at", t.updated_at}};
}

AnnotationTask task_from_json(const json& j) {
  AnnotationTask t;
  t.id = j.at("id").get<std::string>();
  t.comment_id = j.at("comment_id").get<std::string>();
  t.phase = j.value("phase", 1);
  t.annotator_a = j.at("annotator_a").get<std::string>();
  t.annotator_b = j.at("annotator_b").get<std::string>();
  t.label_a = read_opt_label(j, "label_a");
  t.label_b = read_opt_label(j, "label_b");
  t.state = state_from_string(j.at("state").get<std::string>());
  t.final_label = read_opt_label(j, "final_label");
  if (j.contains("audit_note") && !j.at("audit_note").is_null()) t.audit_note = j.at("audit_note").get<std::string>();
  t.created_at = j.value("created_at", "");
  t.updated_at = j.value("updated_at", "");
  check_invariants(t);
  return t;
}

json redacted_view(const AnnotationTask& t, const std::string& viewer) {
  json j = to_json(t);
  const bool is_a = viewer == t.annotator_a;
  const bool is_b = viewer == t.annotator_b;
  const bool submitted = (is_a && t.label_a) || (is_b && t.label_b);
  if (!submitted) {
    if (!is_a) j["label_a"] = nullptr;
    if (!is_b) j["label_b"] = nullptr;
    j["final_label"] = nullptr;
    j["audit_note"] = nullptr;
  }
  return j;
}

}  // namespace tdkit::annotation
