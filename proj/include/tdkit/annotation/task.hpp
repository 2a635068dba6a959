#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdkit/common.hpp"
#include "tdkit/jsonl.hpp"

namespace tdkit::annotation {

enum class TaskState { Assigned, Partial, Agreed, Conflict, Audited };

std::string_view to_string(TaskState s);
TaskState state_from_string(std::string_view s);

struct AnnotationTask {
  std::string id;
  std::string comment_id;
  int phase = 1;
  std::string annotator_a;
  std::string annotator_b;
  std::optional<TDLabel> label_a;
  std::optional<TDLabel> label_b;
  TaskState state = TaskState::Assigned;
  std::optional<TDLabel> final_label;
  std::optional<std::string> audit_note;
  std::string created_at;
  std::string updated_at;

  bool has_both_labels() const { return label_a && label_b; }
  bool is_final() const { return state == TaskState::Agreed || state == TaskState::Audited; }
};

// Throws Error if a task violates the type invariants.
void check_invariants(const AnnotationTask& t);

struct AssignOptions {
  // Equalize per-annotator load (counts differ by at most one).
  bool balanced = true;
  int phase = 1;
  std::string id_prefix = "T";
  std::size_t first_id = 1;
  std::string now;
};

// Two distinct annotators per comment, chosen under seed.
// Throws Error when fewer than two distinct annotators are given.
std::vector<AnnotationTask> assign(std::span<const std::string> comment_ids, std::span<const std::string> annotators,
                                   std::uint64_t seed, const AssignOptions& opts = {});

std::map<std::string, std::size_t> workload(std::span<const AnnotationTask> tasks);

// Pure transitions; each returns the updated copy.
// AuthorizationError if the annotator is not on the task, ConflictError on a
// second submission from the same annotator or a submission to a closed task.
AnnotationTask submit_label(AnnotationTask task, const std::string& annotator, TDLabel label,
                            const std::string& now = {});

// Equality test on the two labels. Error if a label is missing.
TaskState cross_check(AnnotationTask& task);

// ConflictError unless the task is in CONFLICT.
AnnotationTask resolve_audit(AnnotationTask task, TDLabel consensus, const std::string& note,
                             const std::string& now = {});

json to_json(const AnnotationTask& t);
AnnotationTask task_from_json(const json& j);

// Hides the co-annotator's label from `viewer` until the viewer has
// submitted. Viewers not on the task see neither label.
json redacted_view(const AnnotationTask& t, const std::string& viewer);

}  // namespace tdkit::annotation
