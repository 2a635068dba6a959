#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tdkit/jsonl.hpp"

namespace tdkit::pipeline {

// JSONL kinds: functions, predictions, sample, finals, comment_dataset,
// code_dataset, label_predictions, set_predictions.
// JSON kinds: model, folds, agreement, stats, report, overlap.
const std::vector<std::string>& artifact_kinds();
bool is_jsonl_kind(std::string_view kind);

// Throws Error naming the offending field.
void validate_record(std::string_view kind, const json& record);

// Checks the meta header (kind, tool_version, config_hash, seed) and every
// record. JSONL errors name the first bad line as "path:line: ...".
void validate_artifact(const std::filesystem::path& path, std::string_view kind);

}  // namespace tdkit::pipeline
