#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdkit/annotation/store.hpp"
#include "tdkit/java/extract.hpp"
#include "tdkit/pipeline/config.hpp"
#include "tdkit/text/classifier.hpp"

namespace tdkit::pipeline {

using Logger = std::function<void(const std::string&)>;

// Labelled comments from a CSV (project, comment, classification) or, with
// no CSV, the seeded keyword-separable synthetic corpus.
std::vector<text::TypedRecord> load_training_records(const std::optional<std::filesystem::path>& csv,
                                                     std::size_t synthetic_size, std::uint64_t seed);

text::ClassifierModel train_detector(std::span<const text::TypedRecord> records, const text::ClassifierConfig& cfg);
text::TypeModels train_types(std::span<const text::TypedRecord> records, const text::ClassifierConfig& cfg);

// One record per extracted comment: the sampler triplet plus is_satd,
// satd_probability, type_probabilities, entropy_head and project.
std::vector<json> prediction_records(std::span<const java::FunctionUnit> functions, const text::ModelSet& models,
                                     double threshold);

struct AutoLabelSummary {
  std::size_t tasks = 0;
  std::size_t conflicts = 0;
  std::size_t audited = 0;
};

// Drives the annotation store without humans: annotator A submits the
// reference label, annotator B agrees except on every disagree_every-th task
// (a deterministic dissent), and conflicts are audited back to the reference.
AutoLabelSummary auto_annotate(annotation::AnnotationStore& store, std::span<const std::string> comment_ids,
                               const std::map<std::string, TDLabel>& reference, const PipelineConfig& cfg);

struct Artifact {
  std::filesystem::path path;
  std::string kind;
};

struct PipelineResult {
  std::vector<Artifact> artifacts;
  json summary;
};

// extract -> train -> predict -> sample -> annotate -> export finals ->
// build datasets -> dedup -> folds -> fuse/ensemble -> evaluate, then
// validates every artifact. Throws Error on the first failure.
PipelineResult run_pipeline(const PipelineConfig& cfg, const Logger& log = {});

}  // namespace tdkit::pipeline
