#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdkit/dataset/builder.hpp"
#include "tdkit/fusion/models.hpp"
#include "tdkit/jsonl.hpp"
#include "tdkit/text/classifier.hpp"

namespace tdkit::pipeline {

// INI file, e.g.
//
//   [paths]
//   corpus = corpus        ; relative paths resolve against the config file
//   output = out
//   [seeds]
//   global = 13
//   sample = 7             ; any stage without a key uses global
//
// Unknown sections or keys are rejected.
struct PipelineConfig {
  std::filesystem::path corpus;
  std::filesystem::path output;
  std::optional<std::filesystem::path> training_csv;  // labelled comments; synthetic corpus otherwise
  std::optional<std::filesystem::path> finals;        // fixture labels for auto-annotation

  std::uint64_t global_seed = 13;
  std::map<std::string, std::uint64_t> stage_seeds;

  text::ClassifierConfig classifier;
  double threshold = text::kMembershipThreshold;
  std::size_t synthetic_size = 1000;

  std::size_t sample_n = 10;
  std::vector<std::string> annotators = {"ann1", "ann2", "ann3"};
  bool balanced = true;
  std::size_t disagree_every = 4;  // auto-labelling: every k-th task gets a dissenting second label

  std::vector<dataset::ContextScope> scopes = {dataset::ContextScope::Lines(2), dataset::ContextScope::Lines(10),
                                               dataset::ContextScope::Lines(20), dataset::ContextScope::Full()};
  dataset::WindowMode window = dataset::WindowMode::Following;
  std::size_t n_folds = 5;
  fusion::FusionConfig fusion;

  std::string bind_host = "127.0.0.1";
  int bind_port = 8080;

  // Per-stage seed, falling back to the global seed.
  std::uint64_t seed(const std::string& stage) const;
  // Canonical key=value dump; input paths as resolved. The output directory is
  // left out so the same settings hash alike wherever they write.
  std::string canonical() const;
  // FNV-1a of canonical(), hex.
  std::string hash() const;
  ArtifactHeader header(const std::string& kind, const std::string& stage) const;
};

inline const std::vector<std::string> kStages = {"extract", "train", "predict", "sample",
                                                 "assign",  "folds", "fuse"};

PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace tdkit::pipeline
