#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdkit/common.hpp"
#include "tdkit/jsonl.hpp"

namespace tdkit::fusion {

enum class EvalTask { Identification, Classification, Detection, CodeMultilabel };

std::string_view to_string(EvalTask t);
EvalTask task_from_string(std::string_view s);

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0;
  std::size_t support() const { return tp + fn; }
};

// Scores are fractions in [0, 1]; to_json also writes them as percentages.
struct EvalReport {
  EvalTask task = EvalTask::Detection;
  std::size_t n = 0;
  std::map<std::string, ClassScores> per_class;
  double f1 = 0.0;        // headline: binary F1, macro-F1 or example F1 per task
  double macro_f1 = 0.0;  // over classes with tp + fp + fn > 0
  double micro_f1 = 0.0;
  std::optional<double> exact_match;  // multi-label only
  std::optional<double> example_f1;   // multi-label only
};

// Per-class counts from (tp, fp, fn); zero denominators give 0.
ClassScores class_scores(std::size_t tp, std::size_t fp, std::size_t fn);

// Single-label tasks. Identification maps every TD type to the positive
// class. Classification needs gold labels that are TD types.
EvalReport evaluate(std::span<const TDLabel> gold, std::span<const TDLabel> predicted, EvalTask task);

// Code multi-label task: EM and mean example F1 (empty vs empty scores 1),
// plus label-wise scores over the code TD types.
EvalReport evaluate_multilabel(std::span<const std::vector<TDLabel>> gold,
                               std::span<const std::vector<TDLabel>> predicted);

double example_f1(const std::vector<TDLabel>& gold, const std::vector<TDLabel>& predicted);

struct FoldedReport {
  std::vector<EvalReport> folds;
  EvalReport mean;  // arithmetic mean of each score over folds
};

FoldedReport mean_over_folds(std::vector<EvalReport> folds);

json to_json(const EvalReport& r);
json to_json(const FoldedReport& r);

}  // namespace tdkit::fusion
