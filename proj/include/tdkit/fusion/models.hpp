#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdkit/dataset/builder.hpp"
#include "tdkit/dataset/folds.hpp"
#include "tdkit/fusion/embed.hpp"
#include "tdkit/fusion/evaluate.hpp"
#include "tdkit/text/features.hpp"
#include "tdkit/text/logistic.hpp"

namespace tdkit::fusion {

enum class FusionMethod { StrConcat, CodeAtt };

std::string_view to_string(FusionMethod m);
FusionMethod method_from_string(std::string_view s);

struct FusionConfig {
  FusionMethod method = FusionMethod::StrConcat;
  std::size_t max_len = 256;  // StrConcat token budget
  int dim = 64;               // CodeAtt embedding width
  text::FeatureConfig features;
  text::LogisticConfig logistic;
  std::uint64_t seed = 13;
};

// Comment+context classifier over the six labels (one-vs-rest).
struct FusionModel {
  FusionConfig cfg;
  text::TfidfVectorizer vectorizer;  // StrConcat only
  text::OneVsRest ovr;

  text::SparseVector features(const dataset::CommentSample& s) const;
  std::array<double, kNumLabels> probabilities(const dataset::CommentSample& s) const;
  TDLabel predict(const dataset::CommentSample& s) const;
};

// Token sequence fed to the StrConcat vectorizer.
std::vector<std::string> strconcat_tokens(const dataset::CommentSample& s, std::size_t max_len);
// Pooled CodeAtt vector; an empty context falls back to the mean comment row.
Eigen::VectorXd codeatt_vector(const dataset::CommentSample& s, int dim, std::uint64_t seed);

FusionModel train_fusion(std::span<const dataset::CommentSample> train, const FusionConfig& cfg);

struct LabelPrediction {
  std::string id;
  std::size_t fold = 0;
  std::string scope;
  TDLabel label = TDLabel::NonSatd;
  std::optional<std::array<double, kNumLabels>> probabilities;
};

struct SetPrediction {
  std::string id;
  std::size_t fold = 0;
  std::vector<TDLabel> labels;
  std::array<double, kCodeTDTypes.size()> probabilities{};
};

// Cross-project: fold f is predicted by a model trained on every other fold.
// Records whose id is missing from the split throw Error.
std::vector<LabelPrediction> cross_fold_predict(std::span<const dataset::CommentSample> samples,
                                                const dataset::FoldSplit& split, const FusionConfig& cfg);

// One binary head per code TD type on the comment-free code; membership at 0.5.
std::vector<SetPrediction> cross_fold_predict_code(std::span<const dataset::CodeSample> samples,
                                                   const dataset::FoldSplit& split, const FusionConfig& cfg);

// Votes per id over the given scope predictions (same ids in each).
std::vector<LabelPrediction> ensemble(std::span<const std::vector<LabelPrediction>> per_scope);

json to_json(const LabelPrediction& p);
json to_json(const SetPrediction& p);
LabelPrediction label_prediction_from_json(const json& j);
SetPrediction set_prediction_from_json(const json& j);

// Joins gold and predicted records on "id" and scores them per fold.
// Single-label records carry "label", multi-label ones "labels". For the
// classification task only gold SATD records are scored.
FoldedReport evaluate_records(std::span<const json> gold, std::span<const json> predicted, EvalTask task);

}  // namespace tdkit::fusion
