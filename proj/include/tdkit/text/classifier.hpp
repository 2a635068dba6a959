#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdkit/common.hpp"
#include "tdkit/jsonl.hpp"
#include "tdkit/text/features.hpp"
#include "tdkit/text/logistic.hpp"

namespace tdkit::text {

inline constexpr int kModelFormatVersion = 1;
inline constexpr double kMembershipThreshold = 0.5;

struct ClassifierConfig {
  FeatureConfig features;
  LogisticConfig logistic;
  std::uint64_t seed = 13;
};

// A binary TF-IDF + logistic regression head. The positive class is named
// by `positive_class`: "SATD" for the detector, a TD type name otherwise.
struct ClassifierModel {
  int format_version = kModelFormatVersion;
  std::string positive_class;
  std::uint64_t seed = 0;
  std::string dataset_hash;
  std::size_t n_train = 0;
  TfidfVectorizer vectorizer;
  LogisticModel logistic;
  json meta;  // artifact header written as "__meta__" when set

  double probability(std::string_view clean_text) const;
  // {P(negative), P(positive)}
  std::array<double, 2> head(std::string_view clean_text) const;

  json to_json() const;
  static ClassifierModel from_json(const json& j);
  void save(const std::filesystem::path& path) const;
  static ClassifierModel load(const std::filesystem::path& path);
};

struct BinaryRecord {
  std::string text;  // cleaned
  bool positive;
};

struct TypedRecord {
  std::string text;  // cleaned
  TDLabel label;
};

// Throws Error("degenerate training set") unless both classes are present.
ClassifierModel train_binary(std::span<const BinaryRecord> records, const ClassifierConfig& cfg,
                             const std::string& positive_class = "SATD");

using TypeModels = std::map<TDLabel, ClassifierModel>;

// One-vs-rest: Classifier-X sees X-labeled records as positive and
// everything else (other types and NON_SATD) as negative. Throws
// Error("missing type X") when a TD type has no example.
TypeModels train_type_classifiers(std::span<const TypedRecord> records, const ClassifierConfig& cfg);

struct ModelSet {
  std::optional<ClassifierModel> detector;
  TypeModels types;

  // detector.json and type-<NAME>.json
  void save_dir(const std::filesystem::path& dir) const;
  static ModelSet load_dir(const std::filesystem::path& dir);
};

// Name of the head an entropy was computed from: a TD type or the detector.
struct HeadRef {
  std::optional<TDLabel> type;  // nullopt = binary SATD head
  std::string name() const { return type ? std::string(to_string(*type)) : "SATD"; }
};

struct Prediction {
  std::optional<double> satd_probability;
  std::array<double, kNumTDTypes> type_probability{};  // indexed by kTDTypes order
  std::vector<TDLabel> predicted_set;                  // descending probability
  HeadRef entropy_head;
  double entropy = 0.0;  // nats

  std::array<double, 2> head(TDLabel type) const;
};

// Routing for the entropy: the head of predicted_set[0]; the binary SATD
// head when predicted_set is empty (which needs models.detector).
Prediction predict(const ModelSet& models, std::string_view clean_text,
                   double threshold = kMembershipThreshold);

// -sum p ln p with 0 ln 0 = 0. Throws Error unless entries are >= 0 and sum
// to 1 within 1e-9.
double entropy(std::span<const double> probabilities);

struct OverlapMatrix {
  // cell[x][y]: among predictions containing x, the fraction also containing y.
  std::array<std::array<double, kNumTDTypes>, kNumTDTypes> ratio{};
  std::array<std::size_t, kNumTDTypes> support{};
};

OverlapMatrix overlap_report(std::span<const Prediction> predictions);
OverlapMatrix overlap_report(std::span<const std::vector<TDLabel>> predicted_sets);

json to_json(const Prediction& p);
json to_json(const OverlapMatrix& m);

std::string dataset_hash(std::span<const BinaryRecord> records);
std::string dataset_hash(std::span<const TypedRecord> records);

}  // namespace tdkit::text
