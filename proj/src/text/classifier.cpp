#include "tdkit/text/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "tdkit/text/clean.hpp"

namespace tdkit::text {

namespace fs = std::filesystem;

double ClassifierModel::probability(std::string_view clean_text) const {
  return logistic.probability(vectorizer.transform(word_tokens(clean_text)));
}

std::array<double, 2> ClassifierModel::head(std::string_view clean_text) const {
  const double p = probability(clean_text);
  return {1.0 - p, p};
}

json ClassifierModel::to_json() const {
  json j{{"header",
               {{"format_version", format_version},
                {"seed", seed},
                {"dataset_hash", dataset_hash},
                {"positive_class", positive_class},
                {"n_train", n_train}}},
              {"features",
               {{"num_buckets", vectorizer.config().num_buckets},
                {"max_ngram", vectorizer.config().max_ngram},
                {"vocabulary", vectorizer.vocabulary()},
                {"idf", vectorizer.idf()}}},
              {"weights", logistic.weights},
              {"bias", logistic.bias}};
  if (!meta.is_null()) j[kMetaKey] = meta;
  return j;
}

ClassifierModel ClassifierModel::from_json(const json& j) {
  ClassifierModel m;
  const json& h = j.at("header");
  m.format_version = h.at("format_version").get<int>();
  if (m.format_version != kModelFormatVersion) {
    throw Error("unsupported model format_version " + std::to_string(m.format_version));
  }
  m.seed = h.at("seed").get<std::uint64_t>();
  m.dataset_hash = h.at("dataset_hash").get<std::string>();
  m.positive_class = h.at("positive_class").get<std::string>();
  m.n_train = h.value("n_train", std::size_t{0});
  const json& f = j.at("features");
  FeatureConfig cfg;
  cfg.num_buckets = f.at("num_buckets").get<std::uint32_t>();
  cfg.max_ngram = f.at("max_ngram").get<int>();
  m.vectorizer = TfidfVectorizer(cfg, f.at("vocabulary").get<std::vector<std::uint32_t>>(),
                                 f.at("idf").get<std::vector<double>>());
  m.logistic.weights = j.at("weights").get<std::vector<double>>();
  m.logistic.bias = j.at("bias").get<double>();
  if (m.logistic.weights.size() != m.vectorizer.dim()) throw Error("weight vector does not match vocabulary");
  if (j.contains(kMetaKey)) m.meta = j.at(kMetaKey);
  return m;
}

void ClassifierModel::save(const fs::path& path) const { write_json_file(path, to_json()); }

ClassifierModel ClassifierModel::load(const fs::path& path) { return from_json(read_json_file(path)); }

namespace {

ClassifierModel fit(const std::vector<std::string>& texts, const std::vector<int>& y, const ClassifierConfig& cfg,
                    std::string positive_class, std::string hash) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(texts.size());
  for (const auto& t : texts) docs.push_back(word_tokens(t));
  ClassifierModel m;
  m.positive_class = std::move(positive_class);
  m.seed = cfg.seed;
  m.dataset_hash = std::move(hash);
  m.n_train = texts.size();
  m.vectorizer = TfidfVectorizer::fit(docs, cfg.features);
  std::vector<SparseVector> x;
  x.reserve(docs.size());
  for (const auto& d : docs) x.push_back(m.vectorizer.transform(d));
  m.logistic = train_logistic(x, y, m.vectorizer.dim(), cfg.logistic, cfg.seed);
  return m;
}

}  // namespace

std::string dataset_hash(std::span<const BinaryRecord> records) {
  Fnv1a h;
  for (const auto& r : records) h.update_field(r.text).update_field(r.positive ? "1" : "0");
  return h.hex();
}

std::string dataset_hash(std::span<const TypedRecord> records) {
  Fnv1a h;
  for (const auto& r : records) h.update_field(r.text).update_field(to_string(r.label));
  return h.hex();
}

ClassifierModel train_binary(std::span<const BinaryRecord> records, const ClassifierConfig& cfg,
                             const std::string& positive_class) {
  std::vector<std::string> texts;
  std::vector<int> y;
  std::size_t pos = 0;
  for (const auto& r : records) {
    texts.push_back(r.text);
    y.push_back(r.positive ? 1 : 0);
    pos += r.positive;
  }
  if (pos == 0 || pos == records.size()) throw Error("degenerate training set");
  return fit(texts, y, cfg, positive_class, dataset_hash(records));
}

TypeModels train_type_classifiers(std::span<const TypedRecord> records, const ClassifierConfig& cfg) {
  for (TDLabel t : kTDTypes) {
    const bool present = std::any_of(records.begin(), records.end(), [t](const TypedRecord& r) { return r.label == t; });
    if (!present) throw Error("missing type " + std::string(to_string(t)));
  }
  std::vector<std::string> texts;
  for (const auto& r : records) texts.push_back(r.text);
  const std::string hash = dataset_hash(records);
  TypeModels out;
  for (TDLabel t : kTDTypes) {
    std::vector<int> y;
    for (const auto& r : records) y.push_back(r.label == t ? 1 : 0);
    if (std::all_of(y.begin(), y.end(), [](int v) { return v == 1; })) throw Error("degenerate training set");
    out.emplace(t, fit(texts, y, cfg, std::string(to_string(t)), hash));
  }
  return out;
}

void ModelSet::save_dir(const fs::path& dir) const {
  fs::create_directories(dir);
  if (detector) detector->save(dir / "detector.json");
  for (const auto& [label, model] : types) model.save(dir / ("type-" + std::string(to_string(label)) + ".json"));
}

ModelSet ModelSet::load_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw NotFoundError("model directory not found: " + dir.string());
  ModelSet ms;
  if (fs::exists(dir / "detector.json")) ms.detector = ClassifierModel::load(dir / "detector.json");
  for (TDLabel t : kTDTypes) {
    const auto p = dir / ("type-" + std::string(to_string(t)) + ".json");
    if (fs::exists(p)) ms.types.emplace(t, ClassifierModel::load(p));
  }
  return ms;
}

std::array<double, 2> Prediction::head(TDLabel type) const {
  const double p = type_probability[index_of(type)];
  return {1.0 - p, p};
}

Prediction predict(const ModelSet& models, std::string_view clean_text, double threshold) {
  Prediction p;
  if (models.detector) p.satd_probability = models.detector->probability(clean_text);
  for (TDLabel t : kTDTypes) {
    auto it = models.types.find(t);
    if (it == models.types.end()) continue;
    p.type_probability[index_of(t)] = it->second.probability(clean_text);
    if (p.type_probability[index_of(t)] > threshold) p.predicted_set.push_back(t);
  }
  std::stable_sort(p.predicted_set.begin(), p.predicted_set.end(), [&](TDLabel a, TDLabel b) {
    return p.type_probability[index_of(a)] > p.type_probability[index_of(b)];
  });
  if (!p.predicted_set.empty()) {
    p.entropy_head.type = p.predicted_set.front();
    const auto h = p.head(p.predicted_set.front());
    p.entropy = entropy(h);
  } else if (p.satd_probability) {
    const std::array<double, 2> h = {1.0 - *p.satd_probability, *p.satd_probability};
    p.entropy = entropy(h);
  } else {
    throw Error("empty prediction set needs the binary SATD detector for its entropy");
  }
  return p;
}

double entropy(std::span<const double> probabilities) {
  if (probabilities.empty()) throw Error("entropy of an empty distribution");
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw Error("entropy: negative or non-finite probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("entropy: probabilities do not sum to 1");
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

OverlapMatrix overlap_report(std::span<const std::vector<TDLabel>> predicted_sets) {
  if (predicted_sets.empty()) throw Error("overlap_report needs at least one prediction");
  OverlapMatrix m;
  std::array<std::array<std::size_t, kNumTDTypes>, kNumTDTypes> both{};
  for (const auto& set : predicted_sets) {
    std::array<bool, kNumTDTypes> has{};
    for (TDLabel l : set) {
      if (is_td_type(l)) has[index_of(l)] = true;
    }
    for (std::size_t x = 0; x < kNumTDTypes; ++x) {
      if (!has[x]) continue;
      ++m.support[x];
      for (std::size_t y = 0; y < kNumTDTypes; ++y) both[x][y] += has[y];
    }
  }
  for (std::size_t x = 0; x < kNumTDTypes; ++x) {
    for (std::size_t y = 0; y < kNumTDTypes; ++y) {
      m.ratio[x][y] = m.support[x] ? static_cast<double>(both[x][y]) / static_cast<double>(m.support[x]) : 0.0;
    }
  }
  return m;
}

OverlapMatrix overlap_report(std::span<const Prediction> predictions) {
  std::vector<std::vector<TDLabel>> sets;
  sets.reserve(predictions.size());
  for (const auto& p : predictions) sets.push_back(p.predicted_set);
  return overlap_report(std::span<const std::vector<TDLabel>>(sets));
}

json to_json(const Prediction& p) {
  json probs = json::object();
  for (TDLabel t : kTDTypes) probs[std::string(to_string(t))] = p.type_probability[index_of(t)];
  json set = json::array();
  for (TDLabel t : p.predicted_set) set.push_back(to_string(t));
  json out = {{"type_probabilities", probs},
              {"predicted_set", set},
              {"entropy", p.entropy},
              {"entropy_head", p.entropy_head.name()}};
  out["satd_probability"] = p.satd_probability ? json(*p.satd_probability) : json(nullptr);
  return out;
}

json to_json(const OverlapMatrix& m) {
  json labels = json::array();
  for (TDLabel t : kTDTypes) labels.push_back(to_string(t));
  json rows = json::array();
  for (const auto& r : m.ratio) rows.push_back(r);
  return json{{"labels", labels}, {"ratio", rows}, {"support", m.support}};
}

}  // namespace tdkit::text
