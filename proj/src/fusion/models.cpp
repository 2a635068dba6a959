#include "tdkit/fusion/models.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "tdkit/fusion/fusion.hpp"
#include "tdkit/fusion/vote.hpp"
#include "tdkit/text/clean.hpp"

namespace tdkit::fusion {

std::string_view to_string(FusionMethod m) { return m == FusionMethod::StrConcat ? "strconcat" : "codeatt"; }

FusionMethod method_from_string(std::string_view s) {
  if (s == "strconcat") return FusionMethod::StrConcat;
  if (s == "codeatt") return FusionMethod::CodeAtt;
  throw Error("unknown fusion method: " + std::string(s));
}

namespace {

std::vector<std::string> code_tokens(std::string_view code) {
  auto toks = tokenize(code);
  for (auto& t : toks) {
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
  return toks;
}

std::vector<std::string> comment_tokens(std::string_view comment) {
  auto toks = text::word_tokens(comment);
  if (toks.empty()) toks.emplace_back("[EMPTY]");
  return toks;
}

text::SparseVector dense_to_sparse(const Eigen::VectorXd& v) {
  text::SparseVector s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    s.index.push_back(static_cast<std::uint32_t>(i));
    s.value.push_back(v[i]);
  }
  return s;
}

}  // namespace

std::vector<std::string> strconcat_tokens(const dataset::CommentSample& s, std::size_t max_len) {
  return str_concat(text::word_tokens(s.comment), code_tokens(s.context), max_len);
}

Eigen::VectorXd codeatt_vector(const dataset::CommentSample& s, int dim, std::uint64_t seed) {
  const auto H = embed_tokens(comment_tokens(s.comment), dim, seed);
  const auto ctx = code_tokens(s.context);
  if (ctx.empty()) return H.values.colwise().mean().transpose();
  const auto G = embed_tokens(ctx, dim, seed);
  return code_att(G.values, H.values).pooled;
}

text::SparseVector FusionModel::features(const dataset::CommentSample& s) const {
  if (cfg.method == FusionMethod::StrConcat) return vectorizer.transform(strconcat_tokens(s, cfg.max_len));
  return dense_to_sparse(codeatt_vector(s, cfg.dim, cfg.seed));
}

std::array<double, kNumLabels> FusionModel::probabilities(const dataset::CommentSample& s) const {
  const auto p = ovr.probabilities(features(s));
  std::array<double, kNumLabels> out{};
  std::copy(p.begin(), p.end(), out.begin());
  return out;
}

TDLabel FusionModel::predict(const dataset::CommentSample& s) const {
  return kAllLabels[ovr.predict(features(s))];
}

FusionModel train_fusion(std::span<const dataset::CommentSample> train, const FusionConfig& cfg) {
  if (train.empty()) throw Error("train_fusion: empty training set");
  FusionModel m;
  m.cfg = cfg;
  std::vector<text::SparseVector> x;
  std::size_t dim = 0;
  if (cfg.method == FusionMethod::StrConcat) {
    std::vector<std::vector<std::string>> docs;
    for (const auto& s : train) docs.push_back(strconcat_tokens(s, cfg.max_len));
    m.vectorizer = text::TfidfVectorizer::fit(docs, cfg.features);
    for (const auto& d : docs) x.push_back(m.vectorizer.transform(d));
    dim = m.vectorizer.dim();
  } else {
    for (const auto& s : train) x.push_back(m.features(s));
    dim = static_cast<std::size_t>(cfg.dim);
  }
  std::vector<int> y;
  for (const auto& s : train) y.push_back(static_cast<int>(index_of(s.label)));
  m.ovr = text::train_one_vs_rest(x, y, kNumLabels, dim, cfg.logistic, cfg.seed);
  return m;
}

namespace {

template <typename Sample>
std::vector<std::size_t> fold_of(std::span<const Sample> samples, const dataset::FoldSplit& split) {
  std::vector<std::size_t> f;
  for (const auto& s : samples) {
    auto it = split.record_fold.find(s.id);
    if (it == split.record_fold.end()) {
      auto p = split.project_fold.find(s.project);
      if (p == split.project_fold.end()) throw Error("record " + s.id + " has no fold");
      f.push_back(p->second);
    } else {
      f.push_back(it->second);
    }
  }
  return f;
}

}  // namespace

std::vector<LabelPrediction> cross_fold_predict(std::span<const dataset::CommentSample> samples,
                                                const dataset::FoldSplit& split, const FusionConfig& cfg) {
  const auto folds = fold_of(samples, split);
  std::vector<LabelPrediction> out(samples.size());
  for (std::size_t f = 0; f < split.n_folds; ++f) {
    std::vector<dataset::CommentSample> train;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (folds[i] != f) train.push_back(samples[i]);
    }
    if (std::find(folds.begin(), folds.end(), f) == folds.end()) continue;
    const auto model = train_fusion(train, cfg);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (folds[i] != f) continue;
      auto& p = out[i];
      p.id = samples[i].id;
      p.fold = f;
      p.scope = samples[i].scope;
      p.probabilities = model.probabilities(samples[i]);
      p.label = model.predict(samples[i]);
    }
  }
  return out;
}

std::vector<SetPrediction> cross_fold_predict_code(std::span<const dataset::CodeSample> samples,
                                                   const dataset::FoldSplit& split, const FusionConfig& cfg) {
  const auto folds = fold_of(samples, split);
  std::vector<SetPrediction> out(samples.size());
  for (std::size_t f = 0; f < split.n_folds; ++f) {
    if (std::find(folds.begin(), folds.end(), f) == folds.end()) continue;
    std::vector<std::vector<std::string>> docs;
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (folds[i] == f) continue;
      docs.push_back(code_tokens(samples[i].code));
      train_idx.push_back(i);
    }
    if (docs.empty()) throw Error("cross_fold_predict_code: fold " + std::to_string(f) + " leaves no training data");
    const auto vec = text::TfidfVectorizer::fit(docs, cfg.features);
    std::vector<text::SparseVector> x;
    for (const auto& d : docs) x.push_back(vec.transform(d));
    std::vector<text::LogisticModel> heads;
    for (std::size_t k = 0; k < kCodeTDTypes.size(); ++k) {
      std::vector<int> y;
      for (std::size_t i : train_idx) {
        const auto& l = samples[i].labels;
        y.push_back(std::find(l.begin(), l.end(), kCodeTDTypes[k]) != l.end() ? 1 : 0);
      }
      heads.push_back(text::train_logistic(x, y, vec.dim(), cfg.logistic, cfg.seed + k));
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (folds[i] != f) continue;
      auto& p = out[i];
      p.id = samples[i].id;
      p.fold = f;
      const auto v = vec.transform(code_tokens(samples[i].code));
      for (std::size_t k = 0; k < kCodeTDTypes.size(); ++k) {
        p.probabilities[k] = heads[k].probability(v);
        if (p.probabilities[k] >= 0.5) p.labels.push_back(kCodeTDTypes[k]);
      }
    }
  }
  return out;
}

std::vector<LabelPrediction> ensemble(std::span<const std::vector<LabelPrediction>> per_scope) {
  if (per_scope.empty()) throw Error("ensemble: no scopes");
  std::map<std::string, std::vector<ScopeVote>> votes;
  std::map<std::string, std::size_t> fold;
  std::vector<std::string> order;
  for (const auto& scope_preds : per_scope) {
    for (const auto& p : scope_preds) {
      auto [it, fresh] = votes.try_emplace(p.id);
      if (fresh) {
        order.push_back(p.id);
        fold[p.id] = p.fold;
      }
      it->second.push_back({dataset::ContextScope::parse(p.scope), p.label, p.probabilities});
    }
  }
  std::vector<LabelPrediction> out;
  for (const auto& id : order) {
    const auto& v = votes.at(id);
    if (v.size() != per_scope.size()) throw Error("ensemble: id " + id + " is missing from some scope");
    LabelPrediction p;
    p.id = id;
    p.fold = fold.at(id);
    p.scope = "ensemble";
    p.label = majority_vote(v);
    out.push_back(std::move(p));
  }
  return out;
}

json to_json(const LabelPrediction& p) {
  json j{{"id", p.id}, {"fold", p.fold}, {"scope", p.scope}, {"label", std::string(tdkit::to_string(p.label))}};
  if (p.probabilities) {
    json probs = json::object();
    for (TDLabel l : kAllLabels) probs[std::string(tdkit::to_string(l))] = (*p.probabilities)[index_of(l)];
    j["probabilities"] = probs;
  }
  return j;
}

json to_json(const SetPrediction& p) {
  json labels = json::array(), probs = json::object();
  for (TDLabel l : p.labels) labels.push_back(std::string(tdkit::to_string(l)));
  for (std::size_t k = 0; k < kCodeTDTypes.size(); ++k) probs[std::string(tdkit::to_string(kCodeTDTypes[k]))] = p.probabilities[k];
  return json{{"id", p.id}, {"fold", p.fold}, {"labels", labels}, {"probabilities", probs}};
}

LabelPrediction label_prediction_from_json(const json& j) {
  LabelPrediction p;
  p.id = j.at("id").get<std::string>();
  p.fold = j.value("fold", std::size_t{0});
  p.scope = j.value("scope", std::string("full"));
  p.label = label_from_string(j.at("label").get<std::string>());
  if (j.contains("probabilities")) {
    std::array<double, kNumLabels> probs{};
    for (const auto& [name, v] : j.at("probabilities").items()) probs[index_of(label_from_string(name))] = v.get<double>();
    p.probabilities = probs;
  }
  return p;
}

SetPrediction set_prediction_from_json(const json& j) {
  SetPrediction p;
  p.id = j.at("id").get<std::string>();
  p.fold = j.value("fold", std::size_t{0});
  for (const auto& l : j.at("labels")) p.labels.push_back(label_from_string(l.get<std::string>()));
  if (j.contains("probabilities")) {
    for (std::size_t k = 0; k < kCodeTDTypes.size(); ++k) {
      p.probabilities[k] = j.at("probabilities").value(std::string(tdkit::to_string(kCodeTDTypes[k])), 0.0);
    }
  }
  return p;
}

namespace {

std::vector<TDLabel> label_set(const json& j) {
  std::vector<TDLabel> out;
  for (const auto& l : j.at("labels")) out.push_back(label_from_string(l.get<std::string>()));
  return out;
}

}  // namespace

FoldedReport evaluate_records(std::span<const json> gold, std::span<const json> predicted, EvalTask task) {
  std::map<std::string, const json*> by_id;
  for (const auto& p : predicted) by_id[p.at("id").get<std::string>()] = &p;
  const bool multi = task == EvalTask::CodeMultilabel;

  std::map<std::size_t, std::vector<TDLabel>> g1, p1;
  std::map<std::size_t, std::vector<std::vector<TDLabel>>> gm, pm;
  for (const auto& g : gold) {
    const auto id = g.at("id").get<std::string>();
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("evaluate: no prediction for id " + id);
    const json& p = *it->second;
    const std::size_t fold = p.value("fold", std::size_t{0});
    if (multi) {
      gm[fold].push_back(label_set(g));
      pm[fold].push_back(label_set(p));
      continue;
    }
    const TDLabel gl = label_from_string(g.at("label").get<std::string>());
    if (task == EvalTask::Classification && !is_td_type(gl)) continue;
    g1[fold].push_back(gl);
    p1[fold].push_back(label_from_string(p.at("label").get<std::string>()));
  }
  std::vector<EvalReport> reports;
  if (multi) {
    for (const auto& [f, g] : gm) reports.push_back(evaluate_multilabel(g, pm.at(f)));
  } else {
    for (const auto& [f, g] : g1) reports.push_back(evaluate(g, p1.at(f), task));
  }
  if (reports.empty()) throw Error("evaluate: nothing to score");
  return mean_over_folds(std::move(reports));
}

}  // namespace tdkit::fusion
