#include "tdkit/fusion/evaluate.hpp"

#include <algorithm>
#include <array>

namespace tdkit::fusion {

std::string_view to_string(EvalTask t) {
  switch (t) {
    case EvalTask::Identification: return "identification";
    case EvalTask::Classification: return "classification";
    case EvalTask::Detection: return "detection";
    case EvalTask::CodeMultilabel: return "code_multilabel";
  }
  return "?";
}

EvalTask task_from_string(std::string_view s) {
  for (EvalTask t : {EvalTask::Identification, EvalTask::Classification, EvalTask::Detection, EvalTask::CodeMultilabel}) {
    if (to_string(t) == s) return t;
  }
  throw Error("unknown evaluation task: " + std::string(s));
}

ClassScores class_scores(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassScores s;
  s.tp = tp;
  s.fp = fp;
  s.fn = fn;
  const auto d = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
  s.precision = d(tp, tp + fp);
  s.recall = d(tp, tp + fn);
  s.f1 = d(2 * tp, 2 * tp + fp + fn);
  return s;
}

namespace {

// Fills per_class, macro and micro from per-class counts.
void summarize(EvalReport& r, const std::vector<std::string>& names, const std::vector<std::array<std::size_t, 3>>& c) {
  double macro = 0.0;
  std::size_t used = 0, tp = 0, fp = 0, fn = 0;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto s = class_scores(c[k][0], c[k][1], c[k][2]);
    r.per_class[names[k]] = s;
    tp += s.tp;
    fp += s.fp;
    fn += s.fn;
    if (s.tp + s.fp + s.fn > 0) {
      macro += s.f1;
      ++used;
    }
  }
  r.macro_f1 = used == 0 ? 0.0 : macro / static_cast<double>(used);
  r.micro_f1 = class_scores(tp, fp, fn).f1;
}

}  // namespace

EvalReport evaluate(std::span<const TDLabel> gold, std::span<const TDLabel> predicted, EvalTask task) {
  if (gold.size() != predicted.size()) {
    throw Error("evaluate: " + std::to_string(gold.size()) + " gold vs " + std::to_string(predicted.size()) +
                " predicted");
  }
  if (task == EvalTask::CodeMultilabel) throw Error("evaluate: use evaluate_multilabel for code_multilabel");
  EvalReport r;
  r.task = task;
  r.n = gold.size();

  if (task == EvalTask::Identification) {
    std::vector<std::array<std::size_t, 3>> c(2, {0, 0, 0});
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const int g = is_td_type(gold[i]) ? 0 : 1;
      const int p = is_td_type(predicted[i]) ? 0 : 1;
      if (g == p) {
        ++c[g][0];
      } else {
        ++c[p][1];
        ++c[g][2];
      }
    }
    summarize(r, {"SATD", "NON_SATD"}, c);
    r.f1 = r.per_class["SATD"].f1;
    return r;
  }

  const bool five = task == EvalTask::Classification;
  const std::size_t n_classes = five ? kNumTDTypes : kNumLabels;
  std::vector<std::array<std::size_t, 3>> c(n_classes, {0, 0, 0});
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (five && !is_td_type(gold[i])) throw Error("evaluate: classification gold contains NON_SATD");
    const std::size_t g = index_of(gold[i]);
    const std::size_t p = index_of(predicted[i]);
    if (g == p) {
      ++c[g][0];
      continue;
    }
    // a NON_SATD prediction in the 5-way task is a miss with no class to blame
    if (p < n_classes) ++c[p][1];
    ++c[g][2];
  }
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n_classes; ++k) names.emplace_back(tdkit::to_string(kAllLabels[k]));
  summarize(r, names, c);
  r.f1 = r.macro_f1;
  return r;
}

double example_f1(const std::vector<TDLabel>& gold, const std::vector<TDLabel>& predicted) {
  if (gold.empty() && predicted.empty()) return 1.0;
  std::size_t inter = 0;
  for (TDLabel l : predicted) inter += std::count(gold.begin(), gold.end(), l) > 0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(gold.size() + predicted.size());
}

EvalReport evaluate_multilabel(std::span<const std::vector<TDLabel>> gold,
                               std::span<const std::vector<TDLabel>> predicted) {
  if (gold.size() != predicted.size()) {
    throw Error("evaluate: " + std::to_string(gold.size()) + " gold vs " + std::to_string(predicted.size()) +
                " predicted");
  }
  EvalReport r;
  r.task = EvalTask::CodeMultilabel;
  r.n = gold.size();
  std::vector<std::array<std::size_t, 3>> c(kCodeTDTypes.size(), {0, 0, 0});
  double em = 0.0, f1 = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    auto g = gold[i], p = predicted[i];
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    em += g == p ? 1.0 : 0.0;
    f1 += example_f1(g, p);
    for (std::size_t k = 0; k < kCodeTDTypes.size(); ++k) {
      const bool in_g = std::binary_search(g.begin(), g.end(), kCodeTDTypes[k]);
      const bool in_p = std::binary_search(p.begin(), p.end(), kCodeTDTypes[k]);
      if (in_g && in_p) ++c[k][0];
      if (!in_g && in_p) ++c[k][1];
      if (in_g && !in_p) ++c[k][2];
    }
  }
  std::vector<std::string> names;
  for (TDLabel l : kCodeTDTypes) names.emplace_back(tdkit::to_string(l));
  summarize(r, names, c);
  const double n = gold.empty() ? 1.0 : static_cast<double>(gold.size());
  r.exact_match = gold.empty() ? 0.0 : em / n;
  r.example_f1 = gold.empty() ? 0.0 : f1 / n;
  r.f1 = *r.example_f1;
  return r;
}

FoldedReport mean_over_folds(std::vector<EvalReport> folds) {
  if (folds.empty()) throw Error("mean_over_folds: no folds");
  FoldedReport out;
  EvalReport& m = out.mean;
  m.task = folds.front().task;
  const double k = static_cast<double>(folds.size());
  for (const auto& f : folds) {
    m.n += f.n;
    m.f1 += f.f1 / k;
    m.macro_f1 += f.macro_f1 / k;
    m.micro_f1 += f.micro_f1 / k;
    if (f.exact_match) m.exact_match = m.exact_match.value_or(0.0) + *f.exact_match / k;
    if (f.example_f1) m.example_f1 = m.example_f1.value_or(0.0) + *f.example_f1 / k;
    for (const auto& [name, s] : f.per_class) {
      auto& t = m.per_class[name];
      t.tp += s.tp;
      t.fp += s.fp;
      t.fn += s.fn;
      t.precision += s.precision / k;
      t.recall += s.recall / k;
      t.f1 += s.f1 / k;
    }
  }
  out.folds = std::move(folds);
  return out;
}

namespace {

double pct(double v) { return 100.0 * v; }

}  // namespace

json to_json(const EvalReport& r) {
  json per_class = json::object();
  for (const auto& [name, s] : r.per_class) {
    per_class[name] = {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1},
                       {"tp", s.tp},               {"fp", s.fp},         {"fn", s.fn}};
  }
  json j{{"task", std::string(to_string(r.task))},
         {"n", r.n},
         {"f1", r.f1},
         {"macro_f1", r.macro_f1},
         {"micro_f1", r.micro_f1},
         {"per_class", per_class}};
  json percent{{"f1", pct(r.f1)}, {"macro_f1", pct(r.macro_f1)}, {"micro_f1", pct(r.micro_f1)}};
  if (r.exact_match) {
    j["exact_match"] = *r.exact_match;
    percent["exact_match"] = pct(*r.exact_match);
  }
  if (r.example_f1) {
    j["example_f1"] = *r.example_f1;
    percent["example_f1"] = pct(*r.example_f1);
  }
  j["percent"] = percent;
  return j;
}

json to_json(const FoldedReport& r) {
  json folds = json::array();
  json f1 = json::array(), macro = json::array(), micro = json::array(), em = json::array(), ex = json::array();
  for (const auto& f : r.folds) {
    folds.push_back(to_json(f));
    f1.push_back(f.f1);
    macro.push_back(f.macro_f1);
    micro.push_back(f.micro_f1);
    if (f.exact_match) em.push_back(*f.exact_match);
    if (f.example_f1) ex.push_back(*f.example_f1);
  }
  json per_fold{{"f1", f1}, {"macro_f1", macro}, {"micro_f1", micro}};
  if (!em.empty()) per_fold["exact_match"] = em;
  if (!ex.empty()) per_fold["example_f1"] = ex;
  return json{{"task", std::string(to_string(r.mean.task))},
              {"n_folds", r.folds.size()},
              {"per_fold", per_fold},
              {"mean", to_json(r.mean)},
              {"folds", folds}};
}

}  // namespace tdkit::fusion
