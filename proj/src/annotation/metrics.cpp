#include "tdkit/annotation/metrics.hpp"

#include <cmath>

namespace tdkit::annotation {

ConfusionTable confusion_table(std::span<const LabelPair> pairs) {
  ConfusionTable t(kNumLabels, std::vector<double>(kNumLabels, 0.0));
  for (const auto& p : pairs) t[index_of(p.a)][index_of(p.b)] += 1.0;
  return t;
}

double raw_agreement(std::span<const LabelPair> pairs) {
  if (pairs.empty()) throw Error("raw agreement of an empty set");
  std::size_t same = 0;
  for (const auto& p : pairs) same += p.a == p.b;
  return 100.0 * static_cast<double>(same) / static_cast<double>(pairs.size());
}

std::string landis_koch_band(double k) {
  if (k <= 0.0) return "Poor";
  if (k <= 0.20) return "Slight";
  if (k <= 0.40) return "Fair";
  if (k <= 0.60) return "Moderate";
  if (k <= 0.80) return "Substantial";
  return "Almost Perfect";
}

KappaResult cohen_kappa(const ConfusionTable& table) {
  const std::size_t k = table.size();
  double n = 0.0;
  std::vector<double> rows(k, 0.0), cols(k, 0.0);
  double diag = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (table[i].size() != k) throw Error("confusion table must be square");
    for (std::size_t j = 0; j < k; ++j) {
      const double v = table[i][j];
      if (v < 0.0) throw Error("negative count in confusion table");
      n += v;
      rows[i] += v;
      cols[j] += v;
      if (i == j) diag += v;
    }
  }
  if (n <= 0.0) throw Error("kappa of an empty table");
  KappaResult r;
  r.observed = diag / n;
  for (std::size_t i = 0; i < k; ++i) r.expected += (rows[i] / n) * (cols[i] / n);
  if (std::abs(1.0 - r.expected) < 1e-15) {
    r.degenerate = true;
    r.kappa = 1.0;
  } else {
    r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  }
  r.band = landis_koch_band(r.kappa);
  return r;
}

KappaResult cohen_kappa(std::span<const LabelPair> pairs) {
  if (pairs.size() < 2) throw Error("kappa needs at least two items");
  return cohen_kappa(confusion_table(pairs));
}

std::vector<LabelPair> original_pairs(std::span<const AnnotationTask> tasks, std::optional<int> phase) {
  std::vector<LabelPair> out;
  for (const auto& t : tasks) {
    if (!t.has_both_labels()) continue;
    if (phase && t.phase != *phase) continue;
    out.push_back({*t.label_a, *t.label_b});
  }
  return out;
}

namespace {

PhaseAgreement summarize(std::span<const LabelPair> pairs) {
  PhaseAgreement p;
  p.n_items = pairs.size();
  p.raw_agreement = raw_agreement(pairs);
  if (pairs.size() >= 2) {
    p.kappa = cohen_kappa(pairs);
  } else {
    p.kappa = cohen_kappa(confusion_table(pairs));
  }
  return p;
}

}  // namespace

AgreementReport agreement_report(std::span<const AnnotationTask> tasks, std::optional<int> phase) {
  const auto pairs = original_pairs(tasks, phase);
  if (pairs.empty()) throw Error("no completed tasks to measure");
  AgreementReport r;
  const PhaseAgreement all = summarize(pairs);
  r.n_items = all.n_items;
  r.raw_agreement = all.raw_agreement;
  r.kappa = all.kappa;
  std::map<int, std::vector<LabelPair>> by_phase;
  for (const auto& t : tasks) {
    if (!t.has_both_labels() || (phase && t.phase != *phase)) continue;
    by_phase[t.phase].push_back({*t.label_a, *t.label_b});
  }
  for (const auto& [ph, ps] : by_phase) r.per_phase[ph] = summarize(ps);
  return r;
}

json to_json(const KappaResult& k) {
  return json{{"kappa", k.kappa},
              {"observed", k.observed},
              {"expected", k.expected},
              {"degenerate", k.degenerate},
              {"band", k.band}};
}

json to_json(const AgreementReport& r) {
  json phases = json::object();
  for (const auto& [ph, p] : r.per_phase) {
    phases[std::to_string(ph)] = json{{"n_items", p.n_items},
                                      {"raw_agreement", p.raw_agreement},
                                      {"kappa", p.kappa.kappa},
                                      {"band", p.kappa.band},
                                      {"degenerate", p.kappa.degenerate}};
  }
  return json{{"n_items", r.n_items},
              {"raw_agreement", r.raw_agreement},
              {"kappa", r.kappa.kappa},
              {"band", r.kappa.band},
              {"degenerate", r.kappa.degenerate},
              {"observed", r.kappa.observed},
              {"expected", r.kappa.expected},
              {"per_phase", phases}};
}

}  // namespace tdkit::annotation
