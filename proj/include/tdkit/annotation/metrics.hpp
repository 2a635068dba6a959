#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdkit/annotation/task.hpp"
#include "tdkit/common.hpp"

namespace tdkit::annotation {

struct LabelPair {
  TDLabel a;
  TDLabel b;
};

// Square contingency table, rows = annotator A, columns = annotator B.
using ConfusionTable = std::vector<std::vector<double>>;

ConfusionTable confusion_table(std::span<const LabelPair> pairs);

// Percentage of pairs with identical labels. Error on empty input.
double raw_agreement(std::span<const LabelPair> pairs);

struct KappaResult {
  double kappa = 0.0;
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
  bool degenerate = false;  // p_e == 1; kappa defined as 1
  std::string band;
};

// Landis-Koch: <=0 Poor, (0,.2] Slight, (.2,.4] Fair, (.4,.6] Moderate,
// (.6,.8] Substantial, (.8,1] Almost Perfect.
std::string landis_koch_band(double kappa);

KappaResult cohen_kappa(const ConfusionTable& table);
// Needs at least two pairs.
KappaResult cohen_kappa(std::span<const LabelPair> pairs);

// Original (pre-audit) label pairs of tasks that have both labels.
std::vector<LabelPair> original_pairs(std::span<const AnnotationTask> tasks, std::optional<int> phase = std::nullopt);

struct PhaseAgreement {
  std::size_t n_items = 0;
  double raw_agreement = 0.0;
  KappaResult kappa;
};

struct AgreementReport {
  std::size_t n_items = 0;
  double raw_agreement = 0.0;
  KappaResult kappa;
  std::map<int, PhaseAgreement> per_phase;
};

// Over tasks with both labels (optionally one phase), using the original
// labels so audits never move the numbers. Error when no task qualifies.
AgreementReport agreement_report(std::span<const AnnotationTask> tasks, std::optional<int> phase = std::nullopt);

json to_json(const KappaResult& k);
json to_json(const AgreementReport& r);

}  // namespace tdkit::annotation
