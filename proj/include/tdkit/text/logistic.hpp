#pragma once

#include <cstdint>
#include <vector>

#include "tdkit/text/features.hpp"

namespace tdkit::text {

struct LogisticConfig {
  int epochs = 30;
  double learning_rate = 0.5;
  double l2 = 1e-4;
  // Weight each class by n / (2 n_class) so rare positives still cross 0.5.
  bool balanced = true;
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;

  double decision(const SparseVector& x) const;
  double probability(const SparseVector& x) const;
};

double sigmoid(double z);

// Plain SGD on log-loss with L2, visiting examples in a seeded permutation
// each epoch; step size learning_rate / sqrt(1 + epoch).
LogisticModel train_logistic(const std::vector<SparseVector>& x, const std::vector<int>& y, std::size_t dim,
                             const LogisticConfig& cfg, std::uint64_t seed);

// One binary head per class; probabilities renormalized to sum to 1.
struct OneVsRest {
  std::vector<LogisticModel> heads;

  std::vector<double> probabilities(const SparseVector& x) const;
  std::size_t predict(const SparseVector& x) const;
};

OneVsRest train_one_vs_rest(const std::vector<SparseVector>& x, const std::vector<int>& y, std::size_t n_classes,
                            std::size_t dim, const LogisticConfig& cfg, std::uint64_t seed);

}  // namespace tdkit::text
