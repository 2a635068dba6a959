#include "tdkit/text/logistic.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include "tdkit/common.hpp"
#include "tdkit/rng.hpp"

namespace tdkit::text {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogisticModel::decision(const SparseVector& x) const {
  double z = bias;
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    if (x.index[k] < weights.size()) z += weights[x.index[k]] * x.value[k];
  }
  return z;
}

double LogisticModel::probability(const SparseVector& x) const { return sigmoid(decision(x)); }

LogisticModel train_logistic(const std::vector<SparseVector>& x, const std::vector<int>& y, std::size_t dim,
                             const LogisticConfig& cfg, std::uint64_t seed) {
  if (x.size() != y.size()) throw Error("feature/label count mismatch");
  LogisticModel m;
  m.weights.assign(dim, 0.0);
  // w_effective = scale * w, so the L2 shrink is O(1) per step.
  double scale = 1.0;
  std::size_t n_pos = 0;
  for (int v : y) n_pos += v != 0;
  std::array<double, 2> weight{1.0, 1.0};
  if (cfg.balanced && n_pos > 0 && n_pos < y.size()) {
    const double n = static_cast<double>(y.size());
    weight[0] = n / (2.0 * static_cast<double>(y.size() - n_pos));
    weight[1] = n / (2.0 * static_cast<double>(n_pos));
  }
  Rng rng(seed);
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_in_place(order, rng);
    const double lr = cfg.learning_rate / std::sqrt(1.0 + epoch);
    for (std::size_t idx : order) {
      const SparseVector& v = x[idx];
      double z = m.bias;
      for (std::size_t k = 0; k < v.nnz(); ++k) z += scale * m.weights[v.index[k]] * v.value[k];
      const bool pos = y[idx] != 0;
      const double g = weight[pos] * (sigmoid(z) - static_cast<double>(pos));
      scale *= 1.0 - lr * cfg.l2;
      for (std::size_t k = 0; k < v.nnz(); ++k) m.weights[v.index[k]] -= lr * g * v.value[k] / scale;
      m.bias -= lr * g;
      if (scale < 1e-9) {
        for (double& w : m.weights) w *= scale;
        scale = 1.0;
      }
    }
  }
  for (double& w : m.weights) w *= scale;
  return m;
}

std::vector<double> OneVsRest::probabilities(const SparseVector& x) const {
  std::vector<double> p(heads.size());
  double sum = 0.0;
  for (std::size_t c = 0; c < heads.size(); ++c) {
    p[c] = heads[c].probability(x);
    sum += p[c];
  }
  if (sum > 0.0) {
    for (double& v : p) v /= sum;
  }
  return p;
}

std::size_t OneVsRest::predict(const SparseVector& x) const {
  const auto p = probabilities(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < p.size(); ++c) {
    if (p[c] > p[best]) best = c;
  }
  return best;
}

OneVsRest train_one_vs_rest(const std::vector<SparseVector>& x, const std::vector<int>& y, std::size_t n_classes,
                            std::size_t dim, const LogisticConfig& cfg, std::uint64_t seed) {
  OneVsRest ovr;
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::vector<int> bin(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) bin[i] = static_cast<std::size_t>(y[i]) == c ? 1 : 0;
    ovr.heads.push_back(train_logistic(x, bin, dim, cfg, seed + c));
  }
  return ovr;
}

}  // namespace tdkit::text
