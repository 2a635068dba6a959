#include "tdkit/text/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tdkit/common.hpp"

namespace tdkit::text {

std::vector<std::uint32_t> hashed_ngrams(const std::vector<std::string>& tokens, const FeatureConfig& cfg) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Fnv1a h;
    for (int n = 1; n <= cfg.max_ngram && i + static_cast<std::size_t>(n) <= tokens.size(); ++n) {
      if (n > 1) h.update("\x1f");
      h.update(tokens[i + static_cast<std::size_t>(n) - 1]);
      // mix in the order so "a" and the bigram starting with "a" differ
      Fnv1a g = h;
      g.update(std::string(1, static_cast<char>('0' + n)));
      out.push_back(static_cast<std::uint32_t>(g.digest() % cfg.num_buckets));
    }
  }
  return out;
}

TfidfVectorizer::TfidfVectorizer(FeatureConfig cfg, std::vector<std::uint32_t> vocabulary, std::vector<double> idf)
    : cfg_(cfg), vocabulary_(std::move(vocabulary)), idf_(std::move(idf)) {
  if (vocabulary_.size() != idf_.size()) throw Error("vocabulary/idf size mismatch");
  if (!std::is_sorted(vocabulary_.begin(), vocabulary_.end())) throw Error("vocabulary must be sorted");
}

TfidfVectorizer TfidfVectorizer::fit(const std::vector<std::vector<std::string>>& docs, const FeatureConfig& cfg) {
  std::map<std::uint32_t, std::size_t> df;
  for (const auto& d : docs) {
    auto buckets = hashed_ngrams(d, cfg);
    std::sort(buckets.begin(), buckets.end());
    buckets.erase(std::unique(buckets.begin(), buckets.end()), buckets.end());
    for (auto b : buckets) ++df[b];
  }
  std::vector<std::uint32_t> vocab;
  std::vector<double> idf;
  vocab.reserve(df.size());
  idf.reserve(df.size());
  const double n = static_cast<double>(docs.size());
  for (const auto& [bucket, count] : df) {
    vocab.push_back(bucket);
    idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return TfidfVectorizer(cfg, std::move(vocab), std::move(idf));
}

SparseVector TfidfVectorizer::transform(const std::vector<std::string>& tokens) const {
  auto buckets = hashed_ngrams(tokens, cfg_);
  std::sort(buckets.begin(), buckets.end());
  SparseVector v;
  std::size_t i = 0;
  while (i < buckets.size()) {
    std::size_t j = i;
    while (j < buckets.size() && buckets[j] == buckets[i]) ++j;
    const auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), buckets[i]);
    if (it != vocabulary_.end() && *it == buckets[i]) {
      const auto col = static_cast<std::size_t>(it - vocabulary_.begin());
      v.index.push_back(static_cast<std::uint32_t>(col));
      v.value.push_back(static_cast<double>(j - i) * idf_[col]);
    }
    i = j;
  }
  double norm = 0.0;
  for (double x : v.value) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v.value) x /= norm;
  }
  return v;
}

}  // namespace tdkit::text
