#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tdkit::text {

// Sorted by index, no duplicates.
struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<double> value;

  std::size_t nnz() const { return index.size(); }
};

struct FeatureConfig {
  std::uint32_t num_buckets = 1u << 18;
  int max_ngram = 2;
};

// Bucket ids of all unigrams..max_ngram-grams, one entry per occurrence.
std::vector<std::uint32_t> hashed_ngrams(const std::vector<std::string>& tokens, const FeatureConfig& cfg);

// Hashed n-gram TF-IDF restricted to buckets seen at fit time.
// idf = ln((1 + n_docs) / (1 + df)) + 1; rows are L2-normalized.
class TfidfVectorizer {
 public:
  TfidfVectorizer() = default;
  TfidfVectorizer(FeatureConfig cfg, std::vector<std::uint32_t> vocabulary, std::vector<double> idf);

  static TfidfVectorizer fit(const std::vector<std::vector<std::string>>& docs, const FeatureConfig& cfg);

  SparseVector transform(const std::vector<std::string>& tokens) const;

  const FeatureConfig& config() const { return cfg_; }
  const std::vector<std::uint32_t>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t dim() const { return vocabulary_.size(); }

 private:
  FeatureConfig cfg_;
  std::vector<std::uint32_t> vocabulary_;  // sorted bucket ids
  std::vector<double> idf_;
};

}  // namespace tdkit::text
