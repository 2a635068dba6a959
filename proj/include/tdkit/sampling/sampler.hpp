#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tdkit/common.hpp"
#include "tdkit/jsonl.hpp"
#include "tdkit/text/classifier.hpp"

namespace tdkit::sampling {

// (comment, function, predicted type list) plus the scored entropy.
struct Triplet {
  std::string comment_id;
  std::string function_id;
  std::string comment_text;  // cleaned; needed to rescore against models
  std::vector<TDLabel> predicted_set;
  double entropy = 0.0;
};

enum class Branch { MultiType, Uncertain };
std::string_view to_string(Branch b);

struct Candidate {
  std::size_t triplet_index = 0;
  std::string comment_id;
  std::string function_id;
  Branch branch = Branch::MultiType;
  double entropy = 0.0;
  std::size_t rank = 0;  // position within its branch
};

struct CandidateSets {
  std::vector<Candidate> multi_type;  // |P_i| > 1, input order
  std::vector<Candidate> uncertain;   // top-|multi_type| of the rest by entropy
  std::size_t remainder_size = 0;     // |D \ Q|
};

using EntropyScorer = std::function<double(const Triplet&)>;

// Q = triplets predicting more than one type; the rest are scored, sorted by
// descending entropy (ties: ascending comment_id, then input order) and the
// first |Q| kept.
CandidateSets build_candidates(std::span<const Triplet> triplets, const EntropyScorer& score);

// Scores each non-Q triplet with the head of its first predicted type, or
// the binary detector head when it predicts no type.
CandidateSets build_candidates(std::span<const Triplet> triplets, const text::ModelSet& models);

double routed_entropy(const Triplet& t, const text::ModelSet& models);

struct SamplingResult {
  CandidateSets candidates;
  std::vector<std::string> pool;                // distinct function ids, ascending
  std::vector<std::string> selected_functions;  // sampling order
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

// Uniform sample without replacement of min(n, |pool|) function ids, using
// sample_without_replacement over the ascending pool with Rng(seed).
SamplingResult sample_functions(const CandidateSets& candidates, std::size_t n, std::uint64_t seed);

Triplet triplet_from_json(const json& j);
json to_json(const Triplet& t);
// Loads triplets, keeping only records flagged is_satd (when the flag exists).
std::vector<Triplet> read_triplets(const std::filesystem::path& path);

// One record per selected function with the provenance of every candidate
// comment that put it in the pool.
std::vector<json> sampling_records(const SamplingResult& r);

}  // namespace tdkit::sampling
