#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdkit/jsonl.hpp"

namespace tdkit::dataset {

struct FoldSplit {
  std::size_t n_folds = 0;
  std::map<std::string, std::size_t> project_fold;
  std::map<std::string, std::size_t> record_fold;

  std::vector<std::size_t> fold_sizes() const;  // records per fold
  json to_json() const;                         // {project: fold}
  static FoldSplit from_json(const json& j);
};

struct FoldRecord {
  std::string id;
  std::string project;
};

// Whole projects go to folds. With exactly n_folds projects each gets its own
// fold (seeded order); with more, largest-first greedy packing followed by
// move/swap local search on the max/min fold-size ratio.
// Throws Error when there are fewer projects than folds.
FoldSplit cross_project_folds(std::span<const FoldRecord> records, std::size_t n_folds, std::uint64_t seed);

// max/min records per fold; +inf when a fold is empty.
double fold_balance_ratio(std::span<const std::size_t> fold_sizes);

}  // namespace tdkit::dataset
