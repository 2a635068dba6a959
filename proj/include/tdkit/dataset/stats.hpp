#pragma once

#include <map>
#include <span>

#include "tdkit/dataset/builder.hpp"

namespace tdkit::dataset {

struct StatsReport {
  std::size_t n_comments = 0;
  std::size_t n_functions = 0;  // distinct functions over both inputs
  std::map<TDLabel, std::size_t> comment_label_counts;
  std::map<TDLabel, double> comment_label_ratio;  // percent
  double satd_ratio = 0.0;                        // percent of comments with a TD type
  std::map<std::size_t, std::size_t> comments_per_function;  // #comments -> #functions
  std::map<TDLabel, std::size_t> code_label_counts;
  std::map<std::size_t, std::size_t> types_per_function;     // #labels -> #functions
};

// Error when both inputs are empty.
StatsReport stats_report(std::span<const CommentSample> comments, std::span<const CodeSample> code = {});

json to_json(const StatsReport& r);

}  // namespace tdkit::dataset
