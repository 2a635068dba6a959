#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdkit/common.hpp"

namespace tdkit::text {

struct SyntheticComment {
  std::string text;  // already clean
  TDLabel label;
  std::string project;
};

// Keyword-separable labelled comments: each TD type owns a disjoint cue
// vocabulary, SATD comments usually carry a task tag, NON_SATD comments use
// only shared filler words. About satd_ratio of the records are SATD, spread
// evenly over the five types; projects are "proj-00".."proj-<n_projects-1>".
std::vector<SyntheticComment> synthetic_comments(std::size_t n, std::uint64_t seed, double satd_ratio = 0.5,
                                                 std::size_t n_projects = 10);

}  // namespace tdkit::text
