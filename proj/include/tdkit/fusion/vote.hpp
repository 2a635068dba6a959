#pragma once

#include <array>
#include <optional>
#include <span>

#include "tdkit/common.hpp"
#include "tdkit/dataset/builder.hpp"

namespace tdkit::fusion {

struct ScopeVote {
  dataset::ContextScope scope;
  TDLabel label = TDLabel::NonSatd;
  // Full class distribution of the voter, indexed by TDLabel; optional.
  std::optional<std::array<double, kNumLabels>> probabilities;
};

// Plurality. Ties: highest summed probability over all voters (only when
// every voter carries probabilities), then the full-function voter's label
// if it is among the tied ones, then enum order. Throws on no voters.
TDLabel majority_vote(std::span<const ScopeVote> votes);

}  // namespace tdkit::fusion
