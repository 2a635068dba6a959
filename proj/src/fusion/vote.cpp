#include "tdkit/fusion/vote.hpp"

#include <algorithm>
#include <vector>

namespace tdkit::fusion {

TDLabel majority_vote(std::span<const ScopeVote> votes) {
  if (votes.empty()) throw Error("majority_vote: no voters");
  std::array<std::size_t, kNumLabels> count{};
  for (const auto& v : votes) ++count[index_of(v.label)];
  const std::size_t top = *std::max_element(count.begin(), count.end());
  std::vector<TDLabel> tied;
  for (TDLabel l : kAllLabels) {
    if (count[index_of(l)] == top) tied.push_back(l);
  }
  if (tied.size() == 1) return tied.front();

  const bool have_probs =
      std::all_of(votes.begin(), votes.end(), [](const ScopeVote& v) { return v.probabilities.has_value(); });
  if (have_probs) {
    std::array<double, kNumLabels> sum{};
    for (const auto& v : votes) {
      for (std::size_t c = 0; c < kNumLabels; ++c) sum[c] += (*v.probabilities)[c];
    }
    double best = -1.0;
    for (TDLabel l : tied) best = std::max(best, sum[index_of(l)]);
    std::erase_if(tied, [&](TDLabel l) { return sum[index_of(l)] < best; });
    if (tied.size() == 1) return tied.front();
  }
  for (const auto& v : votes) {
    if (v.scope == dataset::ContextScope::Full() && std::find(tied.begin(), tied.end(), v.label) != tied.end()) {
      return v.label;
    }
  }
  return tied.front();
}

}  // namespace tdkit::fusion
