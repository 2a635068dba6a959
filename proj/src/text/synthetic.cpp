#include "tdkit/text/synthetic.hpp"

#include <array>
#include <cstddef>
#include <cstdio>
#include <string_view>

#include "tdkit/rng.hpp"

namespace tdkit::text {

namespace {

using Words = std::vector<std::string_view>;

const Words& cues(TDLabel l) {
  static const std::array<Words, kNumTDTypes> kCues = {{
      {"refactor", "workaround", "ugly", "duplicated", "coupling", "kludge"},
      {"implement", "unsupported", "incomplete", "unimplemented", "stub", "placeholder"},
      {"bug", "broken", "crash", "wrong", "leak", "race"},
      {"test", "tests", "coverage", "untested", "flaky", "mock"},
      {"document", "javadoc", "undocumented", "explain", "describe", "docs"},
  }};
  return kCues[index_of(l)];
}

const Words& filler() {
  static const Words kFiller = {"the",   "value",  "list",   "returns", "this",   "method", "for",  "user",
                                "input", "buffer", "when",   "called",  "from",   "state",  "index", "of",
                                "a",     "new",    "object", "config",  "cached", "map",    "key",  "result"};
  return kFiller;
}

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[static_cast<std::size_t>(uniform_index(rng, v.size()))];
}

}  // namespace

std::vector<SyntheticComment> synthetic_comments(std::size_t n, std::uint64_t seed, double satd_ratio,
                                                 std::size_t n_projects) {
  static const Words kTags = {"todo", "fixme", "hack", "xxx"};
  Rng rng(seed);
  std::vector<SyntheticComment> out;
  out.reserve(n);
  std::size_t satd_seen = 0;
  for (std::size_t i = 0; i < n; ++i) {
    SyntheticComment c;
    const bool satd = static_cast<double>(satd_seen) < satd_ratio * static_cast<double>(i + 1);
    std::string text;
    auto add = [&text](std::string_view w) {
      if (!text.empty()) text += ' ';
      text += w;
    };
    if (satd) {
      c.label = kTDTypes[satd_seen % kNumTDTypes];
      ++satd_seen;
      if (uniform_unit(rng) < 0.7) add(std::string(pick(kTags, rng)) + ":");
      std::vector<std::string_view> words;
      const std::size_t n_fill = 2 + uniform_index(rng, 4);
      for (std::size_t k = 0; k < n_fill; ++k) words.push_back(pick(filler(), rng));
      const std::size_t n_cues = 1 + uniform_index(rng, 2);
      for (std::size_t k = 0; k < n_cues; ++k) {
        const auto at = static_cast<std::ptrdiff_t>(uniform_index(rng, words.size() + 1));
        words.insert(words.begin() + at, pick(cues(c.label), rng));
      }
      for (auto w : words) add(w);
    } else {
      c.label = TDLabel::NonSatd;
      const std::size_t n_fill = 3 + uniform_index(rng, 5);
      for (std::size_t k = 0; k < n_fill; ++k) add(pick(filler(), rng));
    }
    c.text = std::move(text);
    char proj[32];
    std::snprintf(proj, sizeof proj, "proj-%02zu", static_cast<std::size_t>(uniform_index(rng, n_projects)));
    c.project = proj;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tdkit::text
