#include "tdkit/dataset/folds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tdkit/common.hpp"
#include "tdkit/rng.hpp"

namespace tdkit::dataset {

std::vector<std::size_t> FoldSplit::fold_sizes() const {
  std::vector<std::size_t> sizes(n_folds, 0);
  for (const auto& [id, f] : record_fold) ++sizes.at(f);
  return sizes;
}

json FoldSplit::to_json() const {
  json projects = json::object();
  for (const auto& [p, f] : project_fold) projects[p] = f;
  return json{{"n_folds", n_folds}, {"projects", projects}};
}

FoldSplit FoldSplit::from_json(const json& j) {
  FoldSplit s;
  s.n_folds = j.at("n_folds").get<std::size_t>();
  for (const auto& [p, f] : j.at("projects").items()) {
    const auto fold = f.get<std::size_t>();
    if (fold >= s.n_folds) throw Error("fold index out of range for project " + p);
    s.project_fold[p] = fold;
  }
  return s;
}

double fold_balance_ratio(std::span<const std::size_t> sizes) {
  if (sizes.empty()) return std::numeric_limits<double>::infinity();
  const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
  if (*mn == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(*mx) / static_cast<double>(*mn);
}

namespace {

// Local search: apply any single move or pairwise swap that strictly lowers
// the ratio, until none does.
void improve(std::vector<std::size_t>& assignment, const std::vector<std::size_t>& counts, std::size_t n_folds) {
  std::vector<std::size_t> load(n_folds, 0);
  std::vector<std::size_t> members(n_folds, 0);
  for (std::size_t p = 0; p < assignment.size(); ++p) {
    load[assignment[p]] += counts[p];
    ++members[assignment[p]];
  }
  auto ratio = [&] { return fold_balance_ratio(load); };
  double best = ratio();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < assignment.size() && !changed; ++p) {
      const std::size_t from = assignment[p];
      for (std::size_t to = 0; to < n_folds && !changed; ++to) {
        if (to == from || members[from] == 1) continue;
        load[from] -= counts[p];
        load[to] += counts[p];
        const double r = ratio();
        if (r < best - 1e-12) {
          best = r;
          assignment[p] = to;
          --members[from];
          ++members[to];
          changed = true;
        } else {
          load[from] += counts[p];
          load[to] -= counts[p];
        }
      }
    }
    for (std::size_t p = 0; p < assignment.size() && !changed; ++p) {
      for (std::size_t q = p + 1; q < assignment.size() && !changed; ++q) {
        const std::size_t fp = assignment[p], fq = assignment[q];
        if (fp == fq || counts[p] == counts[q]) continue;
        load[fp] = load[fp] - counts[p] + counts[q];
        load[fq] = load[fq] - counts[q] + counts[p];
        const double r = ratio();
        if (r < best - 1e-12) {
          best = r;
          std::swap(assignment[p], assignment[q]);
          changed = true;
        } else {
          load[fp] = load[fp] - counts[q] + counts[p];
          load[fq] = load[fq] - counts[p] + counts[q];
        }
      }
    }
  }
}

}  // namespace

FoldSplit cross_project_folds(std::span<const FoldRecord> records, std::size_t n_folds, std::uint64_t seed) {
  if (n_folds == 0) throw Error("n_folds must be positive");
  std::map<std::string, std::size_t> count;
  for (const auto& r : records) {
    if (r.project.empty()) throw Error("record " + r.id + " has no project id");
    ++count[r.project];
  }
  if (count.size() < n_folds) {
    throw Error("cross-project folds need at least " + std::to_string(n_folds) + " projects, found " +
                std::to_string(count.size()));
  }
  std::vector<std::string> projects;
  std::vector<std::size_t> counts;
  for (const auto& [p, c] : count) {
    projects.push_back(p);
    counts.push_back(c);
  }
  Rng rng(seed);
  std::vector<std::size_t> order(projects.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle_in_place(order, rng);

  std::vector<std::size_t> assignment(projects.size(), 0);
  if (projects.size() == n_folds) {
    for (std::size_t i = 0; i < order.size(); ++i) assignment[order[i]] = i;
  } else {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
    std::vector<std::size_t> load(n_folds, 0);
    for (std::size_t p : order) {
      const auto target = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
      assignment[p] = target;
      load[target] += counts[p];
    }
    improve(assignment, counts, n_folds);
  }

  FoldSplit split;
  split.n_folds = n_folds;
  for (std::size_t p = 0; p < projects.size(); ++p) split.project_fold[projects[p]] = assignment[p];
  for (const auto& r : records) split.record_fold[r.id] = split.project_fold.at(r.project);
  return split;
}

}  // namespace tdkit::dataset
