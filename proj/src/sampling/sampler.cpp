#include "tdkit/sampling/sampler.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tdkit/rng.hpp"

namespace tdkit::sampling {

std::string_view to_string(Branch b) { return b == Branch::MultiType ? "multi_type" : "uncertain"; }

CandidateSets build_candidates(std::span<const Triplet> triplets, const EntropyScorer& score) {
  CandidateSets out;
  std::vector<Candidate> rest;
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const Triplet& t = triplets[i];
    Candidate c{i, t.comment_id, t.function_id, Branch::MultiType, t.entropy, 0};
    if (t.predicted_set.size() > 1) {
      c.rank = out.multi_type.size();
      out.multi_type.push_back(std::move(c));
    } else {
      c.branch = Branch::Uncertain;
      c.entropy = score(t);
      rest.push_back(std::move(c));
    }
  }
  out.remainder_size = rest.size();
  std::stable_sort(rest.begin(), rest.end(), [](const Candidate& a, const Candidate& b) {
    if (a.entropy != b.entropy) return a.entropy > b.entropy;
    return a.comment_id < b.comment_id;
  });
  const std::size_t k = std::min(out.multi_type.size(), rest.size());
  rest.resize(k);
  for (std::size_t r = 0; r < k; ++r) rest[r].rank = r;
  out.uncertain = std::move(rest);
  return out;
}

double routed_entropy(const Triplet& t, const text::ModelSet& models) {
  if (!t.predicted_set.empty()) {
    const TDLabel head = t.predicted_set.front();
    auto it = models.types.find(head);
    if (it == models.types.end()) throw Error("no classifier for type " + std::string(to_string(head)));
    return text::entropy(it->second.head(t.comment_text));
  }
  if (!models.detector) throw Error("triplet " + t.comment_id + " has no predicted type and no detector is loaded");
  return text::entropy(models.detector->head(t.comment_text));
}

CandidateSets build_candidates(std::span<const Triplet> triplets, const text::ModelSet& models) {
  return build_candidates(triplets, [&models](const Triplet& t) { return routed_entropy(t, models); });
}

SamplingResult sample_functions(const CandidateSets& candidates, std::size_t n, std::uint64_t seed) {
  SamplingResult r;
  r.candidates = candidates;
  r.n = n;
  r.seed = seed;
  for (const auto* branch : {&candidates.multi_type, &candidates.uncertain}) {
    for (const auto& c : *branch) r.pool.push_back(c.function_id);
  }
  std::sort(r.pool.begin(), r.pool.end());
  r.pool.erase(std::unique(r.pool.begin(), r.pool.end()), r.pool.end());
  Rng rng(seed);
  r.selected_functions = sample_without_replacement(r.pool, n, rng);
  return r;
}

Triplet triplet_from_json(const json& j) {
  Triplet t;
  t.comment_id = j.at("comment_id").get<std::string>();
  t.function_id = j.at("function_id").get<std::string>();
  t.comment_text = j.value("comment", "");
  for (const auto& l : j.at("predicted_set")) {
    const TDLabel label = label_from_string(l.get<std::string>());
    if (!is_td_type(label)) throw Error("predicted_set may only contain TD types");
    t.predicted_set.push_back(label);
  }
  t.entropy = j.value("entropy", 0.0);
  return t;
}

json to_json(const Triplet& t) {
  json set = json::array();
  for (TDLabel l : t.predicted_set) set.push_back(to_string(l));
  return json{{"comment_id", t.comment_id},
              {"function_id", t.function_id},
              {"comment", t.comment_text},
              {"predicted_set", set},
              {"entropy", t.entropy}};
}

std::vector<Triplet> read_triplets(const std::filesystem::path& path) {
  std::vector<Triplet> out;
  for_each_jsonl(path, [&](const json& j, std::size_t) {
    if (j.contains("is_satd") && !j.at("is_satd").get<bool>()) return;
    out.push_back(triplet_from_json(j));
  });
  return out;
}

std::vector<json> sampling_records(const SamplingResult& r) {
  std::map<std::string, json> provenance;
  for (const auto* branch : {&r.candidates.multi_type, &r.candidates.uncertain}) {
    for (const auto& c : *branch) {
      provenance[c.function_id].push_back(json{{"comment_id", c.comment_id},
                                                {"branch", to_string(c.branch)},
                                                {"entropy", c.entropy},
                                                {"rank", c.rank}});
    }
  }
  std::vector<json> out;
  for (std::size_t i = 0; i < r.selected_functions.size(); ++i) {
    const auto& fid = r.selected_functions[i];
    out.push_back(json{{"function_id", fid},
                       {"selection_rank", i},
                       {"n", r.n},
                       {"seed", r.seed},
                       {"pool_size", r.pool.size()},
                       {"candidates", provenance[fid]}});
  }
  return out;
}

}  // namespace tdkit::sampling
