#include <doctest.h>

#include <random>
#include <set>

#include "tdkit/rng.hpp"
#include "tdkit/sampling/sampler.hpp"

using namespace tdkit;
using namespace tdkit::sampling;

namespace {

Triplet make(std::string cid, std::string fid, std::vector<TDLabel> set, double h) {
  return Triplet{std::move(cid), std::move(fid), "", std::move(set), h};
}

double own_entropy(const Triplet& t) { return t.entropy; }

}  // namespace

TEST_CASE("Q and Q_hat on a hand example") {
  using L = TDLabel;
  std::vector<Triplet> ts = {
      make("c1", "f1", {L::Design, L::Defect}, 0.0),
      make("c2", "f2", {L::Design}, 0.6),
      make("c3", "f3", {}, 0.9),
      make("c4", "f1", {L::Test, L::Design}, 0.0),
      make("c5", "f4", {L::Defect}, 0.6),
      make("c0", "f5", {L::Defect}, 0.6),
  };
  auto sets = build_candidates(ts, own_entropy);
  REQUIRE(sets.multi_type.size() == 2);
  CHECK(sets.multi_type[0].comment_id == "c1");
  CHECK(sets.multi_type[1].comment_id == "c4");
  REQUIRE(sets.uncertain.size() == 2);
  CHECK(sets.uncertain[0].comment_id == "c3");
  CHECK(sets.uncertain[1].comment_id == "c0");  // tie at 0.6 broken by id
  CHECK(sets.remainder_size == 4);

  auto r = sample_functions(sets, 10, 1);
  CHECK(r.pool == std::vector<std::string>{"f1", "f3", "f5"});
  CHECK(r.selected_functions.size() == 3);
}

TEST_CASE("no multi-type predictions means an empty candidate set") {
  std::vector<Triplet> ts = {make("a", "f", {TDLabel::Design}, 0.5)};
  auto sets = build_candidates(ts, own_entropy);
  CHECK(sets.multi_type.empty());
  CHECK(sets.uncertain.empty());
  CHECK(sample_functions(sets, 5, 0).selected_functions.empty());
}

TEST_CASE("property: selection is a duplicate-free subset of the pool") {
  std::mt19937_64 gen(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<Triplet> ts;
    for (int i = 0; i < 60; ++i) {
      std::vector<TDLabel> set;
      for (std::size_t j = 0, k = gen() % 3; j < k; ++j) set.push_back(kTDTypes[j]);
      ts.push_back(make("c" + std::to_string(i), "f" + std::to_string(gen() % 25), set, (gen() % 100) / 100.0));
    }
    auto sets = build_candidates(ts, own_entropy);
    CHECK(sets.uncertain.size() == std::min(sets.multi_type.size(), sets.remainder_size));
    const std::size_t n = gen() % 15;
    auto r = sample_functions(sets, n, round);
    CHECK(r.selected_functions.size() == std::min(n, r.pool.size()));
    std::set<std::string> uniq(r.selected_functions.begin(), r.selected_functions.end());
    CHECK(uniq.size() == r.selected_functions.size());
    for (const auto& f : r.selected_functions) CHECK(std::binary_search(r.pool.begin(), r.pool.end(), f));
    CHECK(sample_functions(sets, n, round).selected_functions == r.selected_functions);
  }
}

TEST_CASE("uniform_index is unbiased enough") {
  Rng rng(5);
  std::array<int, 3> counts{};
  for (int i = 0; i < 30000; ++i) ++counts[uniform_index(rng, 3)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("sampling records carry provenance") {
  std::vector<Triplet> ts = {make("c1", "f1", {TDLabel::Design, TDLabel::Test}, 0), make("c2", "f2", {}, 0.3)};
  auto r = sample_functions(build_candidates(ts, own_entropy), 5, 2);
  auto recs = sampling_records(r);
  REQUIRE(recs.size() == 2);
  for (const auto& j : recs) {
    CHECK(j["candidates"].size() == 1);
    CHECK(j["pool_size"] == 2);
  }
}

TEST_CASE("triplet json round trip and filtering") {
  auto t = make("c", "f", {TDLabel::Defect}, 0.25);
  auto back = triplet_from_json(to_json(t));
  CHECK(back.comment_id == "c");
  CHECK(back.predicted_set == t.predicted_set);
  CHECK(back.entropy == 0.25);
  auto bad = to_json(t);
  bad["predicted_set"] = {"NON_SATD"};
  CHECK_THROWS_AS(triplet_from_json(bad), Error);
}
