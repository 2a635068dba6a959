#include <doctest.h>

#include <array>
#include <cmath>
#include <filesystem>
#include <random>

#include "tdkit/common.hpp"
#include "tdkit/text/classifier.hpp"
#include "tdkit/text/clean.hpp"
#include "tdkit/text/synthetic.hpp"

using namespace tdkit;
using namespace tdkit::text;
namespace fs = std::filesystem;

TEST_CASE("clean_comment strips delimiters and gutters") {
  CHECK(clean_comment("// TODO: Fix this") == "todo: fix this");
  CHECK(clean_comment("/**\n * Returns the Value.\n * @return x\n */") == "returns the value. @return x");
  CHECK(clean_comment("/* a */") == "a");
  CHECK(clean_comment("// one\n// two") == "one two");
}

TEST_CASE("clean_comment is idempotent") {
  for (const char* raw : {"// TODO: Fix this", "/**\n * Doc\n */", "/* x\n   y */", "//   spaced   out  ", "plain"}) {
    const auto once = clean_comment(raw);
    CHECK(clean_comment(once) == once);
  }
}

TEST_CASE("word tokens and the tag baseline") {
  CHECK(word_tokens("todo: fix_me now2") == std::vector<std::string>{"todo", "fix_me", "now2"});
  CHECK(mat_baseline("todo: later"));
  CHECK(mat_baseline("a hack here"));
  CHECK_FALSE(mat_baseline("todolist is fine"));
}

TEST_CASE("tfidf idf matches the closed form") {
  std::vector<std::vector<std::string>> docs = {{"a", "b"}, {"a"}, {"c"}};
  FeatureConfig cfg;
  cfg.max_ngram = 1;
  auto v = TfidfVectorizer::fit(docs, cfg);
  CHECK(v.dim() == 3);
  auto x = v.transform({"a"});
  REQUIRE(x.nnz() == 1);
  CHECK(x.value[0] == doctest::Approx(1.0));  // L2-normalized
  // idf(a) = ln(4/3)+1, idf(b) = ln(4/2)+1
  auto ab = v.transform({"a", "b"});
  REQUIRE(ab.nnz() == 2);
  const double ia = std::log(4.0 / 3.0) + 1, ib = std::log(2.0) + 1;
  const double norm = std::sqrt(ia * ia + ib * ib);
  double got_a = 0, got_b = 0;
  for (std::size_t i = 0; i < ab.nnz(); ++i) {
    if (std::abs(ab.value[i] - ia / norm) < 1e-12) got_a = ab.value[i];
    if (std::abs(ab.value[i] - ib / norm) < 1e-12) got_b = ab.value[i];
  }
  CHECK(got_a > 0);
  CHECK(got_b > 0);
  CHECK(v.transform({"unseen"}).nnz() == 0);
}

TEST_CASE("entropy rejects bad distributions") {
  const std::array<double, 2> bad_sum{0.5, 0.6}, negative{1.5, -0.5};
  CHECK_THROWS_AS(entropy(bad_sum), Error);
  CHECK_THROWS_AS(entropy(negative), Error);
  const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
  CHECK(entropy(uniform) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("property: entropy bounded by ln k") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> p(2 + gen() % 6);
    double s = 0;
    for (auto& x : p) s += x = u(gen);
    for (auto& x : p) x /= s;
    const double h = entropy(p);
    CHECK(h >= 0);
    CHECK(h <= std::log(static_cast<double>(p.size())) + 1e-12);
  }
}

TEST_CASE("degenerate training sets are rejected") {
  std::vector<BinaryRecord> all_pos = {{"todo a", true}, {"todo b", true}};
  CHECK_THROWS_AS(train_binary(all_pos, {}), Error);
  std::vector<TypedRecord> no_test = {{"a", TDLabel::Design}, {"b", TDLabel::NonSatd}};
  CHECK_THROWS_AS(train_type_classifiers(no_test, {}), Error);
}

namespace {

ModelSet small_models() {
  auto corpus = synthetic_comments(300, 9);
  std::vector<BinaryRecord> bin;
  std::vector<TypedRecord> typed;
  for (const auto& s : corpus) {
    bin.push_back({s.text, is_td_type(s.label)});
    typed.push_back({s.text, s.label});
  }
  ModelSet m;
  m.detector = train_binary(bin, {});
  m.types = train_type_classifiers(typed, {});
  return m;
}

}  // namespace

TEST_CASE("prediction routing and ordering") {
  auto models = small_models();
  auto corpus = synthetic_comments(50, 10);
  for (const auto& s : corpus) {
    auto p = predict(models, s.text);
    for (std::size_t i = 1; i < p.predicted_set.size(); ++i) {
      CHECK(p.type_probability[index_of(p.predicted_set[i - 1])] >= p.type_probability[index_of(p.predicted_set[i])]);
    }
    for (TDLabel t : kTDTypes) {
      const bool member = std::find(p.predicted_set.begin(), p.predicted_set.end(), t) != p.predicted_set.end();
      CHECK(member == (p.type_probability[index_of(t)] > 0.5));
    }
    if (p.predicted_set.empty()) {
      CHECK_FALSE(p.entropy_head.type.has_value());
      CHECK(p.entropy == doctest::Approx(entropy(models.detector->head(s.text))));
    } else {
      CHECK(p.entropy_head.type == p.predicted_set.front());
      CHECK(p.entropy == doctest::Approx(entropy(p.head(p.predicted_set.front()))));
    }
  }
  ModelSet no_detector;
  no_detector.types = models.types;
  CHECK_THROWS_AS(predict(no_detector, "zzz qqq unrelated words", 0.999999), Error);
}

TEST_CASE("model save and load round trip") {
  auto models = small_models();
  const auto dir = fs::temp_directory_path() / "tdkit-test-models";
  fs::remove_all(dir);
  models.save_dir(dir);
  auto back = ModelSet::load_dir(dir);
  REQUIRE(back.detector.has_value());
  CHECK(back.detector->to_json() == models.detector->to_json());
  for (TDLabel t : kTDTypes) CHECK(back.types.at(t).to_json() == models.types.at(t).to_json());
  const std::string probe = "todo refactor this workaround";
  CHECK(back.detector->probability(probe) == models.detector->probability(probe));
  fs::remove_all(dir);
}

TEST_CASE("overlap report against counting") {
  using L = TDLabel;
  std::vector<std::vector<L>> sets = {{L::Design, L::Defect}, {L::Design}, {L::Defect, L::Design, L::Test}, {}};
  auto m = overlap_report(sets);
  CHECK(m.support[index_of(L::Design)] == 3);
  CHECK(m.support[index_of(L::Defect)] == 2);
  CHECK(m.ratio[index_of(L::Design)][index_of(L::Defect)] == doctest::Approx(2.0 / 3.0));
  CHECK(m.ratio[index_of(L::Defect)][index_of(L::Design)] == doctest::Approx(1.0));
  CHECK(m.ratio[index_of(L::Test)][index_of(L::Test)] == doctest::Approx(1.0));
  CHECK(m.support[index_of(L::Documentation)] == 0);
}

TEST_CASE("synthetic corpus is seeded and balanced") {
  auto a = synthetic_comments(1000, 1), b = synthetic_comments(1000, 1);
  REQUIRE(a.size() == 1000);
  std::size_t satd = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].text == b[i].text);
    satd += is_td_type(a[i].label);
  }
  CHECK(satd > 400);
  CHECK(satd < 600);
}
