// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tdkit/annotation/metrics.hpp"
#include "tdkit/dataset/builder.hpp"
#include "tdkit/dataset/folds.hpp"
#include "tdkit/fusion/evaluate.hpp"
#include "tdkit/fusion/fusion.hpp"
#include "tdkit/fusion/vote.hpp"
#include "tdkit/java/extract.hpp"
#include "tdkit/java/lexer.hpp"
#include "tdkit/jsonl.hpp"
#include "tdkit/pipeline/config.hpp"
#include "tdkit/pipeline/pipeline.hpp"
#include "tdkit/pipeline/schema.hpp"
#include "tdkit/sampling/sampler.hpp"
#include "tdkit/text/classifier.hpp"
#include "tdkit/text/synthetic.hpp"

namespace fs = std::filesystem;
using namespace tdkit;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kData = TDKIT_DATA_DIR;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failed checks; the first few are printed under the FAIL line.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

using Criterion = std::function<std::string(Check&)>;

java::CorpusExtraction extract_mini_corpus() {
  auto scan = java::scan_corpus(kData / "mini-corpus");
  return java::extract_corpus(scan.files);
}

// 1
std::string extraction_golden(Check& c) {
  const auto t0 = Clock::now();
  auto scan = java::scan_corpus(kData / "mini-corpus");
  auto corpus = java::extract_corpus(scan.files);
  std::string got;
  for (const auto& fn : corpus.functions) got += dump_line(java::to_json(fn)) + "\n";
  const double secs = seconds_since(t0);
  const std::string golden = read_text_file(kData / "golden/functions.jsonl");

  c.expect(scan.files.size() >= 20, "fewer than 20 Java files");
  c.expect(got == golden, "extraction differs from golden JSONL");
  c.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");

  const java::FunctionUnit* fig = nullptr;
  for (const auto& fn : corpus.functions)
    if (fn.name == "addModuleForVoiceCall") fig = &fn;
  c.expect(fig != nullptr, "grouping fixture function missing");
  if (fig) c.expect(fig->comments.size() == 2, "grouping fixture has " + std::to_string(fig->comments.size()) + " comments");

  bool saw_string_brace = false, saw_javadoc = false, saw_ctor = false, saw_anon = false;
  for (const auto& f : scan.files) {
    const auto& s = f.content();
    saw_string_brace |= s.find("\"{") != std::string::npos || s.find("}\"") != std::string::npos;
    saw_javadoc |= s.find("/**") != std::string::npos;
    saw_anon |= s.find("new Runnable() {") != std::string::npos || s.find("() {\n") != std::string::npos;
  }
  for (const auto& fn : corpus.functions) {
    auto slash = fn.path.find_last_of('/');
    auto stem = fn.path.substr(slash + 1, fn.path.size() - slash - 6);
    saw_ctor |= fn.name == stem;
  }
  c.expect(saw_string_brace && saw_javadoc && saw_ctor && saw_anon, "corpus lacks a required construct");

  std::ostringstream os;
  os << scan.files.size() << " files, " << corpus.functions.size() << " functions, " << secs << " s";
  return os.str();
}

// 2
std::string entropy_oracle(Check& c) {
  double worst = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double p = i / 100.0;
    const std::array<double, 2> d{p, 1.0 - p};
    const double closed = -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
    worst = std::max(worst, std::abs(text::entropy(d) - closed));
  }
  c.expect(worst < 1e-12, "grid error " + std::to_string(worst));
  const std::array<double, 2> half{0.5, 0.5}, certain{1.0, 0.0};
  c.expect(std::abs(text::entropy(half) - std::log(2.0)) < 1e-15, "entropy([.5,.5]) != ln 2");
  c.expect(text::entropy(certain) == 0.0, "entropy([1,0]) != 0");
  std::ostringstream os;
  os << "max grid error " << worst;
  return os.str();
}

// 3: brute-force Algorithm 1
struct OracleResult {
  std::vector<std::size_t> q, q_hat;
  std::vector<std::string> selection;
};

OracleResult algorithm1_oracle(const std::vector<sampling::Triplet>& ts, std::size_t n, std::uint64_t seed) {
  OracleResult r;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < ts.size(); ++i) (ts[i].predicted_set.size() > 1 ? r.q : rest).push_back(i);
  // An element makes Q_hat when fewer than |Q| remainder items outrank it.
  auto outranks = [&](std::size_t a, std::size_t b) {
    if (ts[a].entropy != ts[b].entropy) return ts[a].entropy > ts[b].entropy;
    if (ts[a].comment_id != ts[b].comment_id) return ts[a].comment_id < ts[b].comment_id;
    return a < b;
  };
  std::vector<std::pair<std::size_t, std::size_t>> ranked;
  for (std::size_t x : rest) {
    std::size_t above = 0;
    for (std::size_t y : rest)
      if (y != x && outranks(y, x)) ++above;
    if (above < r.q.size()) ranked.emplace_back(above, x);
  }
  std::sort(ranked.begin(), ranked.end());
  for (auto& [_, x] : ranked) r.q_hat.push_back(x);

  std::set<std::string> pool_set;
  for (auto i : r.q) pool_set.insert(ts[i].function_id);
  for (auto i : r.q_hat) pool_set.insert(ts[i].function_id);
  std::vector<std::string> pool(pool_set.begin(), pool_set.end());
  std::mt19937_64 gen(seed);
  const std::size_t k = std::min(n, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t bound = pool.size() - i;
    const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / bound) * bound;
    std::uint64_t x;
    // Accept x >= 2^64 mod bound, i.e. reject the biased low tail.
    const std::uint64_t low = (std::numeric_limits<std::uint64_t>::max() - limit + 1) % bound;
    do x = gen(); while (x < low);
    std::swap(pool[i], pool[i + x % bound]);
  }
  pool.resize(k);
  r.selection = pool;
  return r;
}

std::string algorithm1(Check& c) {
  std::size_t cases = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 gen(1000 + seed);
    std::vector<sampling::Triplet> ts;
    for (int i = 0; i < 200; ++i) {
      sampling::Triplet t;
      t.comment_id = "c" + std::to_string(gen() % 150);  // repeated ids exercise the tie rule
      t.function_id = "f" + std::to_string(gen() % 60);
      const auto k = gen() % 4;
      for (std::size_t j = 0; j < k && j < 3; ++j) t.predicted_set.push_back(kTDTypes[(gen() + j) % kNumTDTypes]);
      t.entropy = static_cast<double>(gen() % 12) / 16.0;  // coarse grid forces ties
      ts.push_back(t);
    }
    auto sets = sampling::build_candidates(ts, [](const sampling::Triplet& t) { return t.entropy; });
    auto res = sampling::sample_functions(sets, 10, seed);
    auto want = algorithm1_oracle(ts, 10, seed);
    std::vector<std::size_t> got_q, got_qh;
    for (auto& x : sets.multi_type) got_q.push_back(x.triplet_index);
    for (auto& x : sets.uncertain) got_qh.push_back(x.triplet_index);
    c.expect(got_q == want.q, "Q differs at seed " + std::to_string(seed));
    c.expect(got_qh == want.q_hat, "Q_hat differs at seed " + std::to_string(seed));
    c.expect(res.selected_functions == want.selection, "selection differs at seed " + std::to_string(seed));
    ++cases;
  }
  return std::to_string(cases) + " seeds x 200 triplets";
}

// 4
std::string kappa(Check& c) {
  auto k = annotation::cohen_kappa(annotation::ConfusionTable{{20, 5}, {10, 15}});
  c.expect(std::abs(k.kappa - 0.4) < 1e-9, "kappa " + std::to_string(k.kappa));
  c.expect(annotation::landis_koch_band(0.3700) == "Fair", "0.3700 band");
  c.expect(annotation::landis_koch_band(0.4529) == "Moderate", "0.4529 band");

  std::mt19937_64 gen(4);
  std::size_t violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t dim = 2 + gen() % 5;
    annotation::ConfusionTable table(dim, std::vector<double>(dim));
    double total = 0;
    for (auto& row : table)
      for (auto& cell : row) total += cell = static_cast<double>(gen() % 20);
    if (total == 0) table[0][0] = 1;
    auto r = annotation::cohen_kappa(table);
    // independent p_o
    double diag = 0, sum = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        sum += table[i][j];
        if (i == j) diag += table[i][j];
      }
    if (r.kappa > diag / sum + 1e-12) ++violations;
  }
  c.expect(violations == 0, std::to_string(violations) + " tables with kappa > p_o");
  std::ostringstream os;
  os << "kappa=" << k.kappa << ", 1000 random tables";
  return os.str();
}

// 5
double binary_f1(const std::vector<bool>& gold, const std::vector<bool>& pred) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] && pred[i]) ++tp;
    else if (!gold[i] && pred[i]) ++fp;
    else if (gold[i] && !pred[i]) ++fn;
  }
  return tp == 0 ? 0.0 : 2.0 * tp / (2.0 * tp + fp + fn);
}

std::string classifier_sanity(Check& c) {
  const auto t0 = Clock::now();
  auto corpus = text::synthetic_comments(1000, 5);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 gen(5);
  std::shuffle(order.begin(), order.end(), gen);
  const std::size_t n_train = 800;
  std::vector<text::BinaryRecord> bin;
  std::vector<text::TypedRecord> typed;
  for (std::size_t i = 0; i < n_train; ++i) {
    const auto& s = corpus[order[i]];
    bin.push_back({s.text, is_td_type(s.label)});
    typed.push_back({s.text, s.label});
  }
  text::ClassifierConfig cfg;
  auto det = text::train_binary(bin, cfg);
  auto types = text::train_type_classifiers(typed, cfg);

  std::vector<bool> gold, pred;
  for (std::size_t i = n_train; i < corpus.size(); ++i) {
    const auto& s = corpus[order[i]];
    gold.push_back(is_td_type(s.label));
    pred.push_back(det.probability(s.text) > 0.5);
  }
  const double f1_bin = binary_f1(gold, pred);
  c.expect(f1_bin >= 0.95, "binary F1 " + std::to_string(f1_bin));

  double worst_type = 1.0;
  for (TDLabel t : kTDTypes) {
    std::vector<bool> g, p;
    for (std::size_t i = n_train; i < corpus.size(); ++i) {
      const auto& s = corpus[order[i]];
      g.push_back(s.label == t);
      p.push_back(types.at(t).probability(s.text) > 0.5);
    }
    const double f = binary_f1(g, p);
    worst_type = std::min(worst_type, f);
    c.expect(f >= 0.90, std::string(to_string(t)) + " F1 " + std::to_string(f));
  }

  auto det2 = text::train_binary(bin, cfg);
  auto types2 = text::train_type_classifiers(typed, cfg);
  c.expect(det.to_json().dump() == det2.to_json().dump(), "detector retrain differs");
  for (TDLabel t : kTDTypes)
    c.expect(types.at(t).to_json().dump() == types2.at(t).to_json().dump(), "type retrain differs");
  const double secs = seconds_since(t0);
  c.expect(secs < 30.0, "runtime " + std::to_string(secs) + " s");

  std::ostringstream os;
  os << "binary F1=" << f1_bin << ", min type F1=" << worst_type << ", " << secs << " s";
  return os.str();
}

// 6
std::string codeatt(Check& c) {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> normal;
  auto random_matrix = [&](Eigen::Index r, Eigen::Index d) {
    Eigen::MatrixXd m(r, d);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = normal(gen);
    return m;
  };
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index m = 1 + gen() % 12, n = 1 + gen() % 12, d = 1 + gen() % 16;
    auto G = random_matrix(m, d), H = random_matrix(n, d);
    auto r = fusion::code_att(G, H);
    for (Eigen::Index i = 0; i < m; ++i) worst = std::max(worst, std::abs(r.attention.row(i).sum() - 1.0));
    c.expect(r.attention.rows() == m && r.attention.cols() == n, "attention shape");
    c.expect(r.fused.rows() == m && r.fused.cols() == d, "fused shape");
    c.expect(r.pooled.size() == d, "pooled shape");
    if (n == 1) {
      c.expect((r.attention.array() == 1.0).all(), "N=1 attention not all ones");
      for (Eigen::Index i = 0; i < m; ++i) c.expect(r.fused.row(i) == H.row(0), "N=1 fused row != H");
    }
  }
  c.expect(worst < 1e-9, "row sum error " + std::to_string(worst));

  // G = [[1,0],[0,2]], H = [[1,0],[0,1]]:
  // row 0 scores (1, 0) -> (e/(e+1), 1/(e+1)); row 1 scores (0, 2) -> (1/(1+e^2), e^2/(1+e^2)).
  Eigen::MatrixXd G(2, 2), H(2, 2);
  G << 1, 0, 0, 2;
  H << 1, 0, 0, 1;
  const double e = std::exp(1.0), e2 = std::exp(2.0);
  Eigen::MatrixXd A(2, 2);
  A << e / (e + 1), 1 / (e + 1), 1 / (1 + e2), e2 / (1 + e2);
  auto r = fusion::code_att(G, H);
  c.expect((r.attention - A).cwiseAbs().maxCoeff() < 1e-9, "fixture attention");
  c.expect((r.fused - A).cwiseAbs().maxCoeff() < 1e-9, "fixture fused");  // H = I
  Eigen::Vector2d pooled((A(0, 0) + A(1, 0)) / 2, (A(0, 1) + A(1, 1)) / 2);
  c.expect((r.pooled - pooled).cwiseAbs().maxCoeff() < 1e-9, "fixture pooled");

  std::ostringstream os;
  os << "100 shapes, max row-sum error " << worst;
  return os.str();
}

// 7
TDLabel vote_oracle(const std::vector<fusion::ScopeVote>& votes) {
  std::array<int, kNumLabels> count{};
  for (const auto& v : votes) ++count[index_of(v.label)];
  const int top = *std::max_element(count.begin(), count.end());
  std::vector<TDLabel> tied;
  for (TDLabel l : kAllLabels)
    if (count[index_of(l)] == top) tied.push_back(l);
  if (tied.size() == 1) return tied[0];
  bool all_probs = true;
  for (const auto& v : votes) all_probs &= v.probabilities.has_value();
  if (all_probs) {
    double best = -1;
    std::vector<TDLabel> best_set;
    for (TDLabel l : tied) {
      double s = 0;
      for (const auto& v : votes) s += (*v.probabilities)[index_of(l)];
      if (s > best + 1e-12) {
        best = s;
        best_set = {l};
      } else if (std::abs(s - best) <= 1e-12) {
        best_set.push_back(l);
      }
    }
    tied = best_set;
    if (tied.size() == 1) return tied[0];
  }
  for (const auto& v : votes)
    if (v.scope == dataset::ContextScope::Full() && std::find(tied.begin(), tied.end(), v.label) != tied.end())
      return v.label;
  return tied.front();
}

std::string ensemble(Check& c) {
  const std::array<dataset::ContextScope, 4> scopes = {dataset::ContextScope::Lines(2), dataset::ContextScope::Lines(10),
                                                       dataset::ContextScope::Lines(20), dataset::ContextScope::Full()};
  std::size_t n = 0, mismatches = 0;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int with_probs = 0; with_probs < 2; ++with_probs) {
    for (std::size_t code = 0; code < 1296; ++code) {
      std::vector<fusion::ScopeVote> votes;
      std::size_t x = code;
      for (const auto& s : scopes) {
        fusion::ScopeVote v{s, kAllLabels[x % 6], std::nullopt};
        x /= 6;
        if (with_probs) {
          std::array<double, kNumLabels> p{};
          double sum = 0;
          for (auto& q : p) sum += q = u(gen);
          for (auto& q : p) q /= sum;
          v.probabilities = p;
        }
        votes.push_back(v);
      }
      if (fusion::majority_vote(votes) != vote_oracle(votes)) ++mismatches;
      ++n;
    }
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  return std::to_string(n) + " assignments (with and without probabilities)";
}

// 8
std::string dataset_builders(Check& c) {
  auto corpus = extract_mini_corpus();
  std::size_t leaked = 0;
  for (const auto& fn : corpus.functions) {
    const auto stripped = dataset::strip_comments(fn);
    for (const auto& t : java::lex_java(stripped).tokens)
      if (java::is_comment(t.kind)) ++leaked;
  }
  c.expect(leaked == 0, std::to_string(leaked) + " comment tokens after stripping");

  // Union rule against recomputation from the finals.
  auto finals = dataset::read_finals(kData / "mini-finals.jsonl");
  auto code = dataset::build_code_dataset(finals, corpus.functions);
  std::map<std::string, TDLabel> label_of;
  for (const auto& f : finals) label_of[f.comment_id] = f.label;
  std::size_t expected_records = 0;
  std::map<std::string, std::vector<TDLabel>> got;
  for (const auto& s : code) got[s.id] = s.labels;
  for (const auto& fn : corpus.functions) {
    bool any = false;
    std::vector<TDLabel> want;
    for (TDLabel t : kCodeTDTypes) {
      for (const auto& cm : fn.comments) {
        auto it = label_of.find(cm.id);
        if (it == label_of.end()) continue;
        any = true;
        if (it->second == t) {
          want.push_back(t);
          break;
        }
      }
    }
    for (const auto& cm : fn.comments) any |= label_of.count(cm.id) > 0;
    if (!any) continue;
    ++expected_records;
    c.expect(got.count(fn.id) && got[fn.id] == want, "union rule mismatch for " + fn.name);
  }
  c.expect(code.size() == expected_records, "code dataset size");

  auto comments = dataset::build_comment_dataset(finals, corpus.functions, dataset::ContextScope::Full());
  auto doubled = comments;
  doubled.insert(doubled.end(), comments.begin(), comments.end());
  auto once = dataset::dedup(doubled);
  auto twice = dataset::dedup(once);
  c.expect(once.size() == twice.size(), "dedup not idempotent");
  for (std::size_t i = 0; i < once.size() && i < twice.size(); ++i)
    c.expect(once[i].id == twice[i].id, "dedup changed order");
  c.expect(once.size() <= comments.size(), "dedup kept duplicates");

  // 10-project fixture folds.
  std::vector<dataset::FoldRecord> recs;
  for (int p = 0; p < 10; ++p)
    for (int i = 0; i < 3 + p * 2; ++i) recs.push_back({"r" + std::to_string(p) + "-" + std::to_string(i), "p" + std::to_string(p)});
  auto split = dataset::cross_project_folds(recs, 5, 8);
  c.expect(split.project_fold.size() == 10, "not every project assigned");
  std::set<std::size_t> used;
  for (auto& [_, f] : split.project_fold) used.insert(f);
  c.expect(used.size() == 5, "empty fold");
  for (const auto& r : recs) c.expect(split.record_fold.at(r.id) == split.project_fold.at(r.project), "record leaks");

  // 20-example EM / example-F1 fixture; hand-derived per-example F1 values.
  using L = TDLabel;
  const L D = L::Design, I = L::Implementation, F = L::Defect, T = L::Test;
  std::vector<std::vector<L>> gold = {{D, T}, {D}, {I}, {F}, {T}, {}, {}, {D, I}, {D, I, F}, {F, T},
                                      {D}, {I}, {I, F}, {T}, {D, T}, {F}, {}, {D, I, F, T}, {I}, {D}};
  std::vector<std::vector<L>> pred = {{D}, {D}, {I}, {F}, {}, {}, {D}, {D, I}, {D}, {F, T},
                                      {I}, {I, F}, {I, F}, {T}, {D, T}, {F}, {}, {D, I}, {I}, {D}};
  // EM: indexes 1,2,3,5,7,9,12,13,14,15,16,18,19 -> 13/20.
  const std::vector<double> per = {2.0 / 3, 1, 1, 1, 0, 1, 0, 1, 0.5, 1, 0, 2.0 / 3, 1, 1, 1, 1, 1, 2.0 / 3, 1, 1};
  const double want_f1 = std::accumulate(per.begin(), per.end(), 0.0) / 20.0;
  auto rep = fusion::evaluate_multilabel(gold, pred);
  c.expect(std::abs(*rep.exact_match - 13.0 / 20.0) < 1e-12, "EM " + std::to_string(*rep.exact_match));
  c.expect(std::abs(*rep.example_f1 - want_f1) < 1e-12, "example F1 " + std::to_string(*rep.example_f1));
  const double single = fusion::example_f1({D, T}, {D});
  c.expect(std::abs(single - 0.667) < 5e-4, "{DESIGN,TEST} vs {DESIGN} = " + std::to_string(single));

  std::ostringstream os;
  os << corpus.functions.size() << " functions stripped, EM=" << *rep.exact_match << ", F1=" << *rep.example_f1;
  return os.str();
}

// 9
std::string end_to_end(Check& c) {
  auto cfg = pipeline::load_config(kData / "mini.cfg");
  cfg.output = fs::temp_directory_path() / "tdkit-acceptance-run";
  fs::remove_all(cfg.output);
  const auto t0 = Clock::now();
  auto result = pipeline::run_pipeline(cfg);
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");

  std::set<std::string> kinds;
  for (const auto& a : result.artifacts) {
    kinds.insert(a.kind);
    try {
      pipeline::validate_artifact(a.path, a.kind);
    } catch (const std::exception& e) {
      c.expect(false, e.what());
    }
  }
  for (const char* k : {"functions", "model", "predictions", "sample", "finals", "agreement", "comment_dataset",
                        "code_dataset", "folds", "label_predictions", "set_predictions", "report"})
    c.expect(kinds.count(k) > 0, std::string("no ") + k + " artifact");
  auto sample = read_jsonl(cfg.output / "sample.jsonl");
  c.expect(sample.size() == 10, "sample size " + std::to_string(sample.size()));
  std::ostringstream os;
  os << result.artifacts.size() << " artifacts valid, " << secs << " s";
  fs::remove_all(cfg.output);
  return os.str();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"extraction golden suite", extraction_golden},
      {"entropy closed form", entropy_oracle},
      {"candidate selection oracle", algorithm1},
      {"kappa and bands", kappa},
      {"classifier sanity", classifier_sanity},
      {"attention fusion", codeatt},
      {"ensemble vote enumeration", ensemble},
      {"dataset builders", dataset_builders},
      {"end-to-end pipeline", end_to_end},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    std::string detail;
    try {
      detail = criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s: %s\n", c.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), detail.c_str());
    for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k) std::printf("    %s\n", c.failures[k].c_str());
    failed += c.ok() ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
