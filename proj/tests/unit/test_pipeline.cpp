#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "tdkit/jsonl.hpp"
#include "tdkit/pipeline/config.hpp"
#include "tdkit/pipeline/pipeline.hpp"
#include "tdkit/pipeline/schema.hpp"

using namespace tdkit;
using namespace tdkit::pipeline;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TDKIT_DATA_DIR;

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

// Artifact text with the "created" stamp blanked out.
std::string without_created(const fs::path& p) {
  std::string s = read_text_file(p);
  const std::string key = "\"created\":\"";
  for (auto at = s.find(key); at != std::string::npos; at = s.find(key, at + 1)) {
    const auto end = s.find('"', at + key.size());
    s.erase(at + key.size(), end - at - key.size());
  }
  return s;
}

}  // namespace

TEST_CASE("config parsing") {
  auto cfg = parse_config("[paths]\ncorpus = c\noutput = o\n[seeds]\nglobal = 5\nsample = 9\n", "/base");
  CHECK(cfg.corpus == fs::path("/base/c"));
  CHECK(cfg.seed("sample") == 9);
  CHECK(cfg.seed("train") == 5);
  CHECK(cfg.header("functions", "extract").seed == 5);
  CHECK(cfg.hash().size() == 16);

  auto other_out = parse_config("[paths]\ncorpus = c\noutput = elsewhere\n[seeds]\nglobal = 5\nsample = 9\n", "/base");
  CHECK(other_out.hash() == cfg.hash());
  auto other_seed = parse_config("[paths]\ncorpus = c\noutput = o\n[seeds]\nglobal = 6\nsample = 9\n", "/base");
  CHECK(other_seed.hash() != cfg.hash());
}

TEST_CASE("config errors") {
  CHECK(error_of([] { parse_config("[paths]\noutput = o\n", "/"); }).find("corpus") != std::string::npos);
  CHECK(error_of([] { parse_config("[paths]\ncorpus = c\noutput = o\n[bogus]\nx = 1\n", "/"); }).find("bogus") !=
        std::string::npos);
  CHECK(error_of([] { parse_config("[paths]\ncorpus = c\noutput = o\nextra = 1\n", "/"); }).find("extra") !=
        std::string::npos);
  CHECK_FALSE(error_of([] { parse_config("[paths]\ncorpus = c\noutput = o\n[annotation]\nannotators = solo\n", "/"); }).empty());
  CHECK_FALSE(error_of([] { parse_config("[paths]\ncorpus = c\noutput = o\n[classifier]\nthreshold = 1.5\n", "/"); }).empty());
  CHECK_THROWS(load_config(kData / "missing.cfg"));
}

TEST_CASE("schema validation names the failing field and line") {
  json good_fn = json::parse(read_text_file(kData / "golden/functions.jsonl").substr(
      0, read_text_file(kData / "golden/functions.jsonl").find('\n')));
  validate_record("functions", good_fn);
  auto broken = good_fn;
  broken.erase("signature");
  CHECK(error_of([&] { validate_record("functions", broken); }).find("signature") != std::string::npos);

  json bad_pred = {{"id", "x"}, {"fold", 0}, {"scope", "2"}, {"label", "DESIGN"},
                   {"probabilities", {0.5, 0.5, 0.5, 0, 0, 0}}};
  CHECK_FALSE(error_of([&] { validate_record("label_predictions", bad_pred); }).empty());

  const auto path = fs::temp_directory_path() / "tdkit-test-schema.jsonl";
  ArtifactHeader h{"functions", "abc", 1, std::nullopt};
  write_jsonl(path, {good_fn, broken}, h);
  const auto msg = error_of([&] { validate_artifact(path, "functions"); });
  CHECK(msg.find(":3:") != std::string::npos);
  write_jsonl(path, {good_fn});
  CHECK(error_of([&] { validate_artifact(path, "functions"); }).find("meta header") != std::string::npos);
  fs::remove(path);
  CHECK(is_jsonl_kind("finals"));
  CHECK_FALSE(is_jsonl_kind("report"));
}

TEST_CASE("pipeline runs and is deterministic across output directories") {
  auto cfg = load_config(kData / "mini.cfg");
  const auto a_dir = fs::temp_directory_path() / "tdkit-test-run-a";
  const auto b_dir = fs::temp_directory_path() / "tdkit-test-run-b";
  fs::remove_all(a_dir);
  fs::remove_all(b_dir);
  cfg.output = a_dir;
  auto a = run_pipeline(cfg);
  cfg.output = b_dir;
  auto b = run_pipeline(cfg);
  REQUIRE(a.artifacts.size() == b.artifacts.size());
  std::set<std::string> kinds;
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
    const auto rel = fs::relative(a.artifacts[i].path, a_dir);
    CHECK(rel == fs::relative(b.artifacts[i].path, b_dir));
    CHECK_MESSAGE(without_created(a.artifacts[i].path) == without_created(b.artifacts[i].path), rel.string());
    kinds.insert(a.artifacts[i].kind);
  }
  CHECK(kinds.count("report") == 1);
  a.summary.erase("seconds");
  b.summary.erase("seconds");
  CHECK(a.summary.dump() == b.summary.dump());

  auto finals = read_jsonl(a_dir / "finals.jsonl");
  auto sample = read_jsonl(a_dir / "sample.jsonl");
  CHECK(sample.size() == 10);
  CHECK_FALSE(finals.empty());
  auto agreement = read_json_file(a_dir / "agreement.json");
  CHECK(agreement["kappa"].get<double>() <= agreement["observed"].get<double>() + 1e-12);
  fs::remove_all(a_dir);
  fs::remove_all(b_dir);
}

TEST_CASE("prediction records agree with the threshold") {
  auto records = load_training_records(std::nullopt, 300, 2);
  text::ModelSet models;
  models.detector = train_detector(records, {});
  models.types = train_types(records, {});
  auto fns = java::extract_corpus(java::scan_corpus(kData / "mini-corpus").files).functions;
  auto preds = prediction_records(fns, models, 0.5);
  std::size_t n_comments = 0;
  for (const auto& f : fns) n_comments += f.comments.size();
  CHECK(preds.size() == n_comments);
  for (const auto& p : preds) {
    validate_record("predictions", p);
    CHECK(p["is_satd"].get<bool>() == (p["satd_probability"].get<double>() >= 0.5));
  }
}
