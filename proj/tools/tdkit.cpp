// tdkit command line: one subcommand per pipeline stage.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "tdkit/annotation/service.hpp"
#include "tdkit/annotation/store.hpp"
#include "tdkit/annotation/task.hpp"
#include "tdkit/dataset/builder.hpp"
#include "tdkit/dataset/folds.hpp"
#include "tdkit/dataset/stats.hpp"
#include "tdkit/fusion/models.hpp"
#include "tdkit/java/source.hpp"
#include "tdkit/pipeline/config.hpp"
#include "tdkit/pipeline/pipeline.hpp"
#include "tdkit/pipeline/schema.hpp"
#include "tdkit/sampling/sampler.hpp"

namespace fs = std::filesystem;
using namespace tdkit;

namespace {

// Provenance for artifacts written outside `pipeline`: taken from --config
// when given, else from the command line itself.
struct Provenance {
  std::optional<pipeline::PipelineConfig> cfg;
  std::string argv_hash;

  ArtifactHeader header(const std::string& kind, const std::string& stage, std::optional<std::uint64_t> seed = {}) const {
    if (cfg) {
      auto h = cfg->header(kind, stage);
      if (seed) h.seed = *seed;
      return h;
    }
    ArtifactHeader h;
    h.kind = kind;
    h.config_hash = argv_hash;
    h.seed = seed.value_or(0);
    h.created = utc_timestamp();
    return h;
  }
};

void require_file(const fs::path& p) {
  if (!fs::exists(p)) throw NotFoundError("input not found: " + p.string());
}

void write_records(const fs::path& out, const std::vector<json>& recs, const ArtifactHeader& h) {
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_jsonl(out, recs, h);
  pipeline::validate_artifact(out, h.kind);
  spdlog::info("wrote {} records to {}", recs.size(), out.string());
}

void write_doc(const fs::path& out, json body, const ArtifactHeader& h) {
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  body[kMetaKey] = h.to_json().at(kMetaKey);
  write_json_file(out, body);
  pipeline::validate_artifact(out, h.kind);
  spdlog::info("wrote {}", out.string());
}

template <typename T>
std::vector<json> to_records(const std::vector<T>& xs) {
  std::vector<json> out;
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

std::vector<json> dataset_records(const std::vector<dataset::CommentSample>& xs) {
  std::vector<json> out;
  for (const auto& x : xs) out.push_back(dataset::to_json(x));
  return out;
}

std::vector<json> dataset_records(const std::vector<dataset::CodeSample>& xs) {
  std::vector<json> out;
  for (const auto& x : xs) out.push_back(dataset::to_json(x));
  return out;
}

// Reads a JSONL dataset file and tells comment records from code records.
bool is_code_dataset(const fs::path& p) {
  const auto h = read_header(p);
  if (h) return h->kind == "code_dataset";
  const auto recs = read_jsonl(p);
  return !recs.empty() && recs.front().contains("labels");
}

annotation::AnnotationService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

void set_log_level() {
  spdlog::set_default_logger(spdlog::stderr_color_mt("tdkit"));
  spdlog::set_pattern("[%l] %v");
  if (const char* lvl = std::getenv("TDKIT_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(lvl));
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

}  // namespace

int main(int argc, char** argv) {
  set_log_level();
  CLI::App app{"tdkit: self-admitted technical debt toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));
  std::string config_path;
  app.add_option("--config", config_path, "pipeline config (seeds and header provenance)");

  Provenance prov;
  {
    std::string joined;
    for (int i = 1; i < argc; ++i) joined += std::string(argv[i]) + "\x1f";
    prov.argv_hash = Fnv1a().update(joined).hex();
  }
  auto load_cfg = [&] {
    if (!config_path.empty() && !prov.cfg) {
      require_file(config_path);
      prov.cfg = pipeline::load_config(config_path);
    }
  };
  auto seed_of = [&](const std::string& stage, std::optional<std::uint64_t> flag) -> std::uint64_t {
    if (flag) return *flag;
    return prov.cfg ? prov.cfg->seed(stage) : 13;
  };

  // extract
  auto* extract = app.add_subcommand("extract", "extract functions and grouped comments from a Java corpus");
  std::string corpus, out;
  extract->add_option("--corpus", corpus, "corpus root")->required();
  extract->add_option("--out", out, "functions JSONL")->required();
  extract->callback([&] {
    load_cfg();
    const auto scan = java::scan_corpus(corpus);
    const auto ex = java::extract_corpus(scan.files);
    for (const auto& d : ex.diagnostics) spdlog::warn("{}", d);
    for (const auto& s : scan.skipped) spdlog::warn("skipped {}: {}", s.path, s.reason);
    std::vector<json> recs;
    for (const auto& fn : ex.functions) recs.push_back(java::to_json(fn));
    write_records(out, recs, prov.header("functions", "extract"));
  });

  // training subcommands
  std::string train_csv;
  std::size_t synthetic_n = 1000;
  std::optional<std::uint64_t> seed_flag;
  auto train_inputs = [&](CLI::App* sub) {
    sub->add_option("--train", train_csv, "labelled CSV (project, comment, classification)");
    sub->add_option("--synthetic", synthetic_n, "synthetic corpus size when no CSV is given");
    sub->add_option("--seed", seed_flag, "seed");
  };
  auto classifier_cfg = [&] {
    text::ClassifierConfig c = prov.cfg ? prov.cfg->classifier : text::ClassifierConfig{};
    c.seed = seed_of("train", seed_flag);
    return c;
  };
  auto training = [&] {
    std::optional<fs::path> csv;
    if (!train_csv.empty()) {
      require_file(train_csv);
      csv = train_csv;
    }
    return pipeline::load_training_records(csv, synthetic_n, seed_of("train", seed_flag));
  };
  auto* train_det = app.add_subcommand("train-detector", "train the binary SATD detector");
  train_inputs(train_det);
  train_det->add_option("--out", out, "model JSON")->required();
  train_det->callback([&] {
    load_cfg();
    const auto cfg = classifier_cfg();
    auto m = pipeline::train_detector(training(), cfg);
    m.meta = prov.header("model", "train", cfg.seed).to_json().at(kMetaKey);
    if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
    m.save(out);
    pipeline::validate_artifact(out, "model");
    spdlog::info("wrote {}", out);
  });
  std::string models_dir;
  auto* train_types = app.add_subcommand("train-types", "train one-vs-rest TD type classifiers");
  train_inputs(train_types);
  train_types->add_option("--out-dir", models_dir, "model directory")->required();
  train_types->callback([&] {
    load_cfg();
    const auto cfg = classifier_cfg();
    text::ModelSet ms;
    ms.types = pipeline::train_types(training(), cfg);
    const json meta = prov.header("model", "train", cfg.seed).to_json().at(kMetaKey);
    for (auto& [l, m] : ms.types) m.meta = meta;
    ms.save_dir(models_dir);
    spdlog::info("wrote {} type models to {}", ms.types.size(), models_dir);
  });

  // predict
  std::string functions_path;
  double threshold = text::kMembershipThreshold;
  auto* predict = app.add_subcommand("predict", "score every extracted comment");
  predict->add_option("--functions", functions_path, "functions JSONL")->required();
  predict->add_option("--models", models_dir, "directory with detector.json and type-*.json")->required();
  predict->add_option("--threshold", threshold, "type membership threshold");
  predict->add_option("--out", out, "predictions JSONL")->required();
  predict->callback([&] {
    load_cfg();
    require_file(functions_path);
    const auto fns = java::read_functions(functions_path);
    const auto ms = text::ModelSet::load_dir(models_dir);
    write_records(out, pipeline::prediction_records(fns, ms, threshold), prov.header("predictions", "predict"));
  });

  // sample
  std::string predictions_path;
  std::size_t n = 10;
  auto* sample = app.add_subcommand("sample", "entropy-based candidate selection and function sampling");
  sample->add_option("--predictions", predictions_path, "predictions JSONL")->required();
  sample->add_option("--models", models_dir, "model directory (rescoring heads)")->required();
  sample->add_option("--n", n, "functions to sample");
  sample->add_option("--seed", seed_flag, "seed");
  sample->add_option("--out", out, "sample JSONL")->required();
  sample->callback([&] {
    load_cfg();
    require_file(predictions_path);
    const auto triplets = sampling::read_triplets(predictions_path);
    const auto ms = text::ModelSet::load_dir(models_dir);
    const auto seed = seed_of("sample", seed_flag);
    const auto r = sampling::sample_functions(sampling::build_candidates(triplets, ms), n, seed);
    write_records(out, sampling::sampling_records(r), prov.header("sample", "sample", seed));
  });

  // annotate-serve
  std::string store_dir, assign_from, bind = "127.0.0.1:8080";
  std::vector<std::string> annotators;
  auto* serve = app.add_subcommand("annotate-serve", "serve the annotation HTTP API");
  serve->add_option("--store", store_dir, "store directory")->required();
  serve->add_option("--functions", functions_path, "functions JSONL for task context");
  serve->add_option("--assign", assign_from, "sample JSONL; creates tasks for its functions' comments");
  serve->add_option("--annotators", annotators, "annotator ids")->delimiter(',');
  serve->add_option("--bind", bind, "host:port");
  serve->add_option("--seed", seed_flag, "assignment seed");
  serve->callback([&] {
    load_cfg();
    std::map<std::string, json> context;
    std::map<std::string, std::vector<std::string>> comments_of;
    if (!functions_path.empty()) {
      require_file(functions_path);
      for (const auto& fn : java::read_functions(functions_path)) {
        for (const auto& c : fn.comments) {
          comments_of[fn.id].push_back(c.id);
          json scopes = json::object();
          for (const char* s : {"2", "10", "20", "full"}) {
            scopes[s] = dataset::extract_context(c, fn, dataset::ContextScope::parse(s));
          }
          context[c.id] = {{"comment", c.raw_text},     {"function_id", fn.id}, {"function", fn.body_text},
                           {"start_line", c.start_line}, {"end_line", c.end_line}, {"scopes", scopes}};
        }
      }
    }
    annotation::AnnotationStore store(store_dir);
    if (!assign_from.empty()) {
      require_file(assign_from);
      if (functions_path.empty()) throw Error("--assign needs --functions");
      std::vector<std::string> ids;
      for (const auto& r : read_jsonl(assign_from)) {
        for (const auto& c : comments_of[r.at("function_id").get<std::string>()]) ids.push_back(c);
      }
      if (annotators.size() < 2) annotators = prov.cfg ? prov.cfg->annotators : std::vector<std::string>{"ann1", "ann2"};
      annotation::AssignOptions opts;
      opts.first_id = store.list().size() + 1;
      store.add_tasks(annotation::assign(ids, annotators, seed_of("assign", seed_flag), opts));
      spdlog::info("assigned {} tasks", ids.size());
    }
    annotation::AnnotationService service(store, [&](const std::string& id) -> std::optional<json> {
      auto it = context.find(id);
      if (it == context.end()) return std::nullopt;
      return it->second;
    });
    const auto colon = bind.rfind(':');
    if (colon == std::string::npos) throw Error("--bind must be host:port");
    const int port = service.bind(bind.substr(0, colon), std::stoi(bind.substr(colon + 1)));
    spdlog::info("listening on {}:{}", bind.substr(0, colon), port);
    g_service = &service;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    service.serve();
    g_service = nullptr;
  });

  // export-finals
  auto* export_finals = app.add_subcommand("export-finals", "write AGREED/AUDITED labels as JSONL");
  export_finals->add_option("--store", store_dir, "store directory")->required();
  export_finals->add_option("--out", out, "finals JSONL")->required();
  export_finals->callback([&] {
    load_cfg();
    if (!fs::is_directory(store_dir)) throw NotFoundError("store not found: " + store_dir);
    annotation::AnnotationStore store(store_dir);
    write_records(out, store.export_finals(), prov.header("finals", "assign"));
  });

  // build
  std::string finals_path, scope = "full", window = "following";
  bool code_mode = false;
  auto* build = app.add_subcommand("build", "build the comment (or code) dataset from final labels");
  build->add_option("--finals", finals_path, "finals JSONL")->required();
  build->add_option("--functions", functions_path, "functions JSONL")->required();
  build->add_option("--scope", scope, "2, 10, 20, full");
  build->add_option("--window", window, "following or symmetric");
  build->add_flag("--code", code_mode, "build the code multi-label dataset instead");
  build->add_option("--out", out, "dataset JSONL")->required();
  build->callback([&] {
    load_cfg();
    require_file(finals_path);
    require_file(functions_path);
    const auto finals = dataset::read_finals(finals_path);
    const auto fns = java::read_functions(functions_path);
    if (code_mode) {
      write_records(out, dataset_records(dataset::build_code_dataset(finals, fns)), prov.header("code_dataset", "assign"));
      return;
    }
    if (window != "following" && window != "symmetric") throw Error("--window must be following or symmetric");
    const auto mode = window == "following" ? dataset::WindowMode::Following : dataset::WindowMode::Symmetric;
    const auto ds = dataset::build_comment_dataset(finals, fns, dataset::ContextScope::parse(scope), mode);
    write_records(out, dataset_records(ds), prov.header("comment_dataset", "assign"));
  });

  // dedup
  std::string in;
  auto* dedup = app.add_subcommand("dedup", "drop duplicate records (first occurrence wins)");
  dedup->add_option("--in", in, "dataset JSONL")->required();
  dedup->add_option("--out", out, "dataset JSONL")->required();
  dedup->callback([&] {
    load_cfg();
    require_file(in);
    if (is_code_dataset(in)) {
      auto ds = dataset::dedup(dataset::read_code_samples(in));
      write_records(out, dataset_records(ds), prov.header("code_dataset", "assign"));
    } else {
      auto ds = dataset::dedup(dataset::read_comment_samples(in));
      write_records(out, dataset_records(ds), prov.header("comment_dataset", "assign"));
    }
  });

  // folds
  std::size_t n_folds = 5;
  auto* folds = app.add_subcommand("folds", "cross-project fold assignment");
  folds->add_option("--in", in, "dataset JSONL")->required();
  folds->add_option("--n", n_folds, "number of folds");
  folds->add_option("--seed", seed_flag, "seed");
  folds->add_option("--out", out, "folds JSON")->required();
  folds->callback([&] {
    load_cfg();
    require_file(in);
    std::vector<dataset::FoldRecord> recs;
    for (const auto& j : read_jsonl(in)) recs.push_back({j.at("id").get<std::string>(), j.at("project").get<std::string>()});
    const auto seed = seed_of("folds", seed_flag);
    const auto split = dataset::cross_project_folds(recs, n_folds, seed);
    write_doc(out, split.to_json(), prov.header("folds", "folds", seed));
  });

  // fuse
  std::string method = "strconcat", folds_path;
  auto* fuse = app.add_subcommand("fuse", "cross-project comment+code classification for one scope");
  fuse->add_option("--method", method, "strconcat or codeatt");
  fuse->add_option("--scope", scope, "scope label recorded on predictions (dataset decides the context)");
  fuse->add_option("--dataset", in, "dataset JSONL (comment or code)")->required();
  fuse->add_option("--folds", folds_path, "folds JSON")->required();
  fuse->add_option("--seed", seed_flag, "seed");
  fuse->add_option("--out", out, "predictions JSONL")->required();
  fuse->callback([&] {
    load_cfg();
    require_file(in);
    require_file(folds_path);
    const auto split = dataset::FoldSplit::from_json(read_json_file(folds_path));
    fusion::FusionConfig fc = prov.cfg ? prov.cfg->fusion : fusion::FusionConfig{};
    fc.method = fusion::method_from_string(method);
    fc.seed = seed_of("fuse", seed_flag);
    if (is_code_dataset(in)) {
      const auto preds = fusion::cross_fold_predict_code(dataset::read_code_samples(in), split, fc);
      write_records(out, to_records(preds), prov.header("set_predictions", "fuse", fc.seed));
      return;
    }
    auto samples = dataset::read_comment_samples(in);
    for (auto& s : samples) {
      if (s.scope.empty()) s.scope = scope;
    }
    const auto preds = fusion::cross_fold_predict(samples, split, fc);
    write_records(out, to_records(preds), prov.header("label_predictions", "fuse", fc.seed));
  });

  // ensemble
  std::vector<std::string> inputs;
  std::string scopes_flag;
  auto* ens = app.add_subcommand("ensemble", "majority vote over per-scope predictions");
  ens->add_option("--inputs", inputs, "per-scope prediction files")->required()->delimiter(',');
  ens->add_option("--scopes", scopes_flag, "expected scope list, e.g. 2,10,20,full");
  ens->add_option("--out", out, "predictions JSONL")->required();
  ens->callback([&] {
    load_cfg();
    std::vector<std::vector<fusion::LabelPrediction>> per_scope;
    std::set<std::string> seen;
    for (const auto& p : inputs) {
      require_file(p);
      std::vector<fusion::LabelPrediction> v;
      for (const auto& j : read_jsonl(p)) v.push_back(fusion::label_prediction_from_json(j));
      if (!v.empty()) seen.insert(dataset::ContextScope::parse(v.front().scope).name());
      per_scope.push_back(std::move(v));
    }
    if (!scopes_flag.empty()) {
      std::set<std::string> want;
      std::stringstream ss(scopes_flag);
      for (std::string s; std::getline(ss, s, ',');) want.insert(dataset::ContextScope::parse(s).name());
      if (want != seen) throw Error("--scopes does not match the scopes found in --inputs");
    }
    write_records(out, to_records(fusion::ensemble(per_scope)), prov.header("label_predictions", "fuse"));
  });

  // evaluate
  std::string task, gold, pred, report;
  auto* evaluate = app.add_subcommand("evaluate", "score predictions against gold labels");
  evaluate->add_option("--task", task, "identification, classification, detection, code_multilabel")->required();
  evaluate->add_option("--gold", gold, "gold dataset JSONL")->required();
  evaluate->add_option("--pred", pred, "predictions JSONL")->required();
  evaluate->add_option("--report", report, "report JSON")->required();
  evaluate->callback([&] {
    load_cfg();
    require_file(gold);
    require_file(pred);
    const auto t = fusion::task_from_string(task);
    const auto r = fusion::evaluate_records(read_jsonl(gold), read_jsonl(pred), t);
    write_doc(report, json{{"evaluations", {{task, fusion::to_json(r)}}}}, prov.header("report", "fuse"));
    std::cout << fusion::to_string(t) << " f1=" << r.mean.f1 << "\n";
  });

  // stats
  std::string comments_path, code_path;
  auto* stats = app.add_subcommand("stats", "label distribution and per-function histograms");
  stats->add_option("--comments", comments_path, "comment dataset JSONL");
  stats->add_option("--code", code_path, "code dataset JSONL");
  stats->add_option("--out", out, "stats JSON");
  stats->callback([&] {
    load_cfg();
    std::vector<dataset::CommentSample> cs;
    std::vector<dataset::CodeSample> code;
    if (!comments_path.empty()) {
      require_file(comments_path);
      cs = dataset::read_comment_samples(comments_path);
    }
    if (!code_path.empty()) {
      require_file(code_path);
      code = dataset::read_code_samples(code_path);
    }
    const json body = dataset::to_json(dataset::stats_report(cs, code));
    if (out.empty()) {
      std::cout << body.dump(2) << "\n";
    } else {
      write_doc(out, body, prov.header("stats", "assign"));
    }
  });

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "run every stage on a corpus described by --config");
  pipe->callback([&] {
    load_cfg();
    if (!prov.cfg) throw Error("pipeline needs --config");
    const auto r = pipeline::run_pipeline(*prov.cfg, [](const std::string& m) { spdlog::info("{}", m); });
    std::cout << r.summary.dump(2) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const NotFoundError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
