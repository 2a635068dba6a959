#include "tdkit/pipeline/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "tdkit/annotation/task.hpp"
#include "tdkit/dataset/builder.hpp"
#include "tdkit/dataset/folds.hpp"
#include "tdkit/dataset/maldonado.hpp"
#include "tdkit/dataset/stats.hpp"
#include "tdkit/fusion/models.hpp"
#include "tdkit/java/source.hpp"
#include "tdkit/pipeline/schema.hpp"
#include "tdkit/sampling/sampler.hpp"
#include "tdkit/text/synthetic.hpp"

namespace tdkit::pipeline {

namespace fs = std::filesystem;

std::vector<text::TypedRecord> load_training_records(const std::optional<fs::path>& csv, std::size_t synthetic_size,
                                                     std::uint64_t seed) {
  std::vector<text::TypedRecord> out;
  if (csv) {
    for (const auto& s : dataset::read_maldonado_csv(*csv)) out.push_back({s.comment, s.label});
  } else {
    for (const auto& s : text::synthetic_comments(synthetic_size, seed)) out.push_back({s.text, s.label});
  }
  return out;
}

text::ClassifierModel train_detector(std::span<const text::TypedRecord> records, const text::ClassifierConfig& cfg) {
  std::vector<text::BinaryRecord> bin;
  bin.reserve(records.size());
  for (const auto& r : records) bin.push_back({r.text, is_td_type(r.label)});
  return text::train_binary(bin, cfg);
}

text::TypeModels train_types(std::span<const text::TypedRecord> records, const text::ClassifierConfig& cfg) {
  return text::train_type_classifiers(records, cfg);
}

std::vector<json> prediction_records(std::span<const java::FunctionUnit> functions, const text::ModelSet& models,
                                     double threshold) {
  if (!models.detector) throw Error("prediction needs the SATD detector");
  std::vector<json> out;
  for (const auto& fn : functions) {
    for (const auto& c : fn.comments) {
      const auto p = text::predict(models, c.clean_text, threshold);
      sampling::Triplet t{c.id, fn.id, c.clean_text, p.predicted_set, p.entropy};
      json j = sampling::to_json(t);
      const json pj = text::to_json(p);
      j["is_satd"] = *p.satd_probability >= threshold;
      j["satd_probability"] = *p.satd_probability;
      j["type_probabilities"] = pj.at("type_probabilities");
      j["entropy_head"] = pj.at("entropy_head");
      j["project"] = fn.repo;
      out.push_back(std::move(j));
    }
  }
  return out;
}

AutoLabelSummary auto_annotate(annotation::AnnotationStore& store, std::span<const std::string> comment_ids,
                               const std::map<std::string, TDLabel>& reference, const PipelineConfig& cfg) {
  std::vector<std::string> missing;
  for (const auto& id : comment_ids) {
    if (!reference.count(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string msg = "no reference label for comment(s):";
    for (const auto& id : missing) msg += " " + id;
    throw Error(msg);
  }
  annotation::AssignOptions opts;
  opts.balanced = cfg.balanced;
  const auto tasks = annotation::assign(comment_ids, cfg.annotators, cfg.seed("assign"), opts);
  store.add_tasks(tasks);

  AutoLabelSummary s;
  s.tasks = tasks.size();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    const TDLabel ref = reference.at(t.comment_id);
    store.submit_label(t.id, t.annotator_a, ref);
    TDLabel second = ref;
    if (cfg.disagree_every > 0 && (i + 1) % cfg.disagree_every == 0) {
      second = kAllLabels[(index_of(ref) + 1) % kNumLabels];
    }
    const auto after = store.submit_label(t.id, t.annotator_b, second);
    if (after.state == annotation::TaskState::Conflict) {
      ++s.conflicts;
      store.resolve(t.id, ref, "audited against the reference label");
      ++s.audited;
    }
  }
  return s;
}

namespace {

class Run {
 public:
  Run(const PipelineConfig& cfg, const Logger& log) : cfg_(cfg), log_(log) {}

  PipelineResult operator()();

 private:
  void note(const std::string& msg) {
    if (log_) log_(msg);
  }

  fs::path jsonl(const std::string& rel, const std::string& kind, const std::string& stage,
                 const std::vector<json>& records) {
    const fs::path p = cfg_.output / rel;
    fs::create_directories(p.parent_path());
    write_jsonl(p, records, cfg_.header(kind, stage));
    result_.artifacts.push_back({p, kind});
    return p;
  }

  fs::path json_file(const std::string& rel, const std::string& kind, const std::string& stage, json body) {
    const fs::path p = cfg_.output / rel;
    fs::create_directories(p.parent_path());
    body[kMetaKey] = cfg_.header(kind, stage).to_json().at(kMetaKey);
    write_json_file(p, body);
    result_.artifacts.push_back({p, kind});
    return p;
  }

  const PipelineConfig& cfg_;
  const Logger& log_;
  PipelineResult result_;
};

PipelineResult Run::operator()() {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(cfg_.output);
  json& summary = result_.summary;

  // extract
  const auto scan = java::scan_corpus(cfg_.corpus);
  const auto extraction = java::extract_corpus(scan.files);
  std::vector<json> fn_records;
  for (const auto& fn : extraction.functions) fn_records.push_back(java::to_json(fn));
  jsonl("functions.jsonl", "functions", "extract", fn_records);
  std::size_t n_comments = 0;
  for (const auto& fn : extraction.functions) n_comments += fn.comments.size();
  summary["extract"] = {{"files", extraction.files_scanned},
                        {"files_skipped", extraction.files_skipped + scan.skipped.size()},
                        {"functions", extraction.functions.size()},
                        {"comments", n_comments},
                        {"diagnostics", extraction.diagnostics}};
  note("extracted " + std::to_string(extraction.functions.size()) + " functions, " + std::to_string(n_comments) +
       " comments");

  // train
  const auto training = load_training_records(cfg_.training_csv, cfg_.synthetic_size, cfg_.seed("train"));
  text::ModelSet models;
  models.detector = train_detector(training, cfg_.classifier);
  models.types = train_types(training, cfg_.classifier);
  const json model_meta = cfg_.header("model", "train").to_json().at(kMetaKey);
  models.detector->meta = model_meta;
  for (auto& [label, m] : models.types) m.meta = model_meta;
  models.save_dir(cfg_.output / "models");
  result_.artifacts.push_back({cfg_.output / "models" / "detector.json", "model"});
  for (const auto& [label, m] : models.types) {
    result_.artifacts.push_back({cfg_.output / "models" / ("type-" + std::string(to_string(label)) + ".json"), "model"});
  }
  summary["train"] = {{"records", training.size()}, {"source", cfg_.training_csv ? "csv" : "synthetic"}};
  note("trained detector and " + std::to_string(models.types.size()) + " type classifiers on " +
       std::to_string(training.size()) + " comments");

  // predict
  const auto preds = prediction_records(extraction.functions, models, cfg_.threshold);
  jsonl("predictions.jsonl", "predictions", "predict", preds);
  std::vector<sampling::Triplet> triplets;
  std::vector<std::vector<TDLabel>> satd_sets;
  for (const auto& p : preds) {
    if (!p.at("is_satd").get<bool>()) continue;
    triplets.push_back(sampling::triplet_from_json(p));
    satd_sets.push_back(triplets.back().predicted_set);
  }
  json_file("overlap.json", "overlap", "predict", text::to_json(text::overlap_report(satd_sets)));
  summary["predict"] = {{"comments", preds.size()}, {"satd", triplets.size()}};

  // sample
  const auto candidates = sampling::build_candidates(triplets, models);
  const auto sampled = sampling::sample_functions(candidates, cfg_.sample_n, cfg_.seed("sample"));
  jsonl("sample.jsonl", "sample", "sample", sampling::sampling_records(sampled));
  summary["sample"] = {{"multi_type", candidates.multi_type.size()},
                       {"uncertain", candidates.uncertain.size()},
                       {"pool", sampled.pool.size()},
                       {"selected", sampled.selected_functions.size()}};
  note("sampled " + std::to_string(sampled.selected_functions.size()) + " of " + std::to_string(sampled.pool.size()) +
       " pooled functions");
  if (sampled.selected_functions.empty()) throw Error("sampling selected no functions");

  // annotate
  std::map<std::string, const java::FunctionUnit*> by_id;
  for (const auto& fn : extraction.functions) by_id[fn.id] = &fn;
  std::vector<std::string> comment_ids;
  for (const auto& fid : sampled.selected_functions) {
    for (const auto& c : by_id.at(fid)->comments) comment_ids.push_back(c.id);
  }
  std::map<std::string, TDLabel> reference;
  if (cfg_.finals) {
    for (const auto& f : dataset::read_finals(*cfg_.finals)) reference[f.comment_id] = f.label;
  } else {
    // silver labels from the classifiers
    for (const auto& p : preds) {
      const auto& set = p.at("predicted_set");
      reference[p.at("comment_id").get<std::string>()] =
          p.at("is_satd").get<bool>() && !set.empty() ? label_from_string(set.front().get<std::string>())
                                                       : TDLabel::NonSatd;
    }
  }
  const fs::path store_dir = cfg_.output / "annotation";
  fs::remove_all(store_dir);
  annotation::AnnotationStore store(store_dir);
  const auto labelled = auto_annotate(store, comment_ids, reference, cfg_);
  const auto agreement = store.metrics();
  json_file("agreement.json", "agreement", "assign", annotation::to_json(agreement));
  const auto final_json = store.export_finals();
  const auto finals_path = jsonl("finals.jsonl", "finals", "assign", final_json);
  summary["annotate"] = {{"tasks", labelled.tasks},
                         {"conflicts", labelled.conflicts},
                         {"audited", labelled.audited},
                         {"raw_agreement", agreement.raw_agreement},
                         {"kappa", agreement.kappa.kappa},
                         {"band", agreement.kappa.band}};
  const auto finals = dataset::read_finals(finals_path);

  // datasets
  std::vector<std::vector<dataset::CommentSample>> per_scope;
  for (const auto& scope : cfg_.scopes) {
    auto built = dataset::dedup(dataset::build_comment_dataset(finals, extraction.functions, scope, cfg_.window));
    std::vector<json> recs;
    for (const auto& s : built) recs.push_back(dataset::to_json(s));
    jsonl("dataset/comments-" + scope.name() + ".jsonl", "comment_dataset", "assign", recs);
    per_scope.push_back(std::move(built));
  }
  const auto code = dataset::dedup(dataset::build_code_dataset(finals, extraction.functions));
  {
    std::vector<json> recs;
    for (const auto& s : code) recs.push_back(dataset::to_json(s));
    jsonl("dataset/code.jsonl", "code_dataset", "assign", recs);
  }
  json_file("stats.json", "stats", "assign", dataset::to_json(dataset::stats_report(per_scope.front(), code)));
  summary["dataset"] = {{"comment_records", per_scope.front().size()}, {"code_records", code.size()}};

  // folds
  std::vector<dataset::FoldRecord> fold_records;
  for (const auto& s : per_scope.front()) fold_records.push_back({s.id, s.project});
  for (const auto& s : code) fold_records.push_back({s.id, s.project});
  std::set<std::string> projects;
  for (const auto& r : fold_records) projects.insert(r.project);
  if (projects.size() < 2) throw Error("cross-project folds need at least 2 projects in the annotated sample");
  const std::size_t n_folds = std::min(cfg_.n_folds, projects.size());
  if (n_folds < cfg_.n_folds) {
    note("only " + std::to_string(projects.size()) + " projects annotated; using " + std::to_string(n_folds) +
         " folds");
  }
  const auto split = dataset::cross_project_folds(fold_records, n_folds, cfg_.seed("folds"));
  json_file("folds.json", "folds", "folds", split.to_json());
  summary["folds"] = {{"n_folds", n_folds}, {"projects", projects.size()}, {"sizes", split.fold_sizes()}};

  // fuse, ensemble, evaluate
  std::vector<json> gold_comments;
  for (const auto& s : per_scope.front()) gold_comments.push_back(dataset::to_json(s));
  const bool any_satd = std::any_of(per_scope.front().begin(), per_scope.front().end(),
                                    [](const dataset::CommentSample& s) { return is_td_type(s.label); });
  json evaluations = json::object();
  auto as_json = [](const auto& preds) {
    std::vector<json> out;
    for (const auto& p : preds) out.push_back(fusion::to_json(p));
    return out;
  };
  std::vector<std::vector<fusion::LabelPrediction>> voters;
  for (fusion::FusionMethod method : {fusion::FusionMethod::StrConcat, fusion::FusionMethod::CodeAtt}) {
    fusion::FusionConfig fc = cfg_.fusion;
    fc.method = method;
    const std::string mname(fusion::to_string(method));
    for (std::size_t k = 0; k < cfg_.scopes.size(); ++k) {
      auto preds_k = fusion::cross_fold_predict(per_scope[k], split, fc);
      const auto recs = as_json(preds_k);
      jsonl("fusion/" + mname + "-" + cfg_.scopes[k].name() + ".jsonl", "label_predictions", "fuse", recs);
      evaluations["detection/" + mname + "-" + cfg_.scopes[k].name()] =
          fusion::to_json(fusion::evaluate_records(gold_comments, recs, fusion::EvalTask::Detection));
      if (method == cfg_.fusion.method) voters.push_back(std::move(preds_k));
    }
  }
  const auto voted = as_json(fusion::ensemble(voters));
  jsonl("fusion/ensemble.jsonl", "label_predictions", "fuse", voted);
  evaluations["detection/ensemble"] =
      fusion::to_json(fusion::evaluate_records(gold_comments, voted, fusion::EvalTask::Detection));
  evaluations["identification/ensemble"] =
      fusion::to_json(fusion::evaluate_records(gold_comments, voted, fusion::EvalTask::Identification));
  if (any_satd) {
    evaluations["classification/ensemble"] =
        fusion::to_json(fusion::evaluate_records(gold_comments, voted, fusion::EvalTask::Classification));
  }
  if (!code.empty()) {
    const auto code_preds = as_json(fusion::cross_fold_predict_code(code, split, cfg_.fusion));
    jsonl("fusion/code.jsonl", "set_predictions", "fuse", code_preds);
    std::vector<json> gold_code;
    for (const auto& s : code) gold_code.push_back(dataset::to_json(s));
    evaluations["code_multilabel"] =
        fusion::to_json(fusion::evaluate_records(gold_code, code_preds, fusion::EvalTask::CodeMultilabel));
  }
  json_file("report.json", "report", "fuse", json{{"evaluations", evaluations}});
  summary["evaluate"] = json::object();
  for (const auto& [name, r] : evaluations.items()) summary["evaluate"][name] = r.at("mean").at("f1");

  for (const auto& a : result_.artifacts) validate_artifact(a.path, a.kind);
  summary["artifacts"] = result_.artifacts.size();
  summary["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  note("wrote and validated " + std::to_string(result_.artifacts.size()) + " artifacts");
  return std::move(result_);
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg, const Logger& log) { return Run(cfg, log)(); }

}  // namespace tdkit::pipeline
