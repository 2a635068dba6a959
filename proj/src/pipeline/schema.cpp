#include "tdkit/pipeline/schema.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tdkit/common.hpp"

namespace tdkit::pipeline {

namespace {

enum class T { String, Integer, Number, Bool, Array, Object };

bool matches(const json& v, T t) {
  switch (t) {
    case T::String: return v.is_string();
    case T::Integer: return v.is_number_integer();
    case T::Number: return v.is_number();
    case T::Bool: return v.is_boolean();
    case T::Array: return v.is_array();
    case T::Object: return v.is_object();
  }
  return false;
}

const char* name(T t) {
  switch (t) {
    case T::String: return "string";
    case T::Integer: return "integer";
    case T::Number: return "number";
    case T::Bool: return "bool";
    case T::Array: return "array";
    case T::Object: return "object";
  }
  return "?";
}

const json& need(const json& j, const char* key, T t) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!matches(v, t)) throw Error(std::string("field '") + key + "' must be " + name(t));
  return v;
}

void need_label(const json& j, const char* key) {
  const auto& v = need(j, key, T::String);
  if (!parse_label(v.get<std::string>())) throw Error(std::string("field '") + key + "' is not a label");
}

void need_label_array(const json& j, const char* key) {
  for (const auto& v : need(j, key, T::Array)) {
    if (!v.is_string() || !parse_label(v.get<std::string>())) throw Error(std::string("field '") + key + "' has a non-label");
  }
}

void need_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(std::string(what) + " outside [0, 1]");
}

void need_score(const json& j, const char* key) {
  need_probability(need(j, key, T::Number).get<double>(), key);
}

void functions(const json& j) {
  need(j, "id", T::String);
  need(j, "repo", T::String);
  need(j, "path", T::String);
  need(j, "name", T::String);
  need(j, "signature", T::String);
  const auto s = need(j, "start_line", T::Integer).get<long long>();
  const auto e = need(j, "end_line", T::Integer).get<long long>();
  if (s < 1 || e < s) throw Error("bad line span");
  need(j, "body", T::String);
  for (const auto& c : need(j, "comments", T::Array)) {
    need(c, "id", T::String);
    need(c, "raw", T::String);
    need(c, "clean", T::String);
    const auto cs = need(c, "start_line", T::Integer).get<long long>();
    const auto ce = need(c, "end_line", T::Integer).get<long long>();
    if (cs < 1 || ce < cs) throw Error("bad comment line span");
    const auto kind = need(c, "kind", T::String).get<std::string>();
    if (kind != "line" && kind != "block") throw Error("comment kind must be line or block");
    const auto pos = need(c, "position", T::String).get<std::string>();
    if (pos != "leading" && pos != "inner") throw Error("comment position must be leading or inner");
  }
}

void predictions(const json& j) {
  need(j, "comment_id", T::String);
  need(j, "function_id", T::String);
  need(j, "comment", T::String);
  need_label_array(j, "predicted_set");
  if (need(j, "entropy", T::Number).get<double>() < 0.0) throw Error("negative entropy");
  need(j, "is_satd", T::Bool);
  need_score(j, "satd_probability");
  need(j, "type_probabilities", T::Object);
}

void sample(const json& j) {
  need(j, "function_id", T::String);
  need(j, "selection_rank", T::Integer);
  need(j, "n", T::Integer);
  need(j, "seed", T::Integer);
  need(j, "pool_size", T::Integer);
  for (const auto& c : need(j, "candidates", T::Array)) {
    need(c, "comment_id", T::String);
    need(c, "branch", T::String);
    need(c, "entropy", T::Number);
    need(c, "rank", T::Integer);
  }
}

void finals(const json& j) {
  need(j, "comment_id", T::String);
  need_label(j, "final_label");
  need(j, "provenance", T::Object);
}

void comment_dataset(const json& j) {
  need(j, "id", T::String);
  need(j, "function_id", T::String);
  need(j, "comment", T::String);
  need(j, "context", T::String);
  need(j, "scope", T::String);
  need_label(j, "label");
  need(j, "project", T::String);
}

void code_dataset(const json& j) {
  need(j, "id", T::String);
  need(j, "code", T::String);
  need_label_array(j, "labels");
  for (const auto& l : j.at("labels")) {
    if (!is_code_td_type(*parse_label(l.get<std::string>()))) throw Error("code labels must be code TD types");
  }
  need(j, "project", T::String);
}

void label_predictions(const json& j) {
  need(j, "id", T::String);
  need(j, "fold", T::Integer);
  need(j, "scope", T::String);
  need_label(j, "label");
  if (j.contains("probabilities")) {
    double sum = 0.0;
    for (const auto& [k, v] : need(j, "probabilities", T::Object).items()) {
      if (!parse_label(k) || !v.is_number()) throw Error("bad probabilities entry " + k);
      need_probability(v.get<double>(), "probability");
      sum += v.get<double>();
    }
    if (std::abs(sum - 1.0) > 1e-6) throw Error("probabilities do not sum to 1");
  }
}

void set_predictions(const json& j) {
  need(j, "id", T::String);
  need(j, "fold", T::Integer);
  need_label_array(j, "labels");
  need(j, "probabilities", T::Object);
}

void report_body(const json& j) {
  need(j, "task", T::String);
  need(j, "n", T::Integer);
  need_score(j, "f1");
  need_score(j, "macro_f1");
  need_score(j, "micro_f1");
  if (j.contains("exact_match")) need_score(j, "exact_match");
  if (j.contains("example_f1")) need_score(j, "example_f1");
  for (const auto& [k, v] : need(j, "per_class", T::Object).items()) {
    need_score(v, "precision");
    need_score(v, "recall");
    need_score(v, "f1");
  }
}

void report(const json& j) {
  const auto& tasks = need(j, "evaluations", T::Object);
  if (tasks.empty()) throw Error("no evaluations");
  for (const auto& [name, r] : tasks.items()) {
    need(r, "n_folds", T::Integer);
    need(r, "per_fold", T::Object);
    report_body(need(r, "mean", T::Object));
    for (const auto& f : need(r, "folds", T::Array)) report_body(f);
  }
}

void model(const json& j) {
  const auto& h = need(j, "header", T::Object);
  need(h, "format_version", T::Integer);
  need(h, "positive_class", T::String);
  need(h, "dataset_hash", T::String);
  const auto& f = need(j, "features", T::Object);
  const auto& vocab = need(f, "vocabulary", T::Array);
  if (need(j, "weights", T::Array).size() != vocab.size()) throw Error("weights do not match vocabulary");
  if (need(f, "idf", T::Array).size() != vocab.size()) throw Error("idf does not match vocabulary");
  need(j, "bias", T::Number);
}

void folds(const json& j) {
  const auto n = need(j, "n_folds", T::Integer).get<long long>();
  if (n < 1) throw Error("n_folds must be positive");
  for (const auto& [p, f] : need(j, "projects", T::Object).items()) {
    if (!f.is_number_integer() || f.get<long long>() < 0 || f.get<long long>() >= n) {
      throw Error("project " + p + " has a bad fold index");
    }
  }
}

void agreement(const json& j) {
  need(j, "n_items", T::Integer);
  if (j.at("n_items").get<long long>() > 0) {
    need(j, "raw_agreement", T::Number);
    need(j, "kappa", T::Number);
    need(j, "band", T::String);
  }
}

void stats(const json& j) {
  need(j, "n_comments", T::Integer);
  need(j, "n_functions", T::Integer);
  need(j, "comment_label_counts", T::Object);
  need(j, "types_per_function", T::Object);
}

void overlap(const json& j) {
  need(j, "ratio", T::Array);
  need(j, "support", T::Array);
}

struct Kind {
  const char* name;
  bool jsonl;
  void (*check)(const json&);
};

constexpr Kind kKinds[] = {
    {"functions", true, functions},
    {"predictions", true, predictions},
    {"sample", true, sample},
    {"finals", true, finals},
    {"comment_dataset", true, comment_dataset},
    {"code_dataset", true, code_dataset},
    {"label_predictions", true, label_predictions},
    {"set_predictions", true, set_predictions},
    {"model", false, model},
    {"folds", false, folds},
    {"agreement", false, agreement},
    {"stats", false, stats},
    {"report", false, report},
    {"overlap", false, overlap},
};

const Kind& find_kind(std::string_view kind) {
  for (const auto& k : kKinds) {
    if (kind == k.name) return k;
  }
  throw Error("unknown artifact kind: " + std::string(kind));
}

void check_meta(const json& meta, std::string_view kind) {
  need(meta, "tool_version", T::String);
  need(meta, "config_hash", T::String);
  need(meta, "seed", T::Integer);
  if (need(meta, "kind", T::String).get<std::string>() != kind) {
    throw Error("header kind '" + meta.at("kind").get<std::string>() + "' but expected '" + std::string(kind) + "'");
  }
}

}  // namespace

const std::vector<std::string>& artifact_kinds() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& k : kKinds) v.emplace_back(k.name);
    return v;
  }();
  return names;
}

bool is_jsonl_kind(std::string_view kind) { return find_kind(kind).jsonl; }

void validate_record(std::string_view kind, const json& record) { find_kind(kind).check(record); }

void validate_artifact(const std::filesystem::path& path, std::string_view kind) {
  const Kind& k = find_kind(kind);
  if (!k.jsonl) {
    const json j = read_json_file(path);
    try {
      check_meta(j.contains(kMetaKey) ? j.at(kMetaKey) : json(), kind);
      k.check(j);
    } catch (const Error& e) {
      throw Error(path.string() + ": " + e.what());
    }
    return;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  bool saw_meta = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!saw_meta) {
        if (!j.is_object() || !j.contains(kMetaKey)) throw Error("first line must be the meta header");
        check_meta(j.at(kMetaKey), kind);
        saw_meta = true;
        continue;
      }
      k.check(j);
    } catch (const json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!saw_meta) throw Error(path.string() + ": missing meta header");
}

}  // namespace tdkit::pipeline
