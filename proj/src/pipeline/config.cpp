#include "tdkit/pipeline/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace tdkit::pipeline {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

std::uint64_t PipelineConfig::seed(const std::string& stage) const {
  auto it = stage_seeds.find(stage);
  return it == stage_seeds.end() ? global_seed : it->second;
}

std::string PipelineConfig::canonical() const {
  std::ostringstream o;
  o.precision(17);
  o << "corpus=" << corpus.generic_string() << "\n";
  o << "training_csv=" << (training_csv ? training_csv->generic_string() : "") << "\n";
  o << "finals=" << (finals ? finals->generic_string() : "") << "\n";
  o << "seed.global=" << global_seed << "\n";
  for (const auto& s : kStages) o << "seed." << s << "=" << seed(s) << "\n";
  o << "classifier.epochs=" << classifier.logistic.epochs << "\n";
  o << "classifier.learning_rate=" << classifier.logistic.learning_rate << "\n";
  o << "classifier.l2=" << classifier.logistic.l2 << "\n";
  o << "classifier.balanced=" << classifier.logistic.balanced << "\n";
  o << "classifier.num_buckets=" << classifier.features.num_buckets << "\n";
  o << "classifier.max_ngram=" << classifier.features.max_ngram << "\n";
  o << "classifier.threshold=" << threshold << "\n";
  o << "classifier.synthetic_size=" << synthetic_size << "\n";
  o << "sampling.n=" << sample_n << "\n";
  o << "annotation.annotators=";
  for (std::size_t i = 0; i < annotators.size(); ++i) o << (i ? "," : "") << annotators[i];
  o << "\nannotation.balanced=" << balanced << "\n";
  o << "annotation.disagree_every=" << disagree_every << "\n";
  o << "dataset.scopes=";
  for (std::size_t i = 0; i < scopes.size(); ++i) o << (i ? "," : "") << scopes[i].name();
  o << "\ndataset.window=" << (window == dataset::WindowMode::Following ? "following" : "symmetric") << "\n";
  o << "folds.n=" << n_folds << "\n";
  o << "fusion.method=" << fusion::to_string(fusion.method) << "\n";
  o << "fusion.max_len=" << fusion.max_len << "\n";
  o << "fusion.dim=" << fusion.dim << "\n";
  o << "server.bind=" << bind_host << ":" << bind_port << "\n";
  return o.str();
}

std::string PipelineConfig::hash() const { return Fnv1a().update(canonical()).hex(); }

ArtifactHeader PipelineConfig::header(const std::string& kind, const std::string& stage) const {
  ArtifactHeader h;
  h.kind = kind;
  h.config_hash = hash();
  h.seed = seed(stage);
  h.created = utc_timestamp();
  return h;
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

template <typename T>
T as(const std::string& section, const std::string& key, const std::string& value) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (value == "true" || value == "1" || value == "yes") return true;
      if (value == "false" || value == "0" || value == "no") return false;
      throw std::invalid_argument("bool");
    } else if constexpr (std::is_same_v<T, double>) {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing");
      return v;
    } else {
      if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
      std::size_t pos = 0;
      const auto v = std::stoull(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing");
      return static_cast<T>(v);
    }
  } catch (const std::logic_error&) {
    throw Error("config: invalid value '" + value + "' for " + section + "." + key);
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path raw(p);
  return (raw.is_absolute() ? raw : base / raw).lexically_normal();
}

}  // namespace

PipelineConfig parse_config(const std::string& text, const fs::path& base_dir) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error("config: " + e.message() + " at line " + std::to_string(e.line()));
  }
  PipelineConfig c;
  bool have_corpus = false, have_output = false;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw Error("config: key '" + section + "' outside a section");
    for (const auto& [key, node] : body) {
      const std::string v = node.data();
      const auto bad = [&] { return Error("config: unknown key " + section + "." + key); };
      if (section == "paths") {
        if (key == "corpus") {
          c.corpus = resolve(base_dir, v);
          have_corpus = true;
        } else if (key == "output") {
          c.output = resolve(base_dir, v);
          have_output = true;
        } else if (key == "training_csv") {
          c.training_csv = resolve(base_dir, v);
        } else if (key == "finals") {
          c.finals = resolve(base_dir, v);
        } else {
          throw bad();
        }
      } else if (section == "seeds") {
        if (key == "global") {
          c.global_seed = as<std::uint64_t>(section, key, v);
        } else if (std::find(kStages.begin(), kStages.end(), key) != kStages.end()) {
          c.stage_seeds[key] = as<std::uint64_t>(section, key, v);
        } else {
          throw bad();
        }
      } else if (section == "classifier") {
        if (key == "epochs") c.classifier.logistic.epochs = as<int>(section, key, v);
        else if (key == "learning_rate") c.classifier.logistic.learning_rate = as<double>(section, key, v);
        else if (key == "l2") c.classifier.logistic.l2 = as<double>(section, key, v);
        else if (key == "balanced") c.classifier.logistic.balanced = as<bool>(section, key, v);
        else if (key == "num_buckets") c.classifier.features.num_buckets = as<std::uint32_t>(section, key, v);
        else if (key == "max_ngram") c.classifier.features.max_ngram = as<int>(section, key, v);
        else if (key == "threshold") c.threshold = as<double>(section, key, v);
        else if (key == "synthetic_size") c.synthetic_size = as<std::size_t>(section, key, v);
        else throw bad();
      } else if (section == "sampling") {
        if (key == "n") c.sample_n = as<std::size_t>(section, key, v);
        else throw bad();
      } else if (section == "annotation") {
        if (key == "annotators") c.annotators = split_list(v);
        else if (key == "balanced") c.balanced = as<bool>(section, key, v);
        else if (key == "disagree_every") c.disagree_every = as<std::size_t>(section, key, v);
        else throw bad();
      } else if (section == "dataset") {
        if (key == "scopes") {
          c.scopes.clear();
          for (const auto& s : split_list(v)) c.scopes.push_back(dataset::ContextScope::parse(s));
        } else if (key == "window") {
          if (v == "following") c.window = dataset::WindowMode::Following;
          else if (v == "symmetric") c.window = dataset::WindowMode::Symmetric;
          else throw Error("config: dataset.window must be following or symmetric");
        } else {
          throw bad();
        }
      } else if (section == "folds") {
        if (key == "n") c.n_folds = as<std::size_t>(section, key, v);
        else throw bad();
      } else if (section == "fusion") {
        if (key == "method") c.fusion.method = fusion::method_from_string(v);
        else if (key == "max_len") c.fusion.max_len = as<std::size_t>(section, key, v);
        else if (key == "dim") c.fusion.dim = as<int>(section, key, v);
        else throw bad();
      } else if (section == "server") {
        if (key == "bind") {
          const auto colon = v.rfind(':');
          if (colon == std::string::npos) throw Error("config: server.bind must be host:port");
          c.bind_host = v.substr(0, colon);
          c.bind_port = as<int>(section, key, v.substr(colon + 1));
        } else {
          throw bad();
        }
      } else {
        throw Error("config: unknown section [" + section + "]");
      }
    }
  }
  if (!have_corpus) throw Error("config: paths.corpus is required");
  if (!have_output) throw Error("config: paths.output is required");
  if (c.annotators.size() < 2) throw Error("config: need at least two annotators");
  if (c.scopes.empty()) throw Error("config: dataset.scopes is empty");
  if (c.n_folds < 2) throw Error("config: folds.n must be at least 2");
  if (c.threshold <= 0.0 || c.threshold >= 1.0) throw Error("config: classifier.threshold must be in (0, 1)");
  c.fusion.features = c.classifier.features;
  c.fusion.logistic = c.classifier.logistic;
  c.fusion.seed = c.seed("fuse");
  c.classifier.seed = c.seed("train");
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  const std::string text = read_text_file(path);
  return parse_config(text, fs::absolute(path).parent_path());
}

}  // namespace tdkit::pipeline
