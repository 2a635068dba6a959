#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tdkit/annotation/metrics.hpp"
#include "tdkit/fusion/embed.hpp"
#include "tdkit/fusion/evaluate.hpp"
#include "tdkit/fusion/fusion.hpp"
#include "tdkit/fusion/vote.hpp"
#include "tdkit/java/extract.hpp"
#include "tdkit/java/source.hpp"
#include "tdkit/pipeline/config.hpp"
#include "tdkit/pipeline/pipeline.hpp"
#include "tdkit/text/classifier.hpp"
#include "tdkit/text/clean.hpp"

namespace py = pybind11;
using namespace tdkit;

namespace {

// JSON crosses the boundary as text; the package wrapper decodes it.
std::string extract_source(const std::string& repo, const std::string& path, const std::string& content) {
  const java::SourceFile file(repo, path, content);
  json out = json::array();
  for (const auto& fn : java::extract_file(file).functions) out.push_back(java::to_json(fn));
  return out.dump();
}

std::vector<TDLabel> labels(const std::vector<std::string>& names) {
  std::vector<TDLabel> out;
  for (const auto& n : names) out.push_back(label_from_string(n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_tdkit, m) {
  m.doc() = "tdkit core bindings";
  m.attr("__version__") = kToolVersion;

  py::register_exception<Error>(m, "TdkitError", PyExc_ValueError);

  m.def("clean_comment", &text::clean_comment, py::arg("raw"));
  m.def("extract_source", &extract_source, py::arg("repo"), py::arg("path"), py::arg("content"));
  m.def(
      "entropy", [](const std::vector<double>& p) { return text::entropy(p); }, py::arg("probabilities"));
  m.def(
      "cohen_kappa",
      [](const std::vector<std::vector<double>>& table) {
        const auto k = annotation::cohen_kappa(table);
        return py::dict(py::arg("kappa") = k.kappa, py::arg("observed") = k.observed,
                        py::arg("expected") = k.expected, py::arg("degenerate") = k.degenerate,
                        py::arg("band") = k.band);
      },
      py::arg("table"));
  m.def("landis_koch_band", &annotation::landis_koch_band, py::arg("kappa"));
  m.def("str_concat", &fusion::str_concat, py::arg("comment"), py::arg("code"), py::arg("max_len"));
  m.def(
      "embed_tokens",
      [](const std::string& text, int dim, std::uint64_t seed) { return fusion::embed_tokens(text, dim, seed).values; },
      py::arg("text"), py::arg("dim"), py::arg("seed"));
  m.def(
      "code_att",
      [](const Eigen::MatrixXd& G, const Eigen::MatrixXd& H) {
        const auto r = fusion::code_att(G, H);
        return py::make_tuple(r.attention, r.fused, r.pooled);
      },
      py::arg("G"), py::arg("H"));
  m.def(
      "majority_vote",
      [](const std::vector<std::pair<std::string, std::string>>& votes) {
        std::vector<fusion::ScopeVote> v;
        for (const auto& [scope, label] : votes) {
          v.push_back({dataset::ContextScope::parse(scope), label_from_string(label), std::nullopt});
        }
        return std::string(to_string(fusion::majority_vote(v)));
      },
      py::arg("votes"));
  m.def(
      "example_f1",
      [](const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
        return fusion::example_f1(labels(gold), labels(pred));
      },
      py::arg("gold"), py::arg("pred"));
  m.def(
      "evaluate",
      [](const std::vector<std::string>& gold, const std::vector<std::string>& pred, const std::string& task) {
        return fusion::to_json(fusion::evaluate(labels(gold), labels(pred), fusion::task_from_string(task))).dump();
      },
      py::arg("gold"), py::arg("pred"), py::arg("task"));
  m.def(
      "run_pipeline",
      [](const std::string& config_path) {
        const auto cfg = pipeline::load_config(config_path);
        py::gil_scoped_release release;
        return pipeline::run_pipeline(cfg).summary.dump();
      },
      py::arg("config_path"));
}
