#include "tdkit/dataset/stats.hpp"

#include <set>

namespace tdkit::dataset {

StatsReport stats_report(std::span<const CommentSample> comments, std::span<const CodeSample> code) {
  if (comments.empty() && code.empty()) throw Error("stats of an empty dataset");
  StatsReport r;
  r.n_comments = comments.size();
  std::map<std::string, std::size_t> per_function;
  std::size_t satd = 0;
  for (const auto& c : comments) {
    ++r.comment_label_counts[c.label];
    satd += is_td_type(c.label);
    ++per_function[c.function_id.empty() ? c.id : c.function_id];
  }
  for (const auto& [label, n] : r.comment_label_counts) {
    r.comment_label_ratio[label] = 100.0 * static_cast<double>(n) / static_cast<double>(comments.size());
  }
  if (!comments.empty()) r.satd_ratio = 100.0 * static_cast<double>(satd) / static_cast<double>(comments.size());
  for (const auto& [fid, n] : per_function) ++r.comments_per_function[n];

  std::set<std::string> functions;
  for (const auto& [fid, n] : per_function) functions.insert(fid);
  for (const auto& s : code) {
    functions.insert(s.id);
    ++r.types_per_function[s.labels.size()];
    for (TDLabel l : s.labels) ++r.code_label_counts[l];
  }
  r.n_functions = functions.size();
  return r;
}

json to_json(const StatsReport& r) {
  json counts = json::object(), ratio = json::object(), code_counts = json::object();
  for (const auto& [l, n] : r.comment_label_counts) counts[std::string(to_string(l))] = n;
  for (const auto& [l, v] : r.comment_label_ratio) ratio[std::string(to_string(l))] = v;
  for (const auto& [l, n] : r.code_label_counts) code_counts[std::string(to_string(l))] = n;
  json cpf = json::object(), tpf = json::object();
  for (const auto& [k, n] : r.comments_per_function) cpf[std::to_string(k)] = n;
  for (const auto& [k, n] : r.types_per_function) tpf[std::to_string(k)] = n;
  return json{{"n_comments", r.n_comments},
              {"n_functions", r.n_functions},
              {"comment_label_counts", counts},
              {"comment_label_ratio", ratio},
              {"satd_ratio", r.satd_ratio},
              {"comments_per_function", cpf},
              {"code_label_counts", code_counts},
              {"types_per_function", tpf}};
}

}  // namespace tdkit::dataset
