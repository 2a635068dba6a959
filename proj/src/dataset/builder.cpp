#include "tdkit/dataset/builder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tdkit/java/lexer.hpp"
#include "tdkit/text/clean.hpp"

namespace tdkit::dataset {

ContextScope ContextScope::Lines(int k) {
  if (k <= 0) throw Error("context line count must be positive");
  return {Kind::Lines, k};
}

ContextScope ContextScope::parse(std::string_view s) {
  if (s == "full" || s == "ff" || s == "FULL_FUNCTION") return Full();
  int k = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error("invalid context scope '" + std::string(s) + "'");
    k = k * 10 + (c - '0');
    if (k > 1000000) throw Error("context scope too large");
  }
  if (s.empty()) throw Error("empty context scope");
  return Lines(k);
}

std::string ContextScope::name() const { return kind == Kind::FullFunction ? "full" : std::to_string(lines); }

FinalLabel final_from_json(const json& j) {
  FinalLabel f;
  f.comment_id = j.at("comment_id").get<std::string>();
  f.label = label_from_string(j.at("final_label").get<std::string>());
  f.provenance = j.value("provenance", json(nullptr));
  return f;
}

std::vector<FinalLabel> read_finals(const std::filesystem::path& path) {
  std::vector<FinalLabel> out;
  for_each_jsonl(path, [&](const json& j, std::size_t) { out.push_back(final_from_json(j)); });
  return out;
}

namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f'; });
}

void rtrim(std::string& s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\f')) s.pop_back();
}

struct RawLine {
  std::string text;
  bool had_comment = false;
  bool ends_in_literal = false;
};

std::vector<RawLine> strip_to_lines(std::string_view body) {
  const auto lex = java::lex_java(body);
  std::vector<RawLine> lines(1);
  for (const auto& t : lex.tokens) {
    const bool comment = java::is_comment(t.kind);
    const bool literal = !comment && t.kind != java::TokenKind::Code;
    for (std::size_t i = t.begin; i < t.end; ++i) {
      const char c = body[i];
      if (c == '\n') {
        if (literal) lines.back().ends_in_literal = true;
        lines.emplace_back();
        if (comment) lines.back().had_comment = true;
        continue;
      }
      if (comment) {
        lines.back().had_comment = true;
      } else {
        lines.back().text.push_back(c);
      }
    }
  }
  return lines;
}

}  // namespace

std::vector<StrippedLine> stripped_lines(const java::FunctionUnit& fn) {
  auto raw = strip_to_lines(fn.body_text);
  std::vector<StrippedLine> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    RawLine& l = raw[i];
    if (l.had_comment && is_blank(l.text)) continue;
    if (!l.ends_in_literal) rtrim(l.text);
    out.push_back({fn.start_line + i, std::move(l.text)});
  }
  return out;
}

std::string strip_comments(std::string_view body) {
  java::FunctionUnit fn;
  fn.start_line = 1;
  fn.body_text = std::string(body);
  return strip_comments(fn);
}

std::string strip_comments(const java::FunctionUnit& fn) {
  std::string out;
  bool first = true;
  for (const auto& l : stripped_lines(fn)) {
    if (!first) out += '\n';
    first = false;
    out += l.text;
  }
  return out;
}

std::string extract_context(const java::CommentUnit& comment, const java::FunctionUnit& fn, ContextScope scope,
                            WindowMode mode) {
  if (scope.kind == ContextScope::Kind::FullFunction) return strip_comments(fn);
  const auto k = static_cast<std::size_t>(scope.lines);
  std::size_t before = 0;
  std::size_t after = k;
  if (mode == WindowMode::Symmetric) {
    before = k / 2;
    after = k - before;
  }
  const std::size_t lo = comment.start_line > before ? comment.start_line - before : 1;
  const std::size_t hi = std::min(comment.end_line + after, fn.end_line);
  std::string out;
  bool first = true;
  for (const auto& l : stripped_lines(fn)) {
    const bool in_before = l.source_line >= lo && l.source_line < comment.start_line;
    const bool in_after = l.source_line > comment.end_line && l.source_line <= hi;
    // code sharing a line with the comment sits between the two halves
    const bool on_comment = mode == WindowMode::Symmetric && l.source_line >= comment.start_line &&
                            l.source_line <= comment.end_line;
    if (!in_before && !in_after && !on_comment) continue;
    if (!first) out += '\n';
    first = false;
    out += l.text;
  }
  return out;
}

namespace {

struct CommentIndex {
  std::unordered_map<std::string, std::pair<const java::FunctionUnit*, const java::CommentUnit*>> by_id;

  explicit CommentIndex(std::span<const java::FunctionUnit> functions) {
    for (const auto& fn : functions) {
      for (const auto& c : fn.comments) by_id.emplace(c.id, std::make_pair(&fn, &c));
    }
  }

  void require(std::span<const FinalLabel> finals) const {
    std::vector<std::string> dangling;
    for (const auto& f : finals) {
      if (!by_id.contains(f.comment_id)) dangling.push_back(f.comment_id);
    }
    if (dangling.empty()) return;
    std::string msg = "final labels reference unknown comments:";
    for (const auto& d : dangling) msg += " " + d;
    throw Error(msg);
  }
};

}  // namespace

std::vector<CommentSample> build_comment_dataset(std::span<const FinalLabel> finals,
                                                 std::span<const java::FunctionUnit> functions, ContextScope scope,
                                                 WindowMode mode) {
  const CommentIndex index(functions);
  index.require(finals);
  std::vector<CommentSample> out;
  out.reserve(finals.size());
  for (const auto& f : finals) {
    const auto [fn, c] = index.by_id.at(f.comment_id);
    CommentSample s;
    s.id = c->id;
    s.function_id = fn->id;
    s.comment = c->clean_text;
    s.context = extract_context(*c, *fn, scope, mode);
    s.scope = scope.name();
    s.label = f.label;
    s.project = fn->repo;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CodeSample> build_code_dataset(std::span<const FinalLabel> finals,
                                           std::span<const java::FunctionUnit> functions) {
  const CommentIndex index(functions);
  index.require(finals);
  std::unordered_map<std::string, std::set<TDLabel>> labels;
  for (const auto& f : finals) {
    auto& set = labels[index.by_id.at(f.comment_id).first->id];
    if (is_code_td_type(f.label)) set.insert(f.label);
  }
  std::vector<CodeSample> out;
  std::unordered_set<std::string> emitted;
  for (const auto& fn : functions) {
    auto it = labels.find(fn.id);
    if (it == labels.end() || !emitted.insert(fn.id).second) continue;
    CodeSample s;
    s.id = fn.id;
    s.code = strip_comments(fn);
    s.labels.assign(it->second.begin(), it->second.end());
    s.project = fn.repo;
    out.push_back(std::move(s));
  }
  return out;
}

std::string normalize_whitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

namespace {

template <typename T, typename KeyFn>
std::vector<T> dedup_by(std::vector<T> records, KeyFn key) {
  std::unordered_set<std::string> seen;
  std::vector<T> out;
  for (auto& r : records) {
    if (seen.insert(key(r)).second) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<CommentSample> dedup(std::vector<CommentSample> records) {
  return dedup_by(std::move(records), [](const CommentSample& s) { return text::clean_comment(s.comment); });
}

std::vector<CodeSample> dedup(std::vector<CodeSample> records) {
  return dedup_by(std::move(records), [](const CodeSample& s) { return normalize_whitespace(s.code); });
}

json to_json(const CommentSample& s) {
  return json{{"id", s.id},           {"function_id", s.function_id}, {"comment", s.comment}, {"context", s.context},
              {"scope", s.scope},     {"label", to_string(s.label)},  {"project", s.project}};
}

json to_json(const CodeSample& s) {
  json labels = json::array();
  for (TDLabel l : s.labels) labels.push_back(to_string(l));
  return json{{"id", s.id}, {"code", s.code}, {"labels", labels}, {"project", s.project}};
}

CommentSample comment_sample_from_json(const json& j) {
  CommentSample s;
  s.id = j.at("id").get<std::string>();
  s.function_id = j.value("function_id", "");
  s.comment = j.at("comment").get<std::string>();
  s.context = j.at("context").get<std::string>();
  s.scope = j.at("scope").get<std::string>();
  s.label = label_from_string(j.at("label").get<std::string>());
  s.project = j.at("project").get<std::string>();
  return s;
}

CodeSample code_sample_from_json(const json& j) {
  CodeSample s;
  s.id = j.at("id").get<std::string>();
  s.code = j.at("code").get<std::string>();
  std::set<TDLabel> labels;
  for (const auto& l : j.at("labels")) {
    const TDLabel label = label_from_string(l.get<std::string>());
    if (!is_code_td_type(label)) throw Error("code sample label outside the code TD types");
    labels.insert(label);
  }
  s.labels.assign(labels.begin(), labels.end());
  s.project = j.at("project").get<std::string>();
  return s;
}

std::vector<CommentSample> read_comment_samples(const std::filesystem::path& path) {
  std::vector<CommentSample> out;
  for_each_jsonl(path, [&](const json& j, std::size_t) { out.push_back(comment_sample_from_json(j)); });
  return out;
}

std::vector<CodeSample> read_code_samples(const std::filesystem::path& path) {
  std::vector<CodeSample> out;
  for_each_jsonl(path, [&](const json& j, std::size_t) { out.push_back(code_sample_from_json(j)); });
  return out;
}

}  // namespace tdkit::dataset
