#include "tdkit/java/extract.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "tdkit/common.hpp"
#include "tdkit/text/clean.hpp"

namespace tdkit::java {

namespace {

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '$' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

struct HeaderToken {
  std::string text;
  std::size_t begin;  // absolute byte offset
  bool ident;
};

std::vector<HeaderToken> tokenize_header(std::string_view masked, std::size_t from, std::size_t to) {
  std::vector<HeaderToken> out;
  std::size_t i = from;
  while (i < to) {
    const char c = masked[i];
    if (is_ws(c)) {
      ++i;
    } else if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < to && is_ident_char(masked[j])) ++j;
      out.push_back({std::string(masked.substr(i, j - i)), i, true});
      i = j;
    } else if (c == '.' && i + 2 < to && masked[i + 1] == '.' && masked[i + 2] == '.') {
      out.push_back({"...", i, false});
      i += 3;
    } else {
      out.push_back({std::string(1, c), i, false});
      ++i;
    }
  }
  return out;
}

const std::set<std::string, std::less<>>& modifiers() {
  static const std::set<std::string, std::less<>> kMods = {
      "public", "protected", "private",  "static",    "final",    "abstract", "synchronized",
      "native", "strictfp",  "default",  "transient", "volatile", "sealed",   "non"};
  return kMods;
}

const std::set<std::string, std::less<>>& reserved() {
  static const std::set<std::string, std::less<>> kReserved = {
      "if",   "for",    "while", "switch", "catch", "synchronized", "return", "new",
      "else", "do",     "try",   "throw",  "case",  "class",        "interface", "enum",
      "record", "throws", "extends", "implements", "assert", "finally"};
  return kReserved;
}

bool is_primitive(std::string_view s) {
  return s == "void" || s == "int" || s == "long" || s == "short" || s == "byte" || s == "char" ||
         s == "boolean" || s == "float" || s == "double";
}

enum class HeaderKind { None, Type, Method };

struct Header {
  HeaderKind kind = HeaderKind::None;
  std::string name;
  std::size_t begin = 0;            // first token, annotations included
  std::size_t signature_begin = 0;  // first token after leading annotations
};

class HeaderParser {
 public:
  explicit HeaderParser(const std::vector<HeaderToken>& toks) : t_(toks) {}

  Header parse(const std::string& enclosing_type) {
    Header h;
    if (t_.empty()) return h;
    h.begin = t_.front().begin;
    bool seen_non_annotation = false;
    h.signature_begin = h.begin;
    for (;;) {
      if (at("@") && i_ + 1 < t_.size() && t_[i_ + 1].text != "interface") {
        ++i_;
        if (!qualified_name()) return h;
        if (at("(") && !balanced("(", ")")) return h;
        if (!seen_non_annotation && i_ < t_.size()) h.signature_begin = t_[i_].begin;
        continue;
      }
      if (i_ < t_.size() && modifiers().contains(t_[i_].text)) {
        seen_non_annotation = true;
        if (t_[i_].text == "non") {
          // non-sealed
          if (!(i_ + 2 < t_.size() && t_[i_ + 1].text == "-" && t_[i_ + 2].text == "sealed")) return h;
          i_ += 3;
        } else {
          ++i_;
        }
        continue;
      }
      break;
    }
    if (at("@") && i_ + 1 < t_.size() && t_[i_ + 1].text == "interface") {
      i_ += 2;
      return type_decl(h);
    }
    if (at("class") || at("interface") || at("enum") || at("record")) {
      ++i_;
      return type_decl(h);
    }
    if (at("<") && !balanced("<", ">")) return h;

    const std::size_t save = i_;
    // constructor: Name ( ... ) [throws ...]
    if (i_ < t_.size() && t_[i_].ident && t_[i_].text == enclosing_type && i_ + 1 < t_.size() &&
        t_[i_ + 1].text == "(") {
      const std::string name = t_[i_].text;
      ++i_;
      if (balanced("(", ")") && throws_clause() && i_ == t_.size()) {
        h.kind = HeaderKind::Method;
        h.name = name;
        return h;
      }
    }
    i_ = save;
    if (!type()) return h;
    if (!(i_ < t_.size() && t_[i_].ident) || reserved().contains(t_[i_].text)) return h;
    const std::string name = t_[i_].text;
    ++i_;
    if (!at("(") || !balanced("(", ")")) return h;
    while (at("[")) {
      if (!(i_ + 1 < t_.size() && t_[i_ + 1].text == "]")) return h;
      i_ += 2;
    }
    if (!throws_clause() || i_ != t_.size()) return h;
    h.kind = HeaderKind::Method;
    h.name = name;
    return h;
  }

 private:
  bool at(std::string_view s) const { return i_ < t_.size() && t_[i_].text == s; }

  bool qualified_name() {
    if (!(i_ < t_.size() && t_[i_].ident)) return false;
    ++i_;
    while (at(".") && i_ + 1 < t_.size() && t_[i_ + 1].ident) i_ += 2;
    return true;
  }

  bool balanced(std::string_view open, std::string_view close) {
    int depth = 0;
    while (i_ < t_.size()) {
      if (t_[i_].text == open) ++depth;
      if (t_[i_].text == close) --depth;
      ++i_;
      if (depth == 0) return true;
    }
    return false;
  }

  bool type() {
    while (at("@")) {  // type annotations
      ++i_;
      if (!qualified_name()) return false;
      if (at("(") && !balanced("(", ")")) return false;
    }
    if (!(i_ < t_.size() && t_[i_].ident) || reserved().contains(t_[i_].text) ||
        modifiers().contains(t_[i_].text)) {
      return false;
    }
    const bool prim = is_primitive(t_[i_].text);
    ++i_;
    if (!prim) {
      for (;;) {
        if (at("<") && !balanced("<", ">")) return false;
        if (at(".") && i_ + 1 < t_.size() && t_[i_ + 1].ident) {
          i_ += 2;
          continue;
        }
        break;
      }
    }
    while (at("[")) {
      if (!(i_ + 1 < t_.size() && t_[i_ + 1].text == "]")) return false;
      i_ += 2;
    }
    if (at("...")) return false;
    return true;
  }

  bool throws_clause() {
    if (!at("throws")) return true;
    ++i_;
    if (!type()) return false;
    while (at(",")) {
      ++i_;
      if (!type()) return false;
    }
    return true;
  }

  Header type_decl(Header h) {
    if (!(i_ < t_.size() && t_[i_].ident)) return h;
    h.kind = HeaderKind::Type;
    h.name = t_[i_].text;
    return h;
  }

  const std::vector<HeaderToken>& t_;
  std::size_t i_ = 0;
};

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (is_ws(c)) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

// Index of the brace closing the one at `open`, counting every brace in masked.
std::optional<std::size_t> matching_brace(std::string_view masked, std::size_t open) {
  long depth = 0;
  for (std::size_t i = open; i < masked.size(); ++i) {
    if (masked[i] == '{') ++depth;
    else if (masked[i] == '}' && --depth == 0) return i;
  }
  return std::nullopt;
}

bool braces_balanced(std::string_view masked) {
  long depth = 0;
  for (char c : masked) {
    if (c == '{') ++depth;
    if (c == '}' && --depth < 0) return false;
  }
  return depth == 0;
}

bool only_ws_before_on_line(std::string_view src, std::size_t offset) {
  while (offset > 0) {
    const char c = src[offset - 1];
    if (c == '\n') return true;
    if (c != ' ' && c != '\t' && c != '\r' && c != '\f') return false;
    --offset;
  }
  return true;
}

bool all_ws(std::string_view s) {
  return std::all_of(s.begin(), s.end(), is_ws);
}

}  // namespace

std::string function_id(const std::string& repo, const std::string& path, std::size_t start_line,
                        const std::string& signature) {
  return Fnv1a()
      .update_field(repo)
      .update_field(path)
      .update_field(std::to_string(start_line))
      .update_field(signature)
      .hex();
}

FileExtraction extract_functions(const SourceFile& file, const LexResult& lex) {
  FileExtraction out;
  const std::string& src = file.content();
  for (const auto& d : lex.diagnostics) {
    out.diagnostics.push_back("line " + std::to_string(file.line_of(d.offset)) + ": " + d.message);
  }
  const std::string masked = mask_non_code(src, lex.tokens);
  if (!braces_balanced(masked)) {
    out.diagnostics.push_back("unbalanced braces after masking; file skipped");
    out.skipped = true;
    return out;
  }

  struct Scope {
    bool is_type;
    std::string name;
  };
  std::vector<Scope> stack = {{false, ""}};
  std::size_t segment_begin = 0;
  int paren = 0;

  for (std::size_t i = 0; i < masked.size(); ++i) {
    const char c = masked[i];
    if (c == '(') {
      ++paren;
      continue;
    }
    if (c == ')') {
      if (paren > 0) --paren;
      continue;
    }
    if (paren > 0) continue;  // annotation element arrays
    if (c == ';') {
      segment_begin = i + 1;
    } else if (c == '}') {
      if (stack.size() > 1) stack.pop_back();
      segment_begin = i + 1;
    } else if (c == '{') {
      const auto toks = tokenize_header(masked, segment_begin, i);
      const Header h = HeaderParser(toks).parse(stack.back().name);
      if (h.kind == HeaderKind::Type) {
        stack.push_back({true, h.name});
        segment_begin = i + 1;
        continue;
      }
      const auto close = matching_brace(masked, i);
      if (!close) {  // unreachable once balance holds
        out.diagnostics.push_back("unmatched brace");
        out.skipped = true;
        out.functions.clear();
        return out;
      }
      if (h.kind == HeaderKind::Method && stack.back().is_type) {
        FunctionUnit fn;
        fn.repo = file.repo_id();
        fn.path = file.path();
        fn.name = h.name;
        fn.signature = collapse_ws(std::string_view(masked).substr(h.signature_begin, i - h.signature_begin));
        fn.span_begin = h.begin;
        fn.span_end = *close + 1;
        fn.start_line = file.line_of(fn.span_begin);
        fn.end_line = file.line_of(*close);
        const std::size_t body_from =
            only_ws_before_on_line(src, fn.span_begin) ? file.line_start(fn.start_line) : fn.span_begin;
        fn.body_text = src.substr(body_from, fn.span_end - body_from);
        fn.id = function_id(fn.repo, fn.path, fn.start_line, fn.signature);
        out.functions.push_back(std::move(fn));
      }
      i = *close;
      segment_begin = i + 1;
    }
  }
  return out;
}

namespace {

struct Group {
  std::vector<const LexToken*> tokens;
  CommentKind kind;
};

CommentUnit make_unit(const Group& g, const FunctionUnit& fn, const SourceFile& file,
                      CommentPosition pos) {
  CommentUnit u;
  u.function_id = fn.id;
  u.kind = g.kind;
  u.position = pos;
  const std::string_view src = file.content();
  for (std::size_t k = 0; k < g.tokens.size(); ++k) {
    if (k) u.raw_text += '\n';
    std::string_view t = g.tokens[k]->text(src);
    if (g.kind == CommentKind::Line && !t.empty() && t.back() == '\r') t.remove_suffix(1);
    u.raw_text += t;
  }
  u.clean_text = text::clean_comment(u.raw_text);
  u.start_line = file.line_of(g.tokens.front()->begin);
  u.end_line = file.line_of(g.tokens.back()->end - 1);
  u.id = Fnv1a()
             .update_field(fn.id)
             .update_field(std::to_string(u.start_line))
             .update_field(to_string(pos))
             .hex();
  return u;
}

bool ws_between(const std::vector<LexToken>& tokens, std::size_t a, std::size_t b, std::string_view src) {
  for (std::size_t k = a + 1; k < b; ++k) {
    if (tokens[k].kind != TokenKind::Code || !all_ws(tokens[k].text(src))) return false;
  }
  return true;
}

}  // namespace

FunctionUnit attach_and_group_comments(FunctionUnit fn, const SourceFile& file,
                                       const std::vector<LexToken>& tokens) {
  const std::string_view src = file.content();
  fn.comments.clear();

  // Leading block: walk back from the header over whitespace-only code.
  std::size_t first_inside = std::lower_bound(tokens.begin(), tokens.end(), fn.span_begin,
                                              [](const LexToken& t, std::size_t off) { return t.end <= off; }) -
                             tokens.begin();
  std::optional<Group> leading;
  {
    std::size_t k = first_inside;
    // Token straddling span_begin is code, and the part before the header must be whitespace.
    if (k < tokens.size() && tokens[k].begin < fn.span_begin &&
        !all_ws(src.substr(tokens[k].begin, fn.span_begin - tokens[k].begin))) {
      k = 0;  // non-whitespace code before the header on the same token: no leading block
    } else {
      std::optional<std::size_t> cand;
      std::size_t j = k;
      while (j > 0) {
        --j;
        if (is_comment(tokens[j].kind)) {
          cand = j;
          break;
        }
        if (tokens[j].kind != TokenKind::Code || !all_ws(tokens[j].text(src))) break;
      }
      if (cand && only_ws_before_on_line(src, tokens[*cand].begin) &&
          file.line_of(tokens[*cand].end - 1) + 1 == file.line_of(fn.span_begin)) {
        Group g;
        g.kind = tokens[*cand].kind == TokenKind::LineComment ? CommentKind::Line : CommentKind::Block;
        g.tokens.push_back(&tokens[*cand]);
        if (g.kind == CommentKind::Line) {
          std::size_t cur = *cand;
          while (cur >= 2) {
            const std::size_t prev = cur - 2;
            if (tokens[prev].kind != TokenKind::LineComment || !ws_between(tokens, prev, cur, src)) break;
            if (file.line_of(tokens[prev].begin) + 1 != file.line_of(tokens[cur].begin)) break;
            if (!only_ws_before_on_line(src, tokens[prev].begin)) break;
            g.tokens.insert(g.tokens.begin(), &tokens[prev]);
            cur = prev;
          }
        }
        leading = std::move(g);
      }
    }
  }
  if (leading) fn.comments.push_back(make_unit(*leading, fn, file, CommentPosition::Leading));

  // Inner comments, grouped.
  std::vector<Group> groups;
  std::optional<std::size_t> last_index;
  for (std::size_t k = first_inside; k < tokens.size() && tokens[k].begin < fn.span_end; ++k) {
    const LexToken& t = tokens[k];
    if (!is_comment(t.kind) || t.begin < fn.span_begin) continue;
    const bool is_line = t.kind == TokenKind::LineComment;
    if (is_line && last_index && !groups.empty() && groups.back().kind == CommentKind::Line &&
        ws_between(tokens, *last_index, k, src) &&
        file.line_of(tokens[*last_index].begin) + 1 == file.line_of(t.begin)) {
      groups.back().tokens.push_back(&t);
    } else {
      groups.push_back({{&t}, is_line ? CommentKind::Line : CommentKind::Block});
    }
    last_index = k;
  }
  for (const auto& g : groups) fn.comments.push_back(make_unit(g, fn, file, CommentPosition::Inner));
  std::stable_sort(fn.comments.begin(), fn.comments.end(),
                   [](const CommentUnit& a, const CommentUnit& b) { return a.start_line < b.start_line; });
  return fn;
}

FileExtraction extract_file(const SourceFile& file) {
  const LexResult lex = lex_java(file.content());
  FileExtraction out = extract_functions(file, lex);
  for (auto& fn : out.functions) fn = attach_and_group_comments(std::move(fn), file, lex.tokens);
  return out;
}

CorpusExtraction extract_corpus(const std::vector<SourceFile>& files) {
  CorpusExtraction out;
  for (const auto& f : files) {
    ++out.files_scanned;
    FileExtraction fe = extract_file(f);
    for (auto& d : fe.diagnostics) out.diagnostics.push_back(f.repo_id() + "/" + f.path() + ": " + d);
    if (fe.skipped) {
      ++out.files_skipped;
      continue;
    }
    for (auto& fn : fe.functions) out.functions.push_back(std::move(fn));
  }
  return out;
}

std::string_view to_string(CommentKind k) { return k == CommentKind::Line ? "line" : "block"; }
std::string_view to_string(CommentPosition p) {
  return p == CommentPosition::Leading ? "leading" : "inner";
}

json to_json(const FunctionUnit& fn) {
  json comments = json::array();
  for (const auto& c : fn.comments) {
    comments.push_back({{"id", c.id},
                        {"raw", c.raw_text},
                        {"clean", c.clean_text},
                        {"start_line", c.start_line},
                        {"end_line", c.end_line},
                        {"kind", to_string(c.kind)},
                        {"position", to_string(c.position)}});
  }
  return json{{"id", fn.id},
              {"repo", fn.repo},
              {"path", fn.path},
              {"name", fn.name},
              {"signature", fn.signature},
              {"start_line", fn.start_line},
              {"end_line", fn.end_line},
              {"body", fn.body_text},
              {"comments", std::move(comments)}};
}

FunctionUnit function_from_json(const json& j) {
  FunctionUnit fn;
  fn.id = j.at("id").get<std::string>();
  fn.repo = j.at("repo").get<std::string>();
  fn.path = j.at("path").get<std::string>();
  fn.name = j.at("name").get<std::string>();
  fn.signature = j.at("signature").get<std::string>();
  fn.start_line = j.at("start_line").get<std::size_t>();
  fn.end_line = j.at("end_line").get<std::size_t>();
  fn.body_text = j.at("body").get<std::string>();
  if (fn.start_line == 0 || fn.end_line < fn.start_line) throw Error("invalid function span");
  for (const auto& c : j.at("comments")) {
    CommentUnit u;
    u.id = c.at("id").get<std::string>();
    u.function_id = fn.id;
    u.raw_text = c.at("raw").get<std::string>();
    u.clean_text = c.at("clean").get<std::string>();
    u.start_line = c.at("start_line").get<std::size_t>();
    u.end_line = c.at("end_line").get<std::size_t>();
    const auto kind = c.at("kind").get<std::string>();
    const auto pos = c.at("position").get<std::string>();
    if (kind != "line" && kind != "block") throw Error("invalid comment kind '" + kind + "'");
    if (pos != "leading" && pos != "inner") throw Error("invalid comment position '" + pos + "'");
    u.kind = kind == "line" ? CommentKind::Line : CommentKind::Block;
    u.position = pos == "leading" ? CommentPosition::Leading : CommentPosition::Inner;
    fn.comments.push_back(std::move(u));
  }
  return fn;
}

std::vector<FunctionUnit> read_functions(const std::filesystem::path& path) {
  std::vector<FunctionUnit> out;
  for_each_jsonl(path, [&](const json& j, std::size_t) { out.push_back(function_from_json(j)); });
  return out;
}

}  // namespace tdkit::java
