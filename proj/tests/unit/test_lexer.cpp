#include <doctest.h>

#include <random>
#include <string>

#include "tdkit/java/lexer.hpp"
#include "tdkit/java/source.hpp"

using namespace tdkit::java;

namespace {

std::size_t count_kind(const LexResult& r, TokenKind k) {
  std::size_t n = 0;
  for (const auto& t : r.tokens) n += t.kind == k;
  return n;
}

void check_tiling(std::string_view src, const LexResult& r) {
  std::size_t pos = 0;
  for (const auto& t : r.tokens) {
    REQUIRE(t.begin == pos);
    REQUIRE(t.end > t.begin);
    pos = t.end;
  }
  CHECK(pos == src.size());
}

}  // namespace

TEST_CASE("tokens tile the input") {
  const std::string src =
      "class A { // c1\n"
      "  String s = \"}{ // not a comment\";\n"
      "  char c = '}';\n"
      "  /* block { */ int x;\n"
      "  String t = \"\"\"\n    text { block\n    \"\"\";\n"
      "}\n";
  auto r = lex_java(src);
  check_tiling(src, r);
  CHECK(r.diagnostics.empty());
  CHECK(count_kind(r, TokenKind::LineComment) == 1);
  CHECK(count_kind(r, TokenKind::BlockComment) == 1);
  CHECK(count_kind(r, TokenKind::StringLiteral) == 1);
  CHECK(count_kind(r, TokenKind::CharLiteral) == 1);
  CHECK(count_kind(r, TokenKind::TextBlock) == 1);
}

TEST_CASE("line comment stops before the newline") {
  const std::string src = "a // x\nb";
  auto r = lex_java(src);
  for (const auto& t : r.tokens)
    if (t.kind == TokenKind::LineComment) CHECK(t.text(src) == "// x");
}

TEST_CASE("escapes inside literals") {
  const std::string src = "s = \"a\\\"// b\"; c = '\\''; // real";
  auto r = lex_java(src);
  check_tiling(src, r);
  CHECK(count_kind(r, TokenKind::LineComment) == 1);
  CHECK(count_kind(r, TokenKind::StringLiteral) == 1);
  CHECK(count_kind(r, TokenKind::CharLiteral) == 1);
}

TEST_CASE("comment openers inside comments") {
  const std::string src = "/* // inner */ x /** doc /* still doc */ y";
  auto r = lex_java(src);
  CHECK(count_kind(r, TokenKind::BlockComment) == 2);
  CHECK(count_kind(r, TokenKind::LineComment) == 0);
}

TEST_CASE("unterminated tokens run to end with a diagnostic") {
  for (std::string src : {"x /* open", "x = \"open", "x = \"\"\"\n open"}) {
    auto r = lex_java(src);
    check_tiling(src, r);
    CHECK(r.diagnostics.size() == 1);
    CHECK(r.tokens.back().end == src.size());
  }
}

TEST_CASE("mask keeps layout and code") {
  const std::string src = "int a; // }\n\"{\"\n/* x\ny */ b";
  auto r = lex_java(src);
  auto masked = mask_non_code(src, r.tokens);
  REQUIRE(masked.size() == src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == '\n') CHECK(masked[i] == '\n');
  }
  CHECK(masked.find('{') == std::string::npos);
  CHECK(masked.find('}') == std::string::npos);
  CHECK(masked.substr(0, 6) == "int a;");
  CHECK(masked.back() == 'b');
}

TEST_CASE("property: random byte soup always tiles") {
  std::mt19937_64 gen(17);
  const std::string alphabet = "ab{}/*\"'\\\n \t";
  for (int round = 0; round < 500; ++round) {
    std::string s;
    const auto len = gen() % 80;
    for (std::size_t i = 0; i < len; ++i) s += alphabet[gen() % alphabet.size()];
    auto r = lex_java(s);
    check_tiling(s, r);
    auto masked = mask_non_code(s, r.tokens);
    CHECK(masked.size() == s.size());
  }
}

TEST_CASE("source file line index") {
  SourceFile f("repo", "A.java", "ab\ncd\n\nef");
  CHECK(f.line_count() == 4);
  CHECK(f.line_of(0) == 1);
  CHECK(f.line_of(3) == 2);
  CHECK(f.line_text(2) == "cd");
  CHECK(f.line_text(3).empty());
  CHECK(f.line_text(4) == "ef");
}

TEST_CASE("utf8 validation") {
  CHECK(is_valid_utf8("plain"));
  CHECK(is_valid_utf8("caf\xc3\xa9"));
  CHECK_FALSE(is_valid_utf8("bad\xff"));
  CHECK_FALSE(is_valid_utf8("\xc3"));
}
