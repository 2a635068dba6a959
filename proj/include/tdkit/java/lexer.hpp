#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tdkit::java {

enum class TokenKind {
  Code,
  LineComment,
  BlockComment,  // includes Javadoc
  StringLiteral,
  CharLiteral,
  TextBlock,
};

std::string_view to_string(TokenKind k);

inline bool is_comment(TokenKind k) {
  return k == TokenKind::LineComment || k == TokenKind::BlockComment;
}

struct LexToken {
  TokenKind kind;
  std::size_t begin;  // byte offsets into the lexed text
  std::size_t end;

  std::size_t size() const { return end - begin; }
  std::string_view text(std::string_view src) const { return src.substr(begin, end - begin); }
};

struct LexDiagnostic {
  std::size_t offset;
  std::string message;
};

struct LexResult {
  std::vector<LexToken> tokens;
  std::vector<LexDiagnostic> diagnostics;
};

// Splits text into maximal runs. Code tokens cover everything that is not a
// comment or literal, whitespace included, so the tokens tile the input.
// Line comments stop before the newline. Unterminated comments and literals
// run to end of input and are reported in diagnostics.
LexResult lex_java(std::string_view text);

// Copy of text with every non-code byte replaced by a space, newlines kept.
std::string mask_non_code(std::string_view text, const std::vector<LexToken>& tokens);

}  // namespace tdkit::java
