#include "tdkit/java/lexer.hpp"

namespace tdkit::java {

std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Code: return "code";
    case TokenKind::LineComment: return "line-comment";
    case TokenKind::BlockComment: return "block-comment";
    case TokenKind::StringLiteral: return "string-literal";
    case TokenKind::CharLiteral: return "char-literal";
    case TokenKind::TextBlock: return "text-block";
  }
  return "?";
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult run() {
    std::size_t code_begin = 0;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      const char next = peek(1);
      TokenKind kind;
      std::size_t start = pos_;
      if (c == '/' && next == '/') {
        kind = TokenKind::LineComment;
      } else if (c == '/' && next == '*') {
        kind = TokenKind::BlockComment;
      } else if (c == '"' && next == '"' && peek(2) == '"') {
        kind = TokenKind::TextBlock;
      } else if (c == '"') {
        kind = TokenKind::StringLiteral;
      } else if (c == '\'') {
        kind = TokenKind::CharLiteral;
      } else {
        ++pos_;
        continue;
      }
      if (start > code_begin) out_.tokens.push_back({TokenKind::Code, code_begin, start});
      switch (kind) {
        case TokenKind::LineComment: line_comment(); break;
        case TokenKind::BlockComment: block_comment(); break;
        case TokenKind::TextBlock: text_block(); break;
        case TokenKind::StringLiteral: quoted('"', "unterminated string literal"); break;
        case TokenKind::CharLiteral: quoted('\'', "unterminated char literal"); break;
        case TokenKind::Code: break;
      }
      out_.tokens.push_back({kind, start, pos_});
      code_begin = pos_;
    }
    if (src_.size() > code_begin) out_.tokens.push_back({TokenKind::Code, code_begin, src_.size()});
    return std::move(out_);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void line_comment() {
    const auto nl = src_.find('\n', pos_);
    pos_ = nl == std::string_view::npos ? src_.size() : nl;
    if (pos_ > 0 && src_[pos_ - 1] == '\r' && nl != std::string_view::npos) --pos_;
  }

  void block_comment() {
    const auto close = src_.find("*/", pos_ + 2);
    if (close == std::string_view::npos) {
      out_.diagnostics.push_back({pos_, "unterminated block comment"});
      pos_ = src_.size();
    } else {
      pos_ = close + 2;
    }
  }

  void text_block() {
    const std::size_t start = pos_;
    pos_ += 3;
    while (pos_ < src_.size()) {
      if (src_[pos_] == '\\') {
        pos_ += 2;
      } else if (src_.compare(pos_, 3, "\"\"\"") == 0) {
        pos_ += 3;
        return;
      } else {
        ++pos_;
      }
    }
    pos_ = src_.size();
    out_.diagnostics.push_back({start, "unterminated text block"});
  }

  void quoted(char quote, const char* message) {
    const std::size_t start = pos_;
    ++pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
      } else if (c == quote) {
        ++pos_;
        return;
      } else {
        ++pos_;
      }
    }
    pos_ = src_.size();
    out_.diagnostics.push_back({start, message});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  LexResult out_;
};

}  // namespace

LexResult lex_java(std::string_view text) { return Lexer(text).run(); }

std::string mask_non_code(std::string_view text, const std::vector<LexToken>& tokens) {
  std::string masked(text);
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Code) continue;
    for (std::size_t i = t.begin; i < t.end; ++i) {
      if (masked[i] != '\n' && masked[i] != '\r') masked[i] = ' ';
    }
  }
  return masked;
}

}  // namespace tdkit::java
