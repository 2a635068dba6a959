#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tdkit/java/lexer.hpp"
#include "tdkit/java/source.hpp"
#include "tdkit/jsonl.hpp"

namespace tdkit::java {

enum class CommentKind { Line, Block };
enum class CommentPosition { Leading, Inner };

struct CommentUnit {
  std::string id;
  std::string function_id;
  std::string raw_text;
  std::string clean_text;
  std::size_t start_line = 0;
  std::size_t end_line = 0;
  CommentKind kind = CommentKind::Line;
  CommentPosition position = CommentPosition::Inner;
};

struct FunctionUnit {
  std::string id;
  std::string repo;
  std::string path;
  std::string name;
  std::string signature;
  std::size_t start_line = 0;  // 1-based, inclusive
  std::size_t end_line = 0;
  // Source from the start of the header line (when only indentation precedes
  // the header) through the closing brace. Line i of body is source line
  // start_line + i.
  std::string body_text;
  std::vector<CommentUnit> comments;

  // Byte span of the declaration in the source file: first header token
  // through one past the closing brace. Not serialized.
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
};

struct FileExtraction {
  std::vector<FunctionUnit> functions;
  std::vector<std::string> diagnostics;
  bool skipped = false;  // unbalanced braces after masking
};

std::string function_id(const std::string& repo, const std::string& path, std::size_t start_line,
                        const std::string& signature);

// Finds method and constructor declarations in class bodies. Bodies are
// closed by brace matching over code tokens only. Methods of local and
// anonymous classes stay inside the enclosing unit. Comments are not
// attached here.
FileExtraction extract_functions(const SourceFile& file, const LexResult& lex);

// Attaches the leading comment block and every comment inside the
// declaration span; runs of line comments on consecutive lines with only
// whitespace between are merged into one unit.
FunctionUnit attach_and_group_comments(FunctionUnit fn, const SourceFile& file,
                                       const std::vector<LexToken>& tokens);

// lex + extract + attach.
FileExtraction extract_file(const SourceFile& file);

struct CorpusExtraction {
  std::vector<FunctionUnit> functions;
  std::vector<std::string> diagnostics;  // "repo/path: message"
  std::size_t files_scanned = 0;
  std::size_t files_skipped = 0;
};

CorpusExtraction extract_corpus(const std::vector<SourceFile>& files);

std::string_view to_string(CommentKind k);
std::string_view to_string(CommentPosition p);

json to_json(const FunctionUnit& fn);
FunctionUnit function_from_json(const json& j);

std::vector<FunctionUnit> read_functions(const std::filesystem::path& path);

}  // namespace tdkit::java
