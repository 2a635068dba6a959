#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tdkit/common.hpp"
#include "tdkit/java/extract.hpp"
#include "tdkit/jsonl.hpp"

namespace tdkit::dataset {

struct ContextScope {
  enum class Kind { Lines, FullFunction };
  Kind kind = Kind::FullFunction;
  int lines = 0;

  static ContextScope Lines(int k);
  static ContextScope Full() { return {}; }
  // "2", "10", "20" (any k > 0) or "full"
  static ContextScope parse(std::string_view s);
  std::string name() const;
  bool operator==(const ContextScope&) const = default;
};

enum class WindowMode { Following, Symmetric };

struct FinalLabel {
  std::string comment_id;
  TDLabel label = TDLabel::NonSatd;
  json provenance;
};

FinalLabel final_from_json(const json& j);
std::vector<FinalLabel> read_finals(const std::filesystem::path& path);

struct CommentSample {
  std::string id;  // comment id
  std::string function_id;
  std::string comment;
  std::string context;
  std::string scope;
  TDLabel label = TDLabel::NonSatd;
  std::string project;
};

struct CodeSample {
  std::string id;  // function id
  std::string code;
  std::vector<TDLabel> labels;  // subset of the code TD types, enum order
  std::string project;
};

struct StrippedLine {
  std::size_t source_line;
  std::string text;
};

// Function body with comment tokens removed, one entry per surviving line.
// Lines emptied by the removal are dropped, trailing whitespace is trimmed
// (except where a line ends inside a literal), code and literals are
// otherwise byte-preserved.
std::vector<StrippedLine> stripped_lines(const java::FunctionUnit& fn);
std::string strip_comments(const java::FunctionUnit& fn);
std::string strip_comments(std::string_view body);

// Following: the k source lines after the comment's last line. Symmetric:
// k/2 lines before the comment, code left on its own lines, and k - k/2 after it. Both are clipped to the
// function span and come from stripped_lines, so the result is always a
// substring of strip_comments(fn).
std::string extract_context(const java::CommentUnit& comment, const java::FunctionUnit& fn, ContextScope scope,
                            WindowMode mode = WindowMode::Following);

// Throws Error listing every comment id that no function owns.
std::vector<CommentSample> build_comment_dataset(std::span<const FinalLabel> finals,
                                                 std::span<const java::FunctionUnit> functions, ContextScope scope,
                                                 WindowMode mode = WindowMode::Following);

// One record per function with at least one final label; labels are the
// union of its comments' final labels restricted to the code TD types.
std::vector<CodeSample> build_code_dataset(std::span<const FinalLabel> finals,
                                           std::span<const java::FunctionUnit> functions);

std::string normalize_whitespace(std::string_view s);

// First occurrence wins. Comment key: cleaned comment text; code key:
// whitespace-normalized code.
std::vector<CommentSample> dedup(std::vector<CommentSample> records);
std::vector<CodeSample> dedup(std::vector<CodeSample> records);

json to_json(const CommentSample& s);
json to_json(const CodeSample& s);
CommentSample comment_sample_from_json(const json& j);
CodeSample code_sample_from_json(const json& j);
std::vector<CommentSample> read_comment_samples(const std::filesystem::path& path);
std::vector<CodeSample> read_code_samples(const std::filesystem::path& path);

}  // namespace tdkit::dataset
