#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tdkit::java {

class SourceFile {
 public:
  SourceFile(std::string repo_id, std::string path, std::string content);

  const std::string& repo_id() const { return repo_id_; }
  const std::string& path() const { return path_; }
  const std::string& content() const { return content_; }
  const std::vector<std::size_t>& line_starts() const { return line_starts_; }

  std::size_t line_count() const { return line_starts_.size(); }
  // 1-based line containing byte offset.
  std::size_t line_of(std::size_t offset) const;
  std::size_t line_start(std::size_t line) const { return line_starts_.at(line - 1); }
  // Byte one past the end of the line, newline excluded.
  std::size_t line_end(std::size_t line) const;
  std::string_view line_text(std::size_t line) const;

 private:
  std::string repo_id_;
  std::string path_;
  std::string content_;
  std::vector<std::size_t> line_starts_;
};

struct SkippedFile {
  std::string path;
  std::string reason;
};

struct ScanResult {
  std::vector<SourceFile> files;
  std::vector<SkippedFile> skipped;
};

bool is_valid_utf8(std::string_view bytes);

// Files directly under root belong to a repo named after root itself; files
// below a first-level directory belong to a repo named after that directory.
// Throws Error when root is missing or not a directory.
ScanResult scan_corpus(const std::filesystem::path& root,
                       const std::set<std::string>& extensions = {"java"});

}  // namespace tdkit::java
