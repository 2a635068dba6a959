#include "tdkit/java/source.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>
#include <tuple>

#include "tdkit/common.hpp"

namespace tdkit::java {

namespace fs = std::filesystem;

SourceFile::SourceFile(std::string repo_id, std::string path, std::string content)
    : repo_id_(std::move(repo_id)), path_(std::move(path)), content_(std::move(content)) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < content_.size(); ++i) {
    if (content_[i] == '\n') line_starts_.push_back(i + 1);
  }
}

std::size_t SourceFile::line_of(std::size_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  return static_cast<std::size_t>(it - line_starts_.begin());
}

std::size_t SourceFile::line_end(std::size_t line) const {
  if (line < line_starts_.size()) return line_starts_[line] - 1;
  return content_.size();
}

std::string_view SourceFile::line_text(std::size_t line) const {
  const std::size_t b = line_start(line);
  std::size_t e = line_end(line);
  if (e > b && content_[e - 1] == '\r') --e;
  return std::string_view(content_).substr(b, e - b);
}

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // overlongs, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xd800 && cp <= 0xdfff) || cp > 0x10ffff) {
      return false;
    }
    i += len;
  }
  return true;
}

ScanResult scan_corpus(const fs::path& root, const std::set<std::string>& extensions) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error("corpus root is not a readable directory: " + root.string());
  }
  fs::path norm = fs::absolute(root).lexically_normal();
  if (norm.filename().empty()) norm = norm.parent_path();
  const std::string root_label = norm.filename().string();

  struct Entry {
    std::string repo;
    std::string rel;
    fs::path full;
  };
  std::vector<Entry> entries;
  ScanResult result;

  auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error("cannot read corpus root " + root.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) {
      result.skipped.push_back({root.string(), "directory iteration: " + ec.message()});
      if (it == fs::recursive_directory_iterator()) break;
      ec.clear();
      continue;
    }
    if (!it->is_regular_file(ec)) continue;
    std::string ext = it->path().extension().string();
    if (!ext.empty()) ext.erase(0, 1);
    if (!extensions.contains(ext)) continue;
    const fs::path rel = it->path().lexically_relative(root);
    auto first = rel.begin();
    Entry e;
    if (std::next(first) == rel.end()) {
      e.repo = root_label;
      e.rel = rel.generic_string();
    } else {
      e.repo = first->string();
      fs::path rest;
      for (auto p = std::next(first); p != rel.end(); ++p) rest /= *p;
      e.rel = rest.generic_string();
    }
    e.full = it->path();
    entries.push_back(std::move(e));
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.repo, a.rel) < std::tie(b.repo, b.rel);
  });

  for (auto& e : entries) {
    std::ifstream in(e.full, std::ios::binary);
    if (!in) {
      result.skipped.push_back({e.repo + "/" + e.rel, "unreadable"});
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string content = ss.str();
    if (!is_valid_utf8(content)) {
      result.skipped.push_back({e.repo + "/" + e.rel, "invalid UTF-8"});
      continue;
    }
    result.files.emplace_back(std::move(e.repo), std::move(e.rel), std::move(content));
  }
  return result;
}

}  // namespace tdkit::java
