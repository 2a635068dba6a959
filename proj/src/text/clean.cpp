#include "tdkit/text/clean.hpp"

#include <algorithm>
#include <array>

namespace tdkit::text {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

bool is_word(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view strip_line(std::string_view line) {
  for (;;) {
    line = trim(line);
    if (line.starts_with("//")) {
      while (!line.empty() && line.front() == '/') line.remove_prefix(1);
    } else if (line.starts_with("/*")) {
      line.remove_prefix(2);
    } else if (line.starts_with("*/")) {
      line.remove_prefix(2);
    } else if (line.starts_with("*")) {
      while (!line.empty() && line.front() == '*') line.remove_prefix(1);
    } else {
      break;
    }
  }
  for (;;) {
    line = trim(line);
    if (line.ends_with("*/")) {
      line.remove_suffix(2);
    } else if (line.ends_with("/*")) {
      line.remove_suffix(2);
    } else if (line.ends_with("*")) {
      while (!line.empty() && line.back() == '*') line.remove_suffix(1);
    } else {
      break;
    }
  }
  return line;
}

}  // namespace

std::string clean_comment(std::string_view raw) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    auto nl = raw.find('\n', pos);
    if (nl == std::string_view::npos) nl = raw.size();
    const std::string_view line = strip_line(raw.substr(pos, nl - pos));
    bool pending_space = !out.empty();
    for (char c : line) {
      if (is_space(c)) {
        pending_space = true;
        continue;
      }
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string> word_tokens(std::string_view cleaned) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    if (!is_word(cleaned[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cleaned.size() && is_word(cleaned[j])) ++j;
    out.emplace_back(cleaned.substr(i, j - i));
    i = j;
  }
  return out;
}

bool mat_baseline(std::string_view cleaned) {
  static constexpr std::array<std::string_view, 4> kTags = {"todo", "fixme", "hack", "xxx"};
  const auto toks = word_tokens(cleaned);
  return std::any_of(toks.begin(), toks.end(), [](const std::string& t) {
    return std::find(kTags.begin(), kTags.end(), t) != kTags.end();
  });
}

}  // namespace tdkit::text
