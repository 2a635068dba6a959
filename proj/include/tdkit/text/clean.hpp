#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tdkit::text {

// Lowercases, strips comment delimiters and the leading/trailing `*` gutter
// of every line, joins lines with single spaces. Idempotent.
std::string clean_comment(std::string_view raw);

// Lowercase alphanumeric/underscore runs of already-cleaned text.
std::vector<std::string> word_tokens(std::string_view cleaned);

// Task-annotation-tag rule: todo, fixme, hack or xxx as a whole token.
bool mat_baseline(std::string_view cleaned);

}  // namespace tdkit::text
