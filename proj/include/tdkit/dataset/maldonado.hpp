#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tdkit/dataset/builder.hpp"

namespace tdkit::dataset {

// RFC 4180 row split: quoted fields, doubled quotes, embedded newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Reads the (project, comment, classification) record shape; column order
// comes from the header row. Classifications use the corpus spellings
// (WITHOUT_CLASSIFICATION = NON_SATD). Comments are cleaned on load and the
// samples carry no code context (scope "none").
std::vector<CommentSample> read_maldonado_csv(const std::filesystem::path& path);

}  // namespace tdkit::dataset
