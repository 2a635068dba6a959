#include "tdkit/dataset/maldonado.hpp"

#include <algorithm>

#include "tdkit/text/clean.hpp"

namespace tdkit::dataset {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_has_content = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        field.clear();
        row.clear();
        row_has_content = false;
        break;
      default:
        field.push_back(c);
        row_has_content = true;
    }
  }
  if (quoted) throw Error("unterminated quoted CSV field");
  if (row_has_content || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CommentSample> read_maldonado_csv(const std::filesystem::path& path) {
  const auto rows = parse_csv(read_text_file(path));
  if (rows.empty()) throw Error(path.string() + ": empty CSV");
  auto column = [&](std::initializer_list<std::string_view> names) -> std::size_t {
    const auto& header = rows.front();
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string h = header[i];
      std::transform(h.begin(), h.end(), h.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      for (auto n : names) {
        if (h == n) return i;
      }
    }
    throw Error(path.string() + ": missing column " + std::string(*names.begin()));
  };
  const std::size_t project_col = column({"project", "projectname"});
  const std::size_t comment_col = column({"comment", "commenttext", "comment_text"});
  const std::size_t class_col = column({"classification", "label"});

  std::vector<CommentSample> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t need = std::max({project_col, comment_col, class_col});
    if (row.size() <= need) throw Error(path.string() + ": row " + std::to_string(r + 1) + " has too few fields");
    CommentSample s;
    s.project = row[project_col];
    s.comment = text::clean_comment(row[comment_col]);
    s.label = label_from_string(row[class_col]);
    s.scope = "none";
    s.id = "m" + std::to_string(r);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace tdkit::dataset
