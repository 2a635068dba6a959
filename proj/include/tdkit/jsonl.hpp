#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tdkit {

using json = nlohmann::json;

// Provenance stamped onto the first line of every artifact written by the CLI.
struct ArtifactHeader {
  std::string kind;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::optional<std::string> created;  // ISO-8601 UTC; the only non-deterministic field

  json to_json() const;
  static ArtifactHeader from_json(const json& j);
};

inline constexpr const char* kMetaKey = "__meta__";

std::string utc_timestamp();

// Reads a JSONL file, skipping blank lines and a leading meta line.
// Parse failures throw Error naming path and 1-based line number.
std::vector<json> read_jsonl(const std::filesystem::path& path);

// Calls visit(record, line_no) for each record; exceptions thrown by the
// visitor are rethrown as Error prefixed with "path:line:".
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, std::size_t)>& visit);

std::optional<ArtifactHeader> read_header(const std::filesystem::path& path);

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& records,
                 const std::optional<ArtifactHeader>& header = std::nullopt);

std::string dump_line(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

std::string read_text_file(const std::filesystem::path& path);
// Write to a sibling temp file then rename.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tdkit
