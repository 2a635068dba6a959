#include "tdkit/jsonl.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "tdkit/common.hpp"

namespace tdkit {

json ArtifactHeader::to_json() const {
  json meta = {{"tool_version", kToolVersion},
               {"kind", kind},
               {"config_hash", config_hash},
               {"seed", seed}};
  if (created) meta["created"] = *created;
  return json{{kMetaKey, meta}};
}

ArtifactHeader ArtifactHeader::from_json(const json& j) {
  const json& m = j.at(kMetaKey);
  ArtifactHeader h;
  h.kind = m.value("kind", "");
  h.config_hash = m.value("config_hash", "");
  h.seed = m.value("seed", std::uint64_t{0});
  if (m.contains("created")) h.created = m.at("created").get<std::string>();
  return h;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, std::size_t)>& visit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    if (j.is_object() && j.contains(kMetaKey)) continue;
    try {
      visit(j, line_no);
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::vector<json> out;
  for_each_jsonl(path, [&](const json& j, std::size_t) { out.push_back(j); });
  return out;
}

std::optional<ArtifactHeader> read_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (!j.is_discarded() && j.is_object() && j.contains(kMetaKey)) return ArtifactHeader::from_json(j);
    return std::nullopt;
  }
  return std::nullopt;
}

std::string dump_line(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& records,
                 const std::optional<ArtifactHeader>& header) {
  std::string buf;
  if (header) {
    buf += dump_line(header->to_json());
    buf += '\n';
  }
  for (const auto& r : records) {
    buf += dump_line(r);
    buf += '\n';
  }
  write_text_file_atomic(path, buf);
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file_atomic(path, j.dump(2, ' ', false, json::error_handler_t::replace) + "\n");
}

}  // namespace tdkit
