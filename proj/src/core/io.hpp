#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace persim {

// Reads a whole file; throws Errc::io when unreadable.
std::string read_file(const std::filesystem::path& path);

// Single-writer append-then-rename: contents land under the final name only
// once fully written.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// One JSON record per line. Blank lines are ignored on read.
std::vector<json> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, const std::vector<json>& records);

template <typename T, typename Decode>
std::vector<T> load_jsonl_as(const std::filesystem::path& path, Decode decode) {
  std::vector<T> out;
  for (const auto& j : read_jsonl(path)) out.push_back(decode(j));
  return out;
}

// ---------------------------------------------------------------------------
// Roster CSV: header row names the schema traits plus id, party, pool.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);
std::string render_csv(const CsvTable& table);

// Parses and validates a roster file against the schema.
std::vector<HumanParticipant> load_roster_csv(const std::filesystem::path& path,
                                              const TraitSchema& schema);

}  // namespace persim
