#include "core/io.hpp"

#include <fstream>
#include <sstream>

#include "core/util.hpp"

namespace persim {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error(Errc::io, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::vector<json> out;
  std::istringstream in(read_file(path));
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw Error(Errc::io, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_jsonl(const fs::path& path, const std::vector<json>& records) {
  std::string body;
  for (const auto& r : records) {
    body += r.dump();
    body += '\n';
  }
  write_file_atomic(path, body);
}

// ---------------------------------------------------------------------------
// CSV

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_data = false;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    if (table.header.empty()) table.header = row;
    else table.rows.push_back(row);
    row.clear();
    row_has_data = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"': in_quotes = true; row_has_data = true; break;
      case ',': end_field(); row_has_data = true; break;
      case '\r': break;
      case '\n':
        if (row_has_data || !field.empty() || !row.empty()) end_row();
        break;
      default: field += c; row_has_data = true; break;
    }
  }
  if (row_has_data || !field.empty() || !row.empty()) end_row();
  return table;
}

namespace {
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}
}  // namespace

std::string render_csv(const CsvTable& table) {
  std::string out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  };
  emit_row(table.header);
  for (const auto& r : table.rows) emit_row(r);
  return out;
}

std::vector<HumanParticipant> load_roster_csv(const fs::path& path, const TraitSchema& schema) {
  CsvTable table = parse_csv(read_file(path));
  if (table.header.empty()) throw Error(Errc::io, "roster " + path.string() + " has no header row");

  int id_col = -1, party_col = -1, pool_col = -1;
  std::vector<std::pair<int, std::string>> trait_cols;
  for (size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (name == "id") id_col = static_cast<int>(c);
    else if (name == "party") party_col = static_cast<int>(c);
    else if (name == "pool") pool_col = static_cast<int>(c);
    if (name != "id" && name != "pool") {
      if (schema.find(name) == nullptr)
        throw Error(Errc::schema_mismatch,
                    "roster column '" + name + "' is not a schema trait (" + path.string() + ")");
      trait_cols.emplace_back(static_cast<int>(c), name);
    }
  }
  if (id_col < 0 || party_col < 0 || pool_col < 0)
    throw Error(Errc::io, "roster " + path.string() + " must have id, party and pool columns");

  std::vector<HumanParticipant> roster;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size())
      throw Error(Errc::io, "roster " + path.string() + " row " + std::to_string(r + 2) +
                                " has " + std::to_string(row.size()) + " fields, expected " +
                                std::to_string(table.header.size()));
    HumanParticipant h;
    h.id = row[static_cast<size_t>(id_col)];
    h.party = party_from_string(row[static_cast<size_t>(party_col)]);
    h.pool = row[static_cast<size_t>(pool_col)];
    for (const auto& [col, name] : trait_cols) h.traits[name] = row[static_cast<size_t>(col)];
    h.validate(schema);
    roster.push_back(std::move(h));
  }
  return roster;
}

}  // namespace persim
