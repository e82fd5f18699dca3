#include "dfl/cli/output.hpp"

#include <ostream>
#include <stdexcept>

namespace dfl::cli {

std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "jsonl") return OutputFormat::jsonl;
  if (s == "csv") return OutputFormat::csv;
  if (s == "human") return OutputFormat::human;
  return std::nullopt;
}

Json OutputRecord::to_json() const {
  Json j = Json::object();
  j["kind"] = kind;
  j["schema_version"] = schema_version;
  j["payload"] = payload;
  return j;
}

OutputRecord OutputRecord::from_json(const Json& j) {
  OutputRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.schema_version = j.at("schema_version").get<int>();
  r.payload = j.at("payload");
  return r;
}

std::string encode_jsonl(const OutputRecord& rec) { return rec.to_json().dump(); }

OutputRecord decode_jsonl(std::string_view line) {
  return OutputRecord::from_json(Json::parse(line));
}

std::string csv_cell(const Json& value) {
  return value.is_string() ? value.get<std::string>() : value.dump();
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string q = "\"";
  for (char c : cell) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> keys_of(const Json& payload) {
  std::vector<std::string> keys;
  for (const auto& [k, _] : payload.items()) keys.push_back(k);
  return keys;
}

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (!cell.empty() || !row.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<OutputRecord>& records) {
  std::string prev_kind;
  std::vector<std::string> prev_keys;
  bool first = true;
  for (const auto& rec : records) {
    auto keys = keys_of(rec.payload);
    if (first || rec.kind != prev_kind || keys != prev_keys) {
      out << "kind,schema_version";
      for (const auto& k : keys) out << ',' << quote(k);
      out << '\n';
      prev_kind = rec.kind;
      prev_keys = keys;
      first = false;
    }
    out << quote(rec.kind) << ',' << rec.schema_version;
    for (const auto& [k, v] : rec.payload.items()) out << ',' << quote(csv_cell(v));
    out << '\n';
  }
}

std::vector<std::vector<std::pair<std::string, std::string>>> read_csv(std::string_view text) {
  std::vector<std::vector<std::pair<std::string, std::string>>> out;
  std::vector<std::string> header;
  for (auto& row : split_csv(text)) {
    if (!row.empty() && row[0] == "kind" && row.size() >= 2 && row[1] == "schema_version") {
      header = std::move(row);
      continue;
    }
    if (row.size() != header.size()) throw std::runtime_error("csv row does not match its header");
    std::vector<std::pair<std::string, std::string>> fields;
    for (std::size_t i = 0; i < row.size(); ++i) fields.emplace_back(header[i], std::move(row[i]));
    out.push_back(std::move(fields));
  }
  return out;
}

void write_human(std::ostream& out, const std::vector<OutputRecord>& records) {
  for (const auto& rec : records) {
    out << '[' << rec.kind << ']';
    for (const auto& [k, v] : rec.payload.items()) out << ' ' << k << '=' << csv_cell(v);
    out << '\n';
  }
}

void write_records(std::ostream& out, OutputFormat fmt, const std::vector<OutputRecord>& records) {
  switch (fmt) {
    case OutputFormat::jsonl:
      for (const auto& r : records) out << encode_jsonl(r) << '\n';
      break;
    case OutputFormat::csv:
      write_csv(out, records);
      break;
    case OutputFormat::human:
      write_human(out, records);
      break;
  }
}

}  // namespace dfl::cli
