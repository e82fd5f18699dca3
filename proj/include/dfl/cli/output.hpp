#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dfl::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { jsonl, csv, human };

std::optional<OutputFormat> parse_format(std::string_view s);

// One line of command output. `payload` keeps insertion order so encodings
// are byte-stable.
struct OutputRecord {
  std::string kind;  // solution | bound_check | triple | scan_summary
  Json payload = Json::object();
  int schema_version = kSchemaVersion;

  Json to_json() const;
  static OutputRecord from_json(const Json& j);

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

std::string encode_jsonl(const OutputRecord& rec);
OutputRecord decode_jsonl(std::string_view line);

// Text of one payload value as it appears in a csv cell (before quoting):
// strings verbatim, everything else as compact JSON.
std::string csv_cell(const Json& value);

// Consecutive records with the same kind and keys share one header row
// "kind,schema_version,<payload keys>".
void write_csv(std::ostream& out, const std::vector<OutputRecord>& records);

// Parses write_csv output back into rows of (column name, cell text).
std::vector<std::vector<std::pair<std::string, std::string>>> read_csv(std::string_view text);

void write_human(std::ostream& out, const std::vector<OutputRecord>& records);

void write_records(std::ostream& out, OutputFormat fmt, const std::vector<OutputRecord>& records);

}  // namespace dfl::cli
