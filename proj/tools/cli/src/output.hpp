#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace adtrw::cli {

using Json = nlohmann::ordered_json;

/// Reproducibility block carried by every output file.
struct Metadata {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;
  std::optional<std::uint64_t> seed;
  std::optional<int> shards;
  std::optional<std::int64_t> samples;
  std::vector<std::pair<std::string, std::string>> diagnostics;

  void diag(const std::string& key, const std::string& value) { diagnostics.emplace_back(key, value); }
  void diag(const std::string& key, double value);
  void diag(const std::string& key, std::int64_t value);
};

Metadata make_metadata(const ExperimentConfig& config);

/// 17 significant digits, '.' decimal, "inf"/"-inf"/"nan" for non-finite values.
std::string fmt(double x);

/// Finite values as numbers, infinities as the strings "inf"/"-inf", NaN as null.
Json json_number(double x);

/// `# key: value` lines.
std::string csv_preamble(const Metadata& meta);

Json json_metadata(const Metadata& meta);

/// Column header plus rows, joined with ','.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  std::string render(const Metadata& meta) const;

 private:
  std::vector<std::string> columns_;
  std::string body_;
};

/// Writes `content` to `path` via a temporary file in the same directory and a
/// rename, or to `stdout_stream` when path is "-".
void write_output(const std::string& path, const std::string& content, std::ostream& stdout_stream);

std::string render_json(const Json& doc);

}  // namespace adtrw::cli
