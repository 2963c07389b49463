#include "output.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "adtrw/version.hpp"

namespace adtrw::cli {

void Metadata::diag(const std::string& key, double value) { diagnostics.emplace_back(key, fmt(value)); }

void Metadata::diag(const std::string& key, std::int64_t value) {
  diagnostics.emplace_back(key, std::to_string(value));
}

Metadata make_metadata(const ExperimentConfig& config) {
  Metadata meta;
  meta.subcommand = config.subcommand();
  meta.config = config.echo();
  return meta;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json json_number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string csv_preamble(const Metadata& meta) {
  std::string out = "# tool: adtrw " + std::string(kVersion) + "\n";
  out += "# schema_version: " + std::to_string(kSchemaVersion) + "\n";
  out += "# subcommand: " + meta.subcommand + "\n";
  for (const auto& [k, v] : meta.config) out += "# config: " + k + " = " + v + "\n";
  if (meta.seed) out += "# seed: " + std::to_string(*meta.seed) + "\n";
  if (meta.shards) out += "# shards: " + std::to_string(*meta.shards) + "\n";
  if (meta.samples) out += "# samples: " + std::to_string(*meta.samples) + "\n";
  for (const auto& [k, v] : meta.diagnostics) out += "# diag: " + k + " = " + v + "\n";
  return out;
}

Json json_metadata(const Metadata& meta) {
  Json m;
  m["tool"] = "adtrw";
  m["version"] = kVersion;
  m["schema_version"] = kSchemaVersion;
  m["subcommand"] = meta.subcommand;
  Json cfg = Json::object();
  for (const auto& [k, v] : meta.config) cfg[k] = v;
  m["config"] = cfg;
  if (meta.seed) m["seed"] = *meta.seed;
  if (meta.shards) m["shards"] = *meta.shards;
  if (meta.samples) m["samples"] = *meta.samples;
  Json diag = Json::object();
  for (const auto& [k, v] : meta.diagnostics) diag[k] = v;
  m["diagnostics"] = diag;
  return m;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

std::string CsvTable::render(const Metadata& meta) const {
  std::string out = csv_preamble(meta);
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  return out + body_;
}

void write_output(const std::string& path, const std::string& content, std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << content;
    stdout_stream.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at '" + path + "'");
  }
}

std::string render_json(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace adtrw::cli
