#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace adtrw::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void mismatch(const std::string& what, const char* expected, const std::string& text) {
  throw ConfigError(what + " expects " + expected + ", got '" + text + "'");
}

bool valid_key(const std::string& key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

std::string flag_name(const std::string& key) {
  std::string out = "--" + key;
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) mismatch(what, "an integer", text);
  return v;
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || std::isnan(v)) {
    mismatch(what, "a real number", text);
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  mismatch(what, "a boolean (true/false)", text);
}

std::vector<int> parse_sites(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  const auto dots = s.find("..");
  if (dots == std::string::npos) return parse_int_list(s, what);
  const auto lo = parse_int(s.substr(0, dots), what);
  const auto hi = parse_int(s.substr(dots + 2), what);
  if (hi < lo) throw ConfigError(what + ": empty range '" + text + "'");
  if (hi - lo > 100000) throw ConfigError(what + ": range '" + text + "' too long");
  std::vector<int> out;
  for (auto n = lo; n <= hi; ++n) out.push_back(static_cast<int>(n));
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const auto v = parse_int(part, what);
    if (v < INT32_MIN || v > INT32_MAX) mismatch(what, "a 32-bit integer", part);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part, what));
  return out;
}

std::vector<double> parse_grid(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_real(parts[0], what)};
  if (parts.size() != 3) mismatch(what, "start:stop:step", text);
  const double start = parse_real(parts[0], what);
  const double stop = parse_real(parts[1], what);
  const double step = parse_real(parts[2], what);
  if (!(step > 0.0) || !(stop >= start) || !std::isfinite(stop)) {
    throw ConfigError(what + ": grid '" + text + "' needs step > 0 and stop >= start");
  }
  const double count = std::floor((stop - start) / step + 1e-9) + 1.0;
  if (count > 100000) throw ConfigError(what + ": grid '" + text + "' has too many points");
  std::vector<double> out;
  for (int i = 0; i < static_cast<int>(count); ++i) out.push_back(start + i * step);
  return out;
}

void check_value(const ParamSpec& spec, const std::string& value, const std::string& where) {
  const std::string what = where + " '" + spec.key + "'";
  switch (spec.type) {
    case ValueType::Int: parse_int(value, what); break;
    case ValueType::Real: parse_real(value, what); break;
    case ValueType::Text: break;
    case ValueType::Bool: parse_bool(value, what); break;
    case ValueType::Choice:
      if (std::find(spec.choices.begin(), spec.choices.end(), trim(value)) == spec.choices.end()) {
        std::string list;
        for (const auto& c : spec.choices) list += (list.empty() ? "" : "|") + c;
        mismatch(what, ("one of " + list).c_str(), value);
      }
      break;
    case ValueType::Sites: parse_sites(value, what); break;
    case ValueType::IntList: parse_int_list(value, what); break;
    case ValueType::RealList: parse_real_list(value, what); break;
    case ValueType::Grid: parse_grid(value, what); break;
  }
}

RawConfig parse_config(std::istream& in, const std::string& source) {
  RawConfig out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::string at = source + ":" + std::to_string(line_no);
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(at + ": malformed line, expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(at + ": malformed key '" + key + "'");
    if (value.empty()) throw ConfigError(at + ": missing value for '" + key + "'");
    const auto dup = std::find_if(out.begin(), out.end(), [&](const auto& kv) { return kv.first == key; });
    if (dup != out.end()) {
      throw ConfigError(at + ": duplicate key '" + key + "' (first set on line " + std::to_string(dup->second.line) +
                        ")");
    }
    out.emplace_back(key, ConfigEntry{value, line_no});
  }
  return out;
}

RawConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  return parse_config(in, path);
}

ExperimentConfig::ExperimentConfig(std::string subcommand, std::vector<ParamSpec> schema)
    : subcommand_(std::move(subcommand)), schema_(std::move(schema)) {
  for (const auto& p : schema_) {
    if (!p.default_value.empty()) values_[p.key] = {p.default_value, Origin::Default};
  }
}

const ParamSpec& ExperimentConfig::spec(const std::string& key) const {
  const auto it = std::find_if(schema_.begin(), schema_.end(), [&](const ParamSpec& p) { return p.key == key; });
  if (it == schema_.end()) throw ConfigError("unknown key '" + key + "' for subcommand " + subcommand_);
  return *it;
}

void ExperimentConfig::set(const std::string& key, const std::string& value, Origin origin,
                           const std::string& where) {
  const ParamSpec& p = spec(key);
  check_value(p, value, where);
  values_[key] = {trim(value), origin};
}

bool ExperimentConfig::has(const std::string& key) const {
  spec(key);
  return values_.count(key) != 0;
}

const std::string& ExperimentConfig::text(const std::string& key) const {
  spec(key);
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing parameter " + flag_name(key));
  return it->second.first;
}

std::int64_t ExperimentConfig::integer(const std::string& key) const { return parse_int(text(key), flag_name(key)); }

int ExperimentConfig::small_int(const std::string& key) const {
  const auto v = integer(key);
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(flag_name(key) + " out of range: " + text(key));
  return static_cast<int>(v);
}

double ExperimentConfig::real(const std::string& key) const { return parse_real(text(key), flag_name(key)); }
bool ExperimentConfig::flag(const std::string& key) const { return parse_bool(text(key), flag_name(key)); }
std::vector<int> ExperimentConfig::sites(const std::string& key) const {
  return parse_sites(text(key), flag_name(key));
}
std::vector<int> ExperimentConfig::int_list(const std::string& key) const {
  return parse_int_list(text(key), flag_name(key));
}
std::vector<double> ExperimentConfig::real_list(const std::string& key) const {
  return parse_real_list(text(key), flag_name(key));
}
std::vector<double> ExperimentConfig::grid(const std::string& key) const {
  return parse_grid(text(key), flag_name(key));
}

void ExperimentConfig::check_required() const {
  for (const auto& p : schema_) {
    if (p.required && values_.count(p.key) == 0) {
      throw ConfigError("missing required parameter " + flag_name(p.key) + " (config key '" +
                        p.key + "')");
    }
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : schema_) {
    const auto it = values_.find(p.key);
    if (it != values_.end()) out.emplace_back(p.key, it->second.first);
  }
  return out;
}

void apply_config(ExperimentConfig& config, const RawConfig& raw, const std::string& source) {
  for (const auto& [key, entry] : raw) {
    const std::string at = source + ":" + std::to_string(entry.line);
    if (key == "schema_version") {
      if (parse_int(entry.value, at + " 'schema_version'") != kSchemaVersion) {
        throw ConfigError(at + ": schema_version " + entry.value + " not supported (expected " +
                          std::to_string(kSchemaVersion) + ")");
      }
      continue;
    }
    try {
      config.set(key, entry.value, Origin::File, at + ":");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      throw ConfigError(msg.rfind(source, 0) == 0 ? msg : at + ": " + msg);
    }
  }
}

}  // namespace adtrw::cli
