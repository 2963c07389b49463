#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adtrw::cli {

constexpr int kSchemaVersion = 1;

/// Bad config file, bad flag value or missing parameter. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType {
  Int,
  Real,
  Text,
  Bool,
  Choice,
  Sites,     // "-5..5" or "-2,0,3"
  IntList,   // "1,2,8"
  RealList,  // "0.3,0.5"
  Grid,      // "start:stop:step" or a single time
};

struct ParamSpec {
  std::string key;  // config key; the flag is --key with '_' spelled '-'
  ValueType type = ValueType::Text;
  std::string default_value;  // empty: unset
  std::string help;
  std::vector<std::string> choices;
  bool required = false;
};

std::string flag_name(const std::string& key);

struct ConfigEntry {
  std::string value;
  int line = 0;
};

/// Raw `key = value` pairs in file order.
using RawConfig = std::vector<std::pair<std::string, ConfigEntry>>;

/// Flat `key = value` lines; `#` starts a comment. Throws ConfigError naming
/// the line for malformed lines and duplicate keys.
RawConfig parse_config(std::istream& in, const std::string& source);
RawConfig load_config(const std::string& path);

/// Throws ConfigError when `value` does not parse as `spec.type`.
void check_value(const ParamSpec& spec, const std::string& value, const std::string& where);

std::int64_t parse_int(const std::string& text, const std::string& what);
double parse_real(const std::string& text, const std::string& what);
bool parse_bool(const std::string& text, const std::string& what);
std::vector<int> parse_sites(const std::string& text, const std::string& what);
std::vector<int> parse_int_list(const std::string& text, const std::string& what);
std::vector<double> parse_real_list(const std::string& text, const std::string& what);
std::vector<double> parse_grid(const std::string& text, const std::string& what);

enum class Origin { Default, File, Flag };

/// Resolved parameters of one subcommand: defaults, then the config file,
/// then flags.
class ExperimentConfig {
 public:
  ExperimentConfig(std::string subcommand, std::vector<ParamSpec> schema);

  const std::string& subcommand() const { return subcommand_; }

  void set(const std::string& key, const std::string& value, Origin origin, const std::string& where);

  bool has(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  int small_int(const std::string& key) const;
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<int> sites(const std::string& key) const;
  std::vector<int> int_list(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;
  std::vector<double> grid(const std::string& key) const;

  /// Throws ConfigError for required parameters that are still unset.
  void check_required() const;

  /// (key, value) in schema order, unset keys omitted.
  std::vector<std::pair<std::string, std::string>> echo() const;

 private:
  const ParamSpec& spec(const std::string& key) const;
  std::string subcommand_;
  std::vector<ParamSpec> schema_;
  std::map<std::string, std::pair<std::string, Origin>> values_;
};

/// Applies a config file to `config`. Keys the subcommand does not take are
/// rejected; `schema_version` must match kSchemaVersion.
void apply_config(ExperimentConfig& config, const RawConfig& raw, const std::string& source);

}  // namespace adtrw::cli
