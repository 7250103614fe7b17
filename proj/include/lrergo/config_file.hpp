#pragma once

#include <map>
#include <string>
#include <vector>

#include "lrergo/common.hpp"

namespace lrergo {

// Value of one `key = ...` entry: string, number, boolean or (nested) array.
struct ConfigValue {
  enum class Kind { string, number, boolean, array };
  Kind kind = Kind::string;
  std::string str;
  double num = 0;
  bool flag = false;
  std::vector<ConfigValue> arr;
  int line = 0;  // for diagnostics

  const std::string& as_string() const;
  double as_number() const;
  long long as_int() const;  // number that must be integral
  bool as_bool() const;
  const std::vector<ConfigValue>& as_array() const;
  std::vector<double> as_number_array() const;
  std::vector<long long> as_int_array() const;
  std::vector<std::string> as_string_array() const;
};

// Sectioned key-value file, a small slice of TOML: `[section]` headers,
// `key = value` lines, `#` comments, quoted strings with the usual escapes,
// numbers, true/false, and arrays that may span lines until the brackets
// balance. Duplicate keys and sections are rejected. All diagnostics carry
// `path:line:`.
struct ConfigFile {
  std::string path;
  std::map<std::string, std::map<std::string, ConfigValue>> sections;

  bool has(const std::string& section, const std::string& key) const;
  const ConfigValue* find(const std::string& section, const std::string& key) const;
  const ConfigValue& require(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_number(const std::string& section, const std::string& key, double fallback) const;
  long long get_int(const std::string& section, const std::string& key, long long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
};

ConfigFile parse_config(const std::string& text, const std::string& path = "<memory>");
ConfigFile load_config(const std::string& path);

}  // namespace lrergo
