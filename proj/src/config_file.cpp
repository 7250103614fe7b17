#include "lrergo/config_file.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace lrergo {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
  throw config_error(path + ":" + std::to_string(line) + ": " + msg);
}

const char* kind_name(ConfigValue::Kind k) {
  switch (k) {
    case ConfigValue::Kind::string: return "string";
    case ConfigValue::Kind::number: return "number";
    case ConfigValue::Kind::boolean: return "boolean";
    case ConfigValue::Kind::array: return "array";
  }
  return "?";
}

[[noreturn]] void wrong_kind(const ConfigValue& v, const char* wanted) {
  throw config_error("config value at line " + std::to_string(v.line) + " is a " +
                     kind_name(v.kind) + ", expected a " + wanted);
}

// Cursor over one logical line (arrays may have glued several input lines).
struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  const std::string& path;
  int line;

  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) ++i;
  }
  [[noreturn]] void err(const std::string& msg) const { fail(path, line, msg); }
};

ConfigValue parse_value(Cursor& c);

ConfigValue parse_string(Cursor& c) {
  ConfigValue v;
  v.kind = ConfigValue::Kind::string;
  v.line = c.line;
  ++c.i;  // opening quote
  while (!c.done() && c.peek() != '"') {
    char ch = c.s[c.i++];
    if (ch == '\\') {
      if (c.done()) c.err("dangling escape in string");
      char esc = c.s[c.i++];
      switch (esc) {
        case '"': v.str += '"'; break;
        case '\\': v.str += '\\'; break;
        case 'n': v.str += '\n'; break;
        case 't': v.str += '\t'; break;
        default: c.err(std::string("unknown escape \\") + esc);
      }
    } else {
      v.str += ch;
    }
  }
  if (c.done()) c.err("unterminated string");
  ++c.i;  // closing quote
  return v;
}

ConfigValue parse_array(Cursor& c) {
  ConfigValue v;
  v.kind = ConfigValue::Kind::array;
  v.line = c.line;
  ++c.i;  // '['
  c.skip_ws();
  bool expect_value = true;
  while (!c.done()) {
    if (c.peek() == ']') {
      ++c.i;
      return v;
    }
    if (!expect_value) c.err("expected ',' or ']' in array");
    v.arr.push_back(parse_value(c));
    c.skip_ws();
    expect_value = false;
    if (!c.done() && c.peek() == ',') {
      ++c.i;
      c.skip_ws();
      expect_value = true;
    }
  }
  c.err("unterminated array");
}

ConfigValue parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) c.err("missing value");
  char ch = c.peek();
  if (ch == '"') return parse_string(c);
  if (ch == '[') return parse_array(c);

  std::size_t start = c.i;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != ' ' && c.peek() != '\t' &&
         c.peek() != '\n')
    ++c.i;
  std::string tok = c.s.substr(start, c.i - start);
  ConfigValue v;
  v.line = c.line;
  if (tok == "true" || tok == "false") {
    v.kind = ConfigValue::Kind::boolean;
    v.flag = tok == "true";
    return v;
  }
  if (tok == "inf" || tok == "+inf") {
    v.kind = ConfigValue::Kind::number;
    v.num = std::numeric_limits<double>::infinity();
    return v;
  }
  char* end = nullptr;
  double num = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    c.err("cannot parse value '" + tok + "' (expected string, number, bool or array)");
  v.kind = ConfigValue::Kind::number;
  v.num = num;
  return v;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (c == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

int bracket_delta(const std::string& line) {
  int delta = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (in_string) continue;
    if (c == '[') ++delta;
    if (c == ']') --delta;
  }
  return delta;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::string& ConfigValue::as_string() const {
  if (kind != Kind::string) wrong_kind(*this, "string");
  return str;
}

double ConfigValue::as_number() const {
  if (kind != Kind::number) wrong_kind(*this, "number");
  return num;
}

long long ConfigValue::as_int() const {
  double n = as_number();
  if (std::floor(n) != n || std::abs(n) > 9.0e18)
    throw config_error("config value at line " + std::to_string(line) + " must be an integer");
  return static_cast<long long>(n);
}

bool ConfigValue::as_bool() const {
  if (kind != Kind::boolean) wrong_kind(*this, "boolean");
  return flag;
}

const std::vector<ConfigValue>& ConfigValue::as_array() const {
  if (kind != Kind::array) wrong_kind(*this, "array");
  return arr;
}

std::vector<double> ConfigValue::as_number_array() const {
  std::vector<double> out;
  for (const auto& v : as_array()) out.push_back(v.as_number());
  return out;
}

std::vector<long long> ConfigValue::as_int_array() const {
  std::vector<long long> out;
  for (const auto& v : as_array()) out.push_back(v.as_int());
  return out;
}

std::vector<std::string> ConfigValue::as_string_array() const {
  std::vector<std::string> out;
  for (const auto& v : as_array()) out.push_back(v.as_string());
  return out;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const ConfigValue* ConfigFile::find(const std::string& section, const std::string& key) const {
  auto s = sections.find(section);
  if (s == sections.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

const ConfigValue& ConfigFile::require(const std::string& section, const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v)
    throw config_error(path + ": missing required key '" + key + "' in section [" + section + "]");
  return *v;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  const ConfigValue* v = find(section, key);
  return v ? v->as_string() : fallback;
}

double ConfigFile::get_number(const std::string& section, const std::string& key,
                              double fallback) const {
  const ConfigValue* v = find(section, key);
  return v ? v->as_number() : fallback;
}

long long ConfigFile::get_int(const std::string& section, const std::string& key,
                              long long fallback) const {
  const ConfigValue* v = find(section, key);
  return v ? v->as_int() : fallback;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  const ConfigValue* v = find(section, key);
  return v ? v->as_bool() : fallback;
}

ConfigFile parse_config(const std::string& text, const std::string& path) {
  ConfigFile cf;
  cf.path = path;
  std::string section;  // keys before any header land in ""

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    int start_line = lineno;
    std::string line = strip_comment(raw);

    // Glue continuation lines while an array is open.
    int depth = bracket_delta(line);
    while (depth > 0) {
      std::string next;
      if (!std::getline(is, next)) fail(path, start_line, "unterminated array");
      ++lineno;
      next = strip_comment(next);
      line += "\n" + next;
      depth += bracket_delta(next);
    }
    if (depth < 0) fail(path, start_line, "unbalanced ']'");

    std::string t = trim(line);
    if (t.empty()) continue;

    if (t.front() == '[') {
      if (t.back() != ']') fail(path, start_line, "malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (!valid_key(section)) fail(path, start_line, "invalid section name '" + section + "'");
      if (cf.sections.count(section)) fail(path, start_line, "duplicate section [" + section + "]");
      cf.sections[section];
      continue;
    }

    std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail(path, start_line, "expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    if (!valid_key(key)) fail(path, start_line, "invalid key '" + key + "'");
    if (cf.sections[section].count(key))
      fail(path, start_line, "duplicate key '" + key + "' in section [" + section + "]");

    std::string rest = t.substr(eq + 1);
    Cursor c{rest, 0, path, start_line};
    ConfigValue v = parse_value(c);
    c.skip_ws();
    if (!c.done()) c.err("trailing characters after value");
    v.line = start_line;
    cf.sections[section][key] = std::move(v);
  }
  return cf;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace lrergo
