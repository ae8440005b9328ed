#include "amalgam/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "amalgam/errors.hpp"
#include "amalgam/norms.hpp"

namespace amalgam {

ConfigValue ConfigValue::of(double x) {
  ConfigValue v;
  v.kind = Kind::Number;
  v.number = x;
  return v;
}

ConfigValue ConfigValue::of(const std::string& s) {
  ConfigValue v;
  v.kind = Kind::String;
  v.text = s;
  return v;
}

ConfigValue ConfigValue::of_bool(bool b) {
  ConfigValue v;
  v.kind = Kind::Bool;
  v.flag = b;
  return v;
}

ConfigValue ConfigValue::of(const std::vector<double>& xs) {
  ConfigValue v;
  v.kind = Kind::Array;
  for (double x : xs) v.items.push_back(of(x));
  return v;
}

double ConfigValue::as_number() const {
  if (kind == Kind::Number) return number;
  if (kind == Kind::String) {
    if (text == "inf" || text == "+inf") return kInf;
    if (text == "-inf") return -kInf;
  }
  throw DomainError("invalid config: expected a number");
}

std::vector<double> ConfigValue::as_numbers() const {
  if (kind != Kind::Array) return {as_number()};
  std::vector<double> out;
  out.reserve(items.size());
  for (const ConfigValue& v : items) out.push_back(v.as_number());
  return out;
}

namespace {

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  // Keep floats recognisable as floats.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace

std::string ConfigValue::to_toml() const {
  switch (kind) {
    case Kind::Number: return format_number(number);
    case Kind::String: return quote(text);
    case Kind::Bool: return flag ? "true" : "false";
    case Kind::Array: {
      std::string out = "[";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i].to_toml();
      }
      return out + "]";
    }
  }
  return {};
}

// ============================================================================
// Config accessors

const ConfigValue& Config::at(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw DomainError("invalid config: missing key '" + key + "'");
  return it->second;
}

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? at(key).as_number() : fallback;
}

std::vector<double> Config::numbers(const std::string& key,
                                    const std::vector<double>& fallback) const {
  return has(key) ? at(key).as_numbers() : fallback;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  const ConfigValue& v = at(key);
  if (v.kind != ConfigValue::Kind::String) {
    throw DomainError("invalid config: '" + key + "' must be a string");
  }
  return v.text;
}

std::uint64_t Config::seed(std::uint64_t fallback) const {
  if (!has("seed")) return fallback;
  const double s = at("seed").as_number();
  if (!(s >= 0.0) || s != std::floor(s) || s > 9007199254740992.0) {
    throw DomainError("invalid config: seed must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(s);
}

std::vector<Interval> Config::intervals(const std::string& key,
                                        const std::vector<Interval>& fallback) const {
  if (!has(key)) return fallback;
  const ConfigValue& v = at(key);
  if (v.kind != ConfigValue::Kind::Array) {
    throw DomainError("invalid config: '" + key + "' must be a list of [lo, hi] pairs");
  }
  std::vector<Interval> out;
  for (const ConfigValue& item : v.items) {
    const std::vector<double> pair = item.as_numbers();
    if (pair.size() != 2) {
      throw DomainError("invalid config: '" + key + "' must be a list of [lo, hi] pairs");
    }
    out.push_back({pair[0], pair[1]});
  }
  return out;
}

std::map<std::string, ConfigValue> Config::table(const std::string& prefix) const {
  std::map<std::string, ConfigValue> out;
  const std::string head = prefix + ".";
  for (auto it = entries_.lower_bound(head); it != entries_.end(); ++it) {
    if (it->first.compare(0, head.size(), head) != 0) break;
    out.emplace(it->first.substr(head.size()), it->second);
  }
  return out;
}

FieldSpec Config::field(const std::string& prefix) const {
  const std::string base = prefix.empty() ? "" : prefix + ".";
  FieldSpec spec;
  spec.name = text(base + "field", "");
  if (spec.name.empty()) throw DomainError("invalid config: missing '" + base + "field'");
  for (const auto& [k, v] : table(base + "params")) spec.params[k] = v.as_numbers();
  return spec;
}

// ============================================================================
// Parser

namespace {

class Parser {
public:
  explicit Parser(const std::string& text) : s_(text) {}

  Config run() {
    Config cfg;
    std::string table;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        ++pos_;
        skip_inline_space();
        table = parse_key();
        skip_inline_space();
        expect(']');
        end_of_line();
        continue;
      }
      const std::string key = parse_key();
      skip_inline_space();
      expect('=');
      skip_inline_space();
      const std::string full = table.empty() ? key : table + "." + key;
      parse_value_into(cfg, full);
      end_of_line();
    }
    return cfg;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) line += s_[i] == '\n';
    throw DomainError("invalid config: " + what + " at line " + std::to_string(line));
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_inline_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    }
  }

  void skip_blank_lines() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Whitespace, newlines and comments inside arrays.
  void skip_any_space() {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  void end_of_line() {
    skip_inline_space();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (!eof() && peek() != '\n') fail("unexpected trailing text");
  }

  std::string parse_key_part() {
    if (peek() == '"') return parse_basic_string();
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                      peek() == '-')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  std::string parse_key() {
    std::string key = parse_key_part();
    skip_inline_space();
    while (peek() == '.') {
      ++pos_;
      skip_inline_space();
      key += "." + parse_key_part();
      skip_inline_space();
    }
    return key;
  }

  std::string parse_basic_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (eof()) fail("unterminated string");
      const char e = s_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail("unsupported escape");
      }
    }
    return out;
  }

  std::string parse_literal_string() {
    expect('\'');
    const std::size_t start = pos_;
    while (!eof() && peek() != '\'' && peek() != '\n') ++pos_;
    if (peek() != '\'') fail("unterminated string");
    std::string out = s_.substr(start, pos_ - start);
    ++pos_;
    return out;
  }

  ConfigValue parse_number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == '_')) {
      ++pos_;
    }
    std::string tok;
    for (std::size_t i = start; i < pos_; ++i) {
      if (s_[i] != '_') tok += s_[i];
    }
    if (tok == "inf" || tok == "+inf") return ConfigValue::of(kInf);
    if (tok == "-inf") return ConfigValue::of(-kInf);
    if (tok.find("nan") != std::string::npos) fail("nan is not allowed");
    const char* first = tok.data();
    if (!tok.empty() && tok[0] == '+') ++first;
    double x = 0.0;
    const auto res = std::from_chars(first, tok.data() + tok.size(), x);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || tok.empty()) {
      fail("malformed value '" + tok + "'");
    }
    return ConfigValue::of(x);
  }

  ConfigValue parse_array() {
    expect('[');
    ConfigValue v;
    v.kind = ConfigValue::Kind::Array;
    skip_any_space();
    while (peek() != ']') {
      v.items.push_back(parse_scalar_or_array());
      skip_any_space();
      if (peek() == ',') {
        ++pos_;
        skip_any_space();
      } else if (peek() != ']') {
        fail("expected ',' or ']'");
      }
    }
    ++pos_;
    return v;
  }

  ConfigValue parse_scalar_or_array() {
    const char c = peek();
    if (c == '[') return parse_array();
    if (c == '"') return ConfigValue::of(parse_basic_string());
    if (c == '\'') return ConfigValue::of(parse_literal_string());
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return ConfigValue::of_bool(true);
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return ConfigValue::of_bool(false);
    }
    if (c == '{') fail("inline table not allowed here");
    return parse_number();
  }

  void parse_value_into(Config& cfg, const std::string& key) {
    if (peek() != '{') {
      if (cfg.has(key)) fail("duplicate key '" + key + "'");
      cfg.set(key, parse_scalar_or_array());
      return;
    }
    ++pos_;
    skip_inline_space();
    while (peek() != '}') {
      const std::string sub = parse_key();
      skip_inline_space();
      expect('=');
      skip_inline_space();
      parse_value_into(cfg, key + "." + sub);
      skip_inline_space();
      if (peek() == ',') {
        ++pos_;
        skip_inline_space();
      } else if (peek() != '}') {
        fail("expected ',' or '}'");
      }
    }
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Config parse_config(const std::string& text) { return Parser(text).run(); }

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("invalid config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace amalgam
