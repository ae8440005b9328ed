#pragma once

// Minimal TOML reader for suite configs: comments, [tables], dotted keys,
// numbers (inf, nan rejected), strings, booleans, nested arrays and inline
// tables. Inline tables and [table] headers flatten into dotted keys.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amalgam/grid.hpp"

namespace amalgam {

struct ConfigValue {
  enum class Kind { Number, String, Bool, Array };
  Kind kind = Kind::Number;
  double number = 0.0;
  std::string text;
  bool flag = false;
  std::vector<ConfigValue> items;

  static ConfigValue of(double x);
  static ConfigValue of(const std::string& s);
  static ConfigValue of_bool(bool b);
  static ConfigValue of(const std::vector<double>& xs);

  // Numbers, plus the strings "inf" / "-inf".
  double as_number() const;
  std::vector<double> as_numbers() const;
  std::string to_toml() const;
};

class Config {
public:
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const ConfigValue& at(const std::string& key) const;
  void set(const std::string& key, ConfigValue value) { entries_[key] = std::move(value); }

  double number(const std::string& key, double fallback) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::uint64_t seed(std::uint64_t fallback) const;
  std::vector<Interval> intervals(const std::string& key,
                                  const std::vector<Interval>& fallback) const;

  // Keys under prefix + "." with the prefix stripped.
  std::map<std::string, ConfigValue> table(const std::string& prefix) const;
  const std::map<std::string, ConfigValue>& entries() const noexcept { return entries_; }

  // field = "<name>" plus params = {...} under the given table prefix ("" for top level).
  FieldSpec field(const std::string& prefix) const;

private:
  std::map<std::string, ConfigValue> entries_;
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace amalgam
