#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace parl::toml_lite {

/// Scalar or flat array value. Covers the subset of TOML this project's
/// config files need: strings, integers, floats, booleans, and arrays of
/// those; [section] headers flatten into dotted keys.
struct Value {
  enum class Kind { String, Integer, Float, Boolean, Array };
  Kind kind = Kind::String;
  std::string string_value;
  std::int64_t integer_value = 0;
  double float_value = 0.0;
  bool boolean_value = false;
  std::vector<Value> array_value;

  static Value of(std::string s);
  static Value of(std::int64_t i);
  static Value of(double d);
  static Value of(bool b);
  static Value array(std::vector<Value> items);

  double as_number() const;  // integer or float
};

using Table = std::map<std::string, Value>;

/// Throws ConfigError on anything outside the supported subset.
Table parse(const std::string& text);

/// Re-emits a table grouped by section prefix; parse(serialize(t)) == t.
std::string serialize(const Table& table);

}  // namespace parl::toml_lite
