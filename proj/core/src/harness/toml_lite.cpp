#include "parl/harness/toml_lite.hpp"

#include <cctype>
#include <sstream>

#include "parl/errors.hpp"

namespace parl::toml_lite {

Value Value::of(std::string s) {
  Value v;
  v.kind = Kind::String;
  v.string_value = std::move(s);
  return v;
}

Value Value::of(std::int64_t i) {
  Value v;
  v.kind = Kind::Integer;
  v.integer_value = i;
  return v;
}

Value Value::of(double d) {
  Value v;
  v.kind = Kind::Float;
  v.float_value = d;
  return v;
}

Value Value::of(bool b) {
  Value v;
  v.kind = Kind::Boolean;
  v.boolean_value = b;
  return v;
}

Value Value::array(std::vector<Value> items) {
  Value v;
  v.kind = Kind::Array;
  v.array_value = std::move(items);
  return v;
}

double Value::as_number() const {
  if (kind == Kind::Integer) return static_cast<double>(integer_value);
  if (kind == Kind::Float) return float_value;
  throw ConfigError("toml value is not numeric");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Strips a trailing comment that is not inside a string literal.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

Value parse_scalar(std::string_view text);

Value parse_array(std::string_view text) {
  // text includes the surrounding brackets
  std::vector<Value> items;
  std::string_view inner = trim(text.substr(1, text.size() - 2));
  while (!inner.empty()) {
    std::size_t end = 0;
    bool in_string = false;
    while (end < inner.size() && (inner[end] != ',' || in_string)) {
      if (inner[end] == '"') in_string = !in_string;
      ++end;
    }
    const std::string_view item = trim(inner.substr(0, end));
    if (!item.empty()) items.push_back(parse_scalar(item));
    inner = end < inner.size() ? trim(inner.substr(end + 1)) : std::string_view{};
  }
  return Value::array(std::move(items));
}

Value parse_scalar(std::string_view text) {
  if (text.empty()) throw ConfigError("toml: empty value");
  if (text.front() == '[') {
    if (text.back() != ']') throw ConfigError("toml: unterminated array");
    return parse_array(text);
  }
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"')
      throw ConfigError("toml: unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      if (text[i] == '\\' && i + 2 < text.size()) {
        ++i;
        switch (text[i]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: throw ConfigError("toml: unsupported escape in string");
        }
      } else {
        out += text[i];
      }
    }
    return Value::of(std::move(out));
  }
  if (text == "true") return Value::of(true);
  if (text == "false") return Value::of(false);

  const std::string s(text);
  const bool looks_float = s.find_first_of(".eE") != std::string::npos;
  try {
    if (!looks_float) {
      std::size_t used = 0;
      const std::int64_t i = std::stoll(s, &used);
      if (used == s.size()) return Value::of(i);
    }
    std::size_t used = 0;
    const double d = std::stod(s, &used);
    if (used == s.size()) return Value::of(d);
  } catch (const std::exception&) {
    // fall through
  }
  throw ConfigError("toml: cannot parse value: " + s);
}

}  // namespace

Table parse(const std::string& text) {
  Table table;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("toml line " + std::to_string(line_no) + ": bad section");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty())
        throw ConfigError("toml line " + std::to_string(line_no) + ": empty section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("toml line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty())
      throw ConfigError("toml line " + std::to_string(line_no) + ": empty key");
    const std::string full_key = section.empty() ? key : section + "." + key;
    table[full_key] = parse_scalar(trim(line.substr(eq + 1)));
  }
  return table;
}

namespace {

std::string emit_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::String: {
      std::string out = "\"";
      for (char c : v.string_value) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
          out += "\\n";
          continue;
        }
        out += c;
      }
      return out + "\"";
    }
    case Value::Kind::Integer:
      return std::to_string(v.integer_value);
    case Value::Kind::Float: {
      std::ostringstream out;
      out << v.float_value;
      std::string s = out.str();
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      return s;
    }
    case Value::Kind::Boolean:
      return v.boolean_value ? "true" : "false";
    case Value::Kind::Array: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.array_value.size(); ++i) {
        if (i > 0) out += ", ";
        out += emit_value(v.array_value[i]);
      }
      return out + "]";
    }
  }
  throw ConfigError("toml: unknown value kind");
}

}  // namespace

std::string serialize(const Table& table) {
  // Top-level keys must precede every section header, otherwise they would
  // be re-parsed as members of the preceding section.
  std::ostringstream out;
  for (const auto& [full_key, value] : table) {
    if (full_key.find('.') == std::string::npos)
      out << full_key << " = " << emit_value(value) << '\n';
  }
  std::string current_section;
  for (const auto& [full_key, value] : table) {
    const auto dot = full_key.rfind('.');
    if (dot == std::string::npos) continue;
    const std::string section = full_key.substr(0, dot);
    const std::string key = full_key.substr(dot + 1);
    if (section != current_section) {
      out << "\n[" << section << "]\n";
      current_section = section;
    }
    out << key << " = " << emit_value(value) << '\n';
  }
  return out.str();
}

}  // namespace parl::toml_lite
