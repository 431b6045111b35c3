#include "tracecluster/config.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>

#include "tracecluster/csv.hpp"
#include "tracecluster/error.hpp"

namespace tracecluster {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

// strips a trailing comment that is not inside quotes
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw Error(ErrorKind::kInvalidConfig, fmt::format("'{}' = '{}' is not {}", key, value, expected));
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig out;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string_view::npos) {
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kInvalidConfig, fmt::format("line {}: expected key = value", line_no));
    }
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw Error(ErrorKind::kInvalidConfig, fmt::format("line {}: empty key", line_no));
    if (!section.empty()) key = section + "." + key;
    if (!out.values_.emplace(key, unquote(line.substr(eq + 1))).second) {
      throw Error(ErrorKind::kInvalidConfig, fmt::format("line {}: '{}' set twice", line_no, key));
    }
  }
  return out;
}

KeyValueConfig KeyValueConfig::read(const std::filesystem::path& path) { return parse(csv::read_file(path)); }

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  try {
    std::size_t used = 0;
    const double x = std::stod(*v, &used);
    if (used != v->size()) bad_value(key, *v, "a number");
    return x;
  } catch (const std::logic_error&) {
    bad_value(key, *v, "a number");
  }
}

std::optional<std::int64_t> KeyValueConfig::get_int(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::int64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
  if (ec != std::errc{} || ptr != v->data() + v->size()) bad_value(key, *v, "an integer");
  return x;
}

std::optional<bool> KeyValueConfig::get_bool(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::string s = *v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, *v, "a boolean");
}

std::optional<std::vector<std::string>> KeyValueConfig::get_list(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::string_view s = trim(*v);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  while (!trim(s).empty()) {
    const std::size_t comma = s.find(',');
    const std::string item = unquote(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

std::optional<std::vector<std::int64_t>> KeyValueConfig::get_int_list(const std::string& key) const {
  const auto items = get_list(key);
  if (!items) return std::nullopt;
  auto to_int = [&](std::string_view s) {
    std::int64_t x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) bad_value(key, std::string(s), "an integer");
    return x;
  };
  std::vector<std::int64_t> out;
  for (const auto& item : *items) {
    const std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const std::int64_t lo = to_int(trim(std::string_view(item).substr(0, dots)));
    const std::int64_t hi = to_int(trim(std::string_view(item).substr(dots + 2)));
    for (std::int64_t x = lo; x <= hi; ++x) out.push_back(x);
  }
  return out;
}

std::optional<std::vector<double>> KeyValueConfig::get_double_list(const std::string& key) const {
  const auto items = get_list(key);
  if (!items) return std::nullopt;
  std::vector<double> out;
  for (const auto& item : *items) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) bad_value(key, item, "a number");
    } catch (const std::logic_error&) {
      bad_value(key, item, "a number");
    }
  }
  return out;
}

void KeyValueConfig::reject_unknown(const std::vector<std::string>& known) const {
  for (const auto& [key, value] : values_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorKind::kInvalidConfig, fmt::format("unknown key '{}'", key));
    }
  }
}

}  // namespace tracecluster
