#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tracecluster {

/// Flat `key = value` file. '#' starts a comment, values may be quoted, and
/// lists are comma separated, optionally in brackets: `seeds = [1, 2, 3]`.
/// Section headers `[name]` prefix the following keys with "name.".
/// Ranges `a..b` expand inside integer lists.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;
  /// Throws kInvalidConfig on a line without '=' or a repeated key.
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig read(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  /// Typed lookups; each throws kInvalidConfig when the value does not parse.
  std::optional<double> get_double(const std::string& key) const;
  std::optional<std::int64_t> get_int(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::optional<std::vector<std::string>> get_list(const std::string& key) const;
  std::optional<std::vector<std::int64_t>> get_int_list(const std::string& key) const;
  std::optional<std::vector<double>> get_double_list(const std::string& key) const;

  /// Throws kInvalidConfig naming the first key not in `known`.
  void reject_unknown(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace tracecluster
