#pragma once

// Flat key-value experiment configs: one `section.key = value` per line,
// `#` comments, comma-separated lists. Values stay strings until typed
// access; every failure names the key.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace remo {

class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;

  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::optional<std::string> raw(const std::string& key) const;
  std::map<std::string, std::string> entries_;
};

}  // namespace remo
