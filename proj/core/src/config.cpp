#include "remo/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "remo/errors.hpp"

namespace remo {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    cfg.entries_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

std::optional<std::string> KeyValueConfig::raw(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const auto v = raw(key);
  if (!v) throw ConfigError(key, "missing required value");
  try {
    std::size_t pos = 0;
    const double x = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing text");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + *v + "'");
  }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t KeyValueConfig::get_int(const std::string& key) const {
  const auto v = raw(key);
  if (!v) throw ConfigError(key, "missing required value");
  std::int64_t x = 0;
  const auto r = std::from_chars(v->data(), v->data() + v->size(), x);
  if (r.ec != std::errc{} || r.ptr != v->data() + v->size())
    throw ConfigError(key, "expected an integer, got '" + *v + "'");
  return x;
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueConfig::get_uint(const std::string& key) const {
  const auto v = raw(key);
  if (!v) throw ConfigError(key, "missing required value");
  std::uint64_t x = 0;
  const auto r = std::from_chars(v->data(), v->data() + v->size(), x);
  if (r.ec != std::errc{} || r.ptr != v->data() + v->size())
    throw ConfigError(key, "expected a non-negative integer, got '" + *v + "'");
  return x;
}

std::uint64_t KeyValueConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? get_uint(key) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  std::string s = *v;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key, "expected a boolean, got '" + *v + "'");
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto v = raw(key);
  if (!v) throw ConfigError(key, "missing required value");
  return *v;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  const auto v = raw(key);
  if (!v) throw ConfigError(key, "missing required value");
  std::vector<double> out;
  for (const auto& item : split_list(*v)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ConfigError(key, "expected a list of numbers, got '" + *v + "'");
    }
  }
  if (out.empty()) throw ConfigError(key, "list is empty");
  return out;
}

std::vector<std::string> KeyValueConfig::get_string_list(const std::string& key) const {
  const auto v = raw(key);
  if (!v) throw ConfigError(key, "missing required value");
  const auto out = split_list(*v);
  if (out.empty()) throw ConfigError(key, "list is empty");
  return out;
}

}  // namespace remo
