#include "mtgl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mtgl/error.hpp"

namespace mtgl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return HUGE_VAL;
  double v = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) throw config_error(what + ": not a number: '" + text + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw config_error(what + ": not a nonnegative integer: '" + text + "'");
  }
  return v;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error(source + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error(source + ":" + std::to_string(lineno) + ": empty key");
    if (!cfg.entries_.emplace(key, value).second) {
      throw config_error(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file " + path.string());
  return parse(in, path.string());
}

std::optional<std::string> KeyValueConfig::take(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  used_.insert(key);
  return it->second;
}

std::string KeyValueConfig::require(const std::string& key) {
  auto v = take(key);
  if (!v) throw config_error(source_ + ": missing required key '" + key + "'");
  return *v;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
  return take(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
  auto v = take(key);
  return v ? parse_double(*v, source_ + ": key '" + key + "'") : fallback;
}

std::optional<double> KeyValueConfig::get_optional_double(const std::string& key) {
  auto v = take(key);
  if (!v) return std::nullopt;
  return parse_double(*v, source_ + ": key '" + key + "'");
}

std::size_t KeyValueConfig::get_size(const std::string& key, std::size_t fallback) {
  auto v = take(key);
  return v ? static_cast<std::size_t>(parse_u64(*v, source_ + ": key '" + key + "'")) : fallback;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) {
  auto v = take(key);
  return v ? parse_u64(*v, source_ + ": key '" + key + "'") : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) {
  auto v = take(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw config_error(source_ + ": key '" + key + "': expected true or false, got '" + *v + "'");
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) {
  std::vector<double> out;
  if (auto v = take(key)) {
    for (const auto& item : split_list(*v)) out.push_back(parse_double(item, source_ + ": key '" + key + "'"));
  }
  return out;
}

std::vector<std::size_t> KeyValueConfig::get_sizes(const std::string& key, std::vector<std::size_t> fallback) {
  auto v = take(key);
  if (!v) return fallback;
  std::vector<std::size_t> out;
  for (const auto& item : split_list(*v)) {
    out.push_back(static_cast<std::size_t>(parse_u64(item, source_ + ": key '" + key + "'")));
  }
  return out;
}

std::vector<std::string> KeyValueConfig::get_strings(const std::string& key) {
  auto v = take(key);
  return v ? split_list(*v) : std::vector<std::string>{};
}

void KeyValueConfig::reject_unknown() const {
  for (const auto& [key, value] : entries_) {
    if (!used_.count(key)) throw config_error(source_ + ": unknown key '" + key + "'");
  }
}

}  // namespace mtgl
