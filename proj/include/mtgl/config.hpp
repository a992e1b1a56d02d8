#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mtgl {

/**
 * Flat `key = value` text configuration. `#` starts a comment, blank lines
 * are ignored, duplicate keys are errors. Every typed getter marks its key as
 * used; reject_unknown() then fails on anything left over, so typos surface.
 */
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, const std::string& source);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> take(const std::string& key);
  std::string require(const std::string& key);

  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key, double fallback);
  std::optional<double> get_optional_double(const std::string& key);
  std::size_t get_size(const std::string& key, std::size_t fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<double> get_doubles(const std::string& key);
  std::vector<std::size_t> get_sizes(const std::string& key, std::vector<std::size_t> fallback);
  std::vector<std::string> get_strings(const std::string& key);

  void reject_unknown() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, std::string> entries_;
  std::set<std::string> used_;
};

/// Strict numeric parsing (whole string must be consumed); `what` names the value in errors.
double parse_double(const std::string& text, const std::string& what);
std::uint64_t parse_u64(const std::string& text, const std::string& what);

}  // namespace mtgl
