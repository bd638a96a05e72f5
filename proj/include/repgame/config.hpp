#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace repgame {

// Minimal INI: [section] headers, key = value lines, # or ; comments.
// Values keep inner whitespace; keys and sections are lowercased.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text, const std::string& origin);

  // Rejects any present section.key outside the allowed set (strict schema).
  void restrict_to(const std::set<std::string>& allowed) const;

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key) const;
  std::vector<int> get_int_list(const std::string& section,
                                const std::string& key) const;

  int require_int(const std::string& section, const std::string& key) const;

  const std::string& origin() const { return origin_; }

 private:
  std::string raw(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string origin_;
};

}  // namespace repgame
