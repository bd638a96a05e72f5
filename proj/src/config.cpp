#include "repgame/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "repgame/errors.hpp"

namespace repgame {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0;
  size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
      }
      section = lower(trim(t.substr(1, t.size() - 2)));
      if (section.empty()) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      }
      cfg.sections_[section];
      continue;
    }
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = lower(trim(t.substr(0, eq)));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    if (section.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any [section]");
    }
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    sec[key] = value;
  }
  return cfg;
}

void ConfigFile::restrict_to(const std::set<std::string>& allowed) const {
  for (const auto& [section, entries] : sections_) {
    for (const auto& [key, value] : entries) {
      (void)value;
      if (!allowed.count(section + "." + key)) {
        throw ConfigError(origin_ + ": unknown config key '" + section + "." + key + "'");
      }
    }
  }
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::raw(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) throw ConfigError(origin_ + ": missing section [" + section + "]");
  const auto k = s->second.find(key);
  if (k == s->second.end()) {
    throw ConfigError(origin_ + ": missing key '" + key + "' in [" + section + "]");
  }
  return k->second;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  return has(section, key) ? raw(section, key) : fallback;
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) const {
  if (!has(section, key)) return fallback;
  try {
    size_t pos = 0;
    const std::string v = raw(section, key);
    const int out = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": '" + section + "." + key + "' is not an integer");
  }
}

std::uint64_t ConfigFile::get_u64(const std::string& section, const std::string& key,
                                  std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  try {
    size_t pos = 0;
    const std::string v = raw(section, key);
    const unsigned long long out = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(out);
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": '" + section + "." + key + "' is not an unsigned integer");
  }
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  if (!has(section, key)) return fallback;
  try {
    size_t pos = 0;
    const std::string v = raw(section, key);
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": '" + section + "." + key + "' is not a number");
  }
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = lower(raw(section, key));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(origin_ + ": '" + section + "." + key + "' is not a boolean");
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(raw(section, key));
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const std::string t = trim(cell);
    if (t.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stod(t, &pos));
      if (pos != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ": bad list entry '" + t + "' in '" + section + "." + key + "'");
    }
  }
  if (out.empty()) {
    throw ConfigError(origin_ + ": empty list for '" + section + "." + key + "'");
  }
  return out;
}

std::vector<int> ConfigFile::get_int_list(const std::string& section,
                                          const std::string& key) const {
  std::vector<int> out;
  for (const double v : get_double_list(section, key)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw ConfigError(origin_ + ": non-integer entry in '" + section + "." + key + "'");
    }
    out.push_back(i);
  }
  return out;
}

int ConfigFile::require_int(const std::string& section, const std::string& key) const {
  if (!has(section, key)) {
    throw ConfigError(origin_ + ": required key '" + section + "." + key + "' is missing");
  }
  return get_int(section, key, 0);
}

}  // namespace repgame
