// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlslab {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes)
{
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Config Config::from_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& name)
{
  Config cfg;
  cfg.name_ = name;
  cfg.hash_ = fnv1a_hex(text);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: missing '=' at " + name + ":" + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config: empty key at " + name + ":" + std::to_string(lineno));
    cfg.entries_[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const
{
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw std::runtime_error("config: missing key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const
{
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const
{
  const std::string v = get_string(key);
  std::size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size()) throw std::runtime_error("config: bad number for '" + key + "': " + v);
  return x;
}

double Config::get_double(const std::string& key, double fallback) const
{
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const
{
  const std::string v = get_string(key);
  std::size_t pos = 0;
  const int x = std::stoi(v, &pos);
  if (pos != v.size()) throw std::runtime_error("config: bad integer for '" + key + "': " + v);
  return x;
}

int Config::get_int(const std::string& key, int fallback) const
{
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_list(const std::string& key) const
{
  const std::string v = get_string(key);
  std::vector<double> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::runtime_error("config: empty list for '" + key + "'");
  return out;
}

std::vector<double> Config::get_list(const std::string& key, const std::string& fallback) const
{
  if (has(key)) return get_list(key);
  Config tmp;
  tmp.entries_["x"] = fallback;
  return tmp.get_list("x");
}

}  // namespace nlslab
