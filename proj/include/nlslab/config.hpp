// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Flat key/value run configuration: UTF-8 text, one `key = value` per line,
// '#' comments. Values are strings with typed accessors; lists are
// comma-separated. The FNV-1a hash of the raw bytes stamps every emitted
// table row so reports are self-describing.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace nlslab {

class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text, const std::string& name = "<inline>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_list(const std::string& key) const;
  std::vector<double> get_list(const std::string& key, const std::string& fallback) const;

  const std::string& hash() const { return hash_; }
  const std::string& name() const { return name_; }

 private:
  std::map<std::string, std::string> entries_;
  std::string hash_ = "0";
  std::string name_;
};

// FNV-1a 64-bit, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace nlslab
