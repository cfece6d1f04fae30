// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlslab::report {

std::string fmt(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void ensure_dir(const std::string& path)
{
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw std::runtime_error("report: cannot create directory " + path);
}

void write_text(const std::string& path, const std::string& content)
{
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot open " + tmp);
    out << content;
    if (!out) throw std::runtime_error("report: write failed on " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<Row>& rows)
{
  std::ostringstream ss;
  for (std::size_t i = 0; i < header.size(); ++i) ss << (i ? "," : "") << header[i];
  ss << "\n";
  for (const Row& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) ss << (i ? "," : "") << r[i];
    ss << "\n";
  }
  write_text(path, ss.str());
}

}  // namespace nlslab::report
