// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic CSV/JSON emission: fixed formatting, fixed row order, no
// wall-clock content, atomic per-file writes (write temp, rename).
#pragma once

#include <string>
#include <vector>

namespace nlslab::report {

std::string fmt(double v);  // %.12g, locale-independent

using Row = std::vector<std::string>;

void write_text(const std::string& path, const std::string& content);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<Row>& rows);

void ensure_dir(const std::string& path);

}  // namespace nlslab::report
