// Copyright 2026 The relaycoal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relaycoal/utility_matrix.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <cctype>
#include <stdexcept>

namespace relaycoal {
namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        field += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw std::invalid_argument("line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(field);
  return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (text.empty() || used != text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

const UtilityMatrix::Row* UtilityMatrix::find(const CoalitionStructure& w) const {
  for (const auto& r : rows) {
    if (r.structure == w) return &r;
  }
  return nullptr;
}

UtilityMatrix read_utility_csv(std::istream& in) {
  UtilityMatrix m;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.front() == '#') continue;
    const auto fields = split_csv_line(line, line_no);
    if (!have_header) {
      if (fields.size() < 3 || fields.front() != "structure" || fields.back() != "phi_total") {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": expected header structure,phi_1,...,phi_M,phi_total");
      }
      m.sp_count = static_cast<int>(fields.size()) - 2;
      for (int k = 1; k <= m.sp_count; ++k) {
        if (fields[static_cast<std::size_t>(k)] != "phi_" + std::to_string(k)) {
          throw std::invalid_argument("line " + std::to_string(line_no) + ": header column " +
                                      std::to_string(k + 1) + " must be phi_" + std::to_string(k));
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(m.sp_count) + 2) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(m.sp_count + 2) + " fields");
    }
    UtilityMatrix::Row row;
    try {
      row.structure = CoalitionStructure::parse(fields.front(), m.sp_count);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
    for (int k = 1; k <= m.sp_count; ++k) {
      row.phi.push_back(parse_number(fields[static_cast<std::size_t>(k)], line_no));
    }
    row.phi_total = parse_number(fields.back(), line_no);
    if (m.find(row.structure)) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": duplicate structure " +
                                  row.structure.to_string());
    }
    m.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::invalid_argument("empty utility CSV");
  return m;
}

UtilityMatrix read_utility_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return read_utility_csv(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_utility_csv(std::ostream& out, const UtilityMatrix& matrix) {
  out << "structure";
  for (int k = 1; k <= matrix.sp_count; ++k) out << ",phi_" << k;
  out << ",phi_total\n";
  for (const auto& r : matrix.rows) {
    out << '"' << r.structure.to_string() << '"';
    for (const double v : r.phi) out << ',' << format_number(v);
    out << ',' << format_number(r.phi_total) << '\n';
  }
}

}  // namespace relaycoal
