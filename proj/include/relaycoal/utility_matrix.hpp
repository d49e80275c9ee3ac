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

#ifndef RELAYCOAL_UTILITY_MATRIX_HPP
#define RELAYCOAL_UTILITY_MATRIX_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "relaycoal/coalition_structure.hpp"

namespace relaycoal {

// Per-structure, per-SP allocated utilities phi_m(w).
//
// CSV form: header `structure,phi_1,...,phi_M,phi_total`, one row per
// structure, the structure column quoted, e.g.
//   "{(1,2),(2,3)}",416,484,474,1374
struct UtilityMatrix {
  struct Row {
    CoalitionStructure structure;
    std::vector<double> phi;  // index m - 1
    double phi_total = 0.0;
  };

  int sp_count = 0;
  std::vector<Row> rows;

  const Row* find(const CoalitionStructure& w) const;
};

// Throws std::invalid_argument with a line number on malformed input.
UtilityMatrix read_utility_csv(std::istream& in);
UtilityMatrix read_utility_csv_file(const std::string& path);
void write_utility_csv(std::ostream& out, const UtilityMatrix& matrix);

// Compact number formatting shared by every artifact writer: shortest
// round-trip representation, no trailing zeros.
std::string format_number(double value);

}  // namespace relaycoal

#endif  // RELAYCOAL_UTILITY_MATRIX_HPP
