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

// The three published utility tables, typed in by hand so the shipped CSV
// fixtures can be checked against an independent copy.

#ifndef RELAYCOAL_TESTS_TABLE_FIXTURES_HPP
#define RELAYCOAL_TESTS_TABLE_FIXTURES_HPP

#include <array>
#include <string>

#include "relaycoal/utility_matrix.hpp"

namespace relaycoal::testing {

// Rows w1..w8, columns phi_1, phi_2, phi_3, total.
using Table = std::array<std::array<double, 4>, 8>;

inline constexpr Table kTableC5 = {{{390, 452, 424, 1266},
                                    {407.5, 469.5, 424, 1301},
                                    {390, 480.5, 452.5, 1323},
                                    {402, 452, 436, 1290},
                                    {403, 459, 436, 1298},
                                    {408, 493, 437, 1338},
                                    {416, 484, 474, 1374},
                                    {419.5, 498, 474.5, 1392}}};

inline constexpr Table kTableC15 = {{{390, 452, 424, 1266},
                                     {397.5, 459.5, 424, 1281},
                                     {390, 470.5, 442.5, 1303},
                                     {392, 452, 426, 1270},
                                     {383, 449, 426, 1258},
                                     {398, 483, 417, 1298},
                                     {406, 464, 464, 1334},
                                     {399.5, 478, 454.5, 1332}}};

inline constexpr Table kTableC35 = {{{390, 452, 424, 1266},
                                     {377.5, 439.5, 424, 1241},
                                     {390, 450.5, 422.5, 1263},
                                     {372, 452, 406, 1230},
                                     {343, 429, 406, 1178},
                                     {378, 463, 377, 1218},
                                     {386, 424, 444, 1254},
                                     {359.5, 438, 414.5, 1212}}};

inline std::string data_path(const std::string& file) {
  return std::string(RELAYCOAL_DATA_DIR) + "/" + file;
}

inline UtilityMatrix fixture(int cost) {
  return read_utility_csv_file(data_path("tables_c" + std::to_string(cost) + ".csv"));
}

}  // namespace relaycoal::testing

#endif  // RELAYCOAL_TESTS_TABLE_FIXTURES_HPP
