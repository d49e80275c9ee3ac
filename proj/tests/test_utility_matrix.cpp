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

#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "relaycoal/utility_matrix.hpp"

namespace relaycoal {
namespace {

TEST_CASE("utility csv round trip") {
  std::istringstream in(
      "structure,phi_1,phi_2,phi_total\n"
      "\"{}\",1.5,2,3.5\n"
      "\"{(1,2)}\",4,5.25,9.25\n");
  const auto m = read_utility_csv(in);
  CHECK(m.sp_count == 2);
  REQUIRE(m.rows.size() == 2);
  CHECK(m.rows[1].phi == std::vector<double>{4.0, 5.25});
  CHECK(m.find(CoalitionStructure::grand(2)) == &m.rows[1]);

  std::ostringstream out;
  write_utility_csv(out, m);
  CHECK(out.str() == "structure,phi_1,phi_2,phi_total\n\"{}\",1.5,2,3.5\n\"{(1,2)}\",4,5.25,9.25\n");
  std::istringstream back(out.str());
  const auto again = read_utility_csv(back);
  CHECK(again.rows.size() == 2);
  CHECK(again.rows[0].phi_total == 3.5);
}

TEST_CASE("utility csv errors name the line") {
  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_utility_csv(in);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("structure,phi_2,phi_total\n").find("header") != std::string::npos);
  CHECK(error_of("structure,phi_1,phi_total\n\"{}\",1\n").find("line 2") != std::string::npos);
  CHECK(error_of("structure,phi_1,phi_2,phi_total\n\"{}\",1,2,3\n\"{}\",1,2,3\n").find("line 3") !=
        std::string::npos);
  CHECK(error_of("structure,phi_1,phi_2,phi_total\n\"{(1,5)}\",1,2,3\n").find("line 2") !=
        std::string::npos);
  CHECK(error_of("structure,phi_1,phi_2,phi_total\n\"{}\",1,x,3\n").find("line 2") != std::string::npos);
  CHECK(error_of("").size() > 0);
}

TEST_CASE("number formatting is shortest round trip") {
  CHECK(format_number(419.5) == "419.5");
  CHECK(format_number(1266.0) == "1266");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-2.25) == "-2.25");
}

}  // namespace
}  // namespace relaycoal
