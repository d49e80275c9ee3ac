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

#ifndef RELAYCOAL_KERNELS_HPP
#define RELAYCOAL_KERNELS_HPP

#include <vector>

#include "relaycoal/coalition_engine.hpp"
#include "relaycoal/utility_allocation.hpp"

namespace relaycoal {

// Data-parallel batch evaluations. Each `_parallel` kernel distributes
// independent items over OpenMP threads; the `_serial` twin is the
// reference it is tested against. Results are identical, not just close:
// every item is computed by the same pure function.

// v(U) for every subset U of the scenario's SP set, indexed by bitmask.
std::vector<double> subset_values_serial(const Scenario& s, const SimulationSettings& settings);
std::vector<double> subset_values_parallel(const Scenario& s, const SimulationSettings& settings);

// One row per structure, in the given order.
UtilityMatrix utility_matrix_serial(const UtilityEvaluator& eval,
                                    const std::vector<CoalitionStructure>& structures);
UtilityMatrix utility_matrix_parallel(const UtilityEvaluator& eval,
                                      const std::vector<CoalitionStructure>& structures);

// Absorbing flag for each structure.
std::vector<char> absorbing_flags_serial(const std::vector<CoalitionStructure>& structures,
                                         const UtilityEvaluator& eval,
                                         SplitRule rule = SplitRule::Strict);
std::vector<char> absorbing_flags_parallel(const std::vector<CoalitionStructure>& structures,
                                           const UtilityEvaluator& eval,
                                           SplitRule rule = SplitRule::Strict);

}  // namespace relaycoal

#endif  // RELAYCOAL_KERNELS_HPP
