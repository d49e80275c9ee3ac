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

#include "relaycoal/kernels.hpp"

#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace relaycoal {
namespace {

constexpr int kSubsetSpCap = 16;

std::size_t subset_count(const Scenario& s) {
  if (s.sp_count() > kSubsetSpCap) {
    throw std::invalid_argument("subset evaluation limited to 16 SPs");
  }
  return std::size_t{1} << s.sp_count();
}

// Exceptions may not leave an OpenMP region; the first one is parked here
// and rethrown after the loop.
class FirstError {
 public:
  void capture() {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

UtilityMatrix::Row make_row(const UtilityEvaluator& eval, const CoalitionStructure& w) {
  UtilityMatrix::Row row;
  row.structure = w;
  row.phi = eval.utilities(w);
  row.phi_total = std::accumulate(row.phi.begin(), row.phi.end(), 0.0);
  return row;
}

}  // namespace

std::vector<double> subset_values_serial(const Scenario& s, const SimulationSettings& settings) {
  std::vector<double> values(subset_count(s), 0.0);
  for (std::size_t mask = 1; mask < values.size(); ++mask) {
    values[mask] = characteristic_value(s, static_cast<SpSet>(mask), settings);
  }
  return values;
}

std::vector<double> subset_values_parallel(const Scenario& s, const SimulationSettings& settings) {
  std::vector<double> values(subset_count(s), 0.0);
  const auto n = static_cast<long long>(values.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic)
  for (long long mask = 1; mask < n; ++mask) {
    try {
      values[static_cast<std::size_t>(mask)] =
          characteristic_value(s, static_cast<SpSet>(mask), settings);
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return values;
}

UtilityMatrix utility_matrix_serial(const UtilityEvaluator& eval,
                                    const std::vector<CoalitionStructure>& structures) {
  UtilityMatrix m;
  m.sp_count = eval.sp_count();
  for (const auto& w : structures) m.rows.push_back(make_row(eval, w));
  return m;
}

UtilityMatrix utility_matrix_parallel(const UtilityEvaluator& eval,
                                      const std::vector<CoalitionStructure>& structures) {
  UtilityMatrix m;
  m.sp_count = eval.sp_count();
  m.rows.resize(structures.size());
  const auto n = static_cast<long long>(structures.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    try {
      m.rows[static_cast<std::size_t>(k)] = make_row(eval, structures[static_cast<std::size_t>(k)]);
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return m;
}

std::vector<char> absorbing_flags_serial(const std::vector<CoalitionStructure>& structures,
                                         const UtilityEvaluator& eval, SplitRule rule) {
  std::vector<char> flags;
  flags.reserve(structures.size());
  for (const auto& w : structures) flags.push_back(is_absorbing(w, eval, rule) ? 1 : 0);
  return flags;
}

std::vector<char> absorbing_flags_parallel(const std::vector<CoalitionStructure>& structures,
                                           const UtilityEvaluator& eval, SplitRule rule) {
  std::vector<char> flags(structures.size(), 0);
  const auto n = static_cast<long long>(structures.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    try {
      flags[static_cast<std::size_t>(k)] =
          is_absorbing(structures[static_cast<std::size_t>(k)], eval, rule) ? 1 : 0;
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return flags;
}

}  // namespace relaycoal
