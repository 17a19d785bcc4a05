/*
   Copyright 2026 the sisproof authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sisproof/model.hpp"

namespace sis {

struct SimulationConfig {
    std::int64_t trials = 100000;
    std::uint64_t master_seed = 1;
    /// > 0 adds a sampled availability curve on this grid (hours).
    double time_grid_step = 0.0;
    /// 0 = hardware concurrency. Results are bit-identical for any value.
    int threads = 0;
};

struct SimulationResult {
    double pfd_avg_estimate = 0.0;
    /// Sample std dev of per-trial mean downtime over sqrt(trials);
    /// NaN when trials < 2.
    double standard_error = 0.0;
    std::int64_t trials = 0;
    /// (t, availability fraction) pairs when time_grid_step > 0.
    std::vector<std::pair<double, double>> curve_estimate;
};

/// Monte Carlo estimate of PFD_avg. Each component carries two exponential
/// failure modes: a partial-detectable one (rate E*lambda, restarted at
/// every test) and a full-only one (rate (1-E)*lambda, cleared only at the
/// final full test). Per-trial downtime is integrated exactly from the
/// failure/repair event times, with no grid discretization.
SimulationResult simulate_pfd(const SystemSpec& system,
                              const TestPolicy& policy,
                              const SimulationConfig& config);

/// Fraction of trials with the system up at time t (left limit at test
/// instants), with the binomial standard error.
std::pair<double, double> simulate_availability(const SystemSpec& system,
                                                const TestPolicy& policy,
                                                const SimulationConfig& config,
                                                double t);

}  // namespace sis
