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

#include "sisproof/model.hpp"

namespace sis {

struct OptimizedPolicy {
    TestSchedule schedule;           // t_1* < ... < t_{n-1}* < t_n = tau
    double pfd_avg_star = 0.0;       // exact-mode objective at the optimum
    double reference_pfd_avg = 0.0;  // exact-mode objective at the reference
    double improvement_fraction = 0.0;  // 1 - star / reference
    double u_max_star = 0.0;            // exact-mode max unavailability
    double u_max_reference = 0.0;
    bool flat_objective = false;  // E = 0 (or lambda = 0): schedule is moot
    std::int64_t evaluations = 0;
    int starts = 0;
};

/// Exact-mode PFD_avg of a candidate schedule; the optimization objective.
double evaluate_candidate(const SystemSpec& system, double efficiency,
                          const TestSchedule& schedule);

/// Chooses partial-test instants t_1 <= ... <= t_{n-1} in [0, tau]
/// minimizing the exact PFD_avg, with t_n = tau fixed. Deterministic
/// multi-start coordinate descent over the inter-test gaps (a simplex
/// summing to tau), golden-section line searches per coordinate. The
/// reference and the periodic schedule are always kept as candidates, so
/// the result is never worse than either.
OptimizedPolicy optimize_schedule(const SystemSpec& system, double efficiency,
                                  int n, double tau_hours,
                                  const TestSchedule& reference);

}  // namespace sis
