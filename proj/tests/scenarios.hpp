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

// Randomized analytic-vs-simulation agreement suite, shared between the
// simulator unit tests and the acceptance run.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sisproof/analytic.hpp"
#include "sisproof/model.hpp"
#include "sisproof/simulate.hpp"

namespace scenarios {

struct AgreementOutcome {
    int total = 0;
    int within = 0;
    std::vector<std::string> misses;
};

// 30 randomized scenarios: M <= N <= 6, lambda*tau in [0.01, 1],
// E in {0, 0.42, 1}, n in {1, 3, 5}, random schedule shapes. A scenario
// agrees when the exact analytic PFD_avg lies within `sigmas` standard
// errors of the Monte Carlo estimate.
inline AgreementOutcome run_agreement_suite(std::int64_t trials,
                                            double sigmas) {
    std::mt19937 gen(2718281);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double efficiencies[] = {0.0, 0.42, 1.0};
    const int test_counts[] = {1, 3, 5};

    AgreementOutcome outcome;
    for (int scenario = 0; scenario < 30; ++scenario) {
        const int n_components = 1 + static_cast<int>(gen() % 6);
        const int m = 1 + static_cast<int>(gen() % n_components);
        const double lambda_tau = 0.01 + 0.99 * unit(gen);
        const double tau = 8760.0;
        const double lambda = lambda_tau / tau;
        const double efficiency = efficiencies[gen() % 3];
        const int n = test_counts[gen() % 3];

        std::vector<double> times;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += 0.1 + unit(gen);
            times.push_back(acc);
        }
        for (double& t : times) t *= tau / acc;
        times.back() = tau;

        const sis::SystemSpec system =
            sis::validate_system(m, n_components, lambda);
        const sis::TestPolicy policy(sis::TestSchedule(times), efficiency);

        const double analytic =
            sis::pfd_average(system, policy, sis::EvaluationMode::exact)
                .pfd_avg;
        sis::SimulationConfig config;
        config.trials = trials;
        config.master_seed = 77000 + static_cast<std::uint64_t>(scenario);
        const sis::SimulationResult sim =
            sis::simulate_pfd(system, policy, config);

        ++outcome.total;
        const double gap = std::abs(sim.pfd_avg_estimate - analytic);
        if (sim.standard_error > 0.0
                ? gap <= sigmas * sim.standard_error
                : gap == 0.0) {
            ++outcome.within;
        } else {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "scenario %d (%doo%d, lt=%.3f, E=%.2f, n=%d): "
                          "analytic %.4e vs sim %.4e +/- %.2e",
                          scenario, m, n_components, lambda_tau, efficiency,
                          n, analytic, sim.pfd_avg_estimate,
                          sim.standard_error);
            outcome.misses.emplace_back(buf);
        }
    }
    return outcome;
}

}  // namespace scenarios
