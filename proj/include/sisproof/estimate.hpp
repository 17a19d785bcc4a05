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

#include <optional>
#include <utility>
#include <vector>

#include "sisproof/model.hpp"

namespace sis {

/// Failure counts fed back from executed tests: k_i components found
/// failed at test i, out of K equivalent components observed per test.
class TestObservations {
public:
    TestObservations(TestSchedule schedule, std::vector<int> counts,
                     int observed_components);

    const TestSchedule& schedule() const { return schedule_; }
    const std::vector<int>& counts() const { return counts_; }
    int observed_components() const { return observed_components_; }
    long total_count() const;

private:
    TestSchedule schedule_;
    std::vector<int> counts_;
    int observed_components_;
};

/// Effectiveness estimate: `value` is clamped into [0, 1]; `raw` keeps the
/// unclamped ratio as a diagnostic (noise can push it past 1).
struct EfficiencyEstimate {
    double value;
    double raw;
};

struct EstimationResult {
    double lambda_hat = 0.0;                   // per hour
    std::optional<EfficiencyEstimate> e_hat;   // empty when unidentifiable
    double lambda_ci_lower = 0.0;              // per hour
    double lambda_ci_upper = 0.0;              // per hour
    double confidence_level = 0.0;
};

/// Probability that one component is seen failed at test i, under the
/// linearized observation model. Partial tests see only the detectable
/// share accumulated since the previous test; the full test additionally
/// reveals everything the partial tests missed over the whole interval.
double observe_probability(int i, double lambda, double efficiency,
                           const TestSchedule& schedule);

/// lambda_hat = (sum of counts) / (K * tau).
double estimate_lambda(const TestObservations& obs);

/// E_hat = (tau / t_{n-1}) * (partial-test counts / all counts), clamped.
/// Needs at least one partial test (n >= 2); empty when no failures were
/// observed at all.
std::optional<EfficiencyEstimate> estimate_efficiency(
    const TestObservations& obs);

/// Exact (Clopper-Pearson) binomial interval on the aggregate proportion
/// sum(k)/K, divided by tau — the standard F-quantile interval evaluated
/// through the regularized incomplete beta function.
std::pair<double, double> lambda_confidence_interval(
    const TestObservations& obs, double level);

/// Bundles the three estimators; e_hat is left empty when n < 2.
EstimationResult estimate_parameters(const TestObservations& obs,
                                     double level);

}  // namespace sis
