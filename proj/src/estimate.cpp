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

#include "sisproof/estimate.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sisproof/numeric.hpp"

namespace sis {

namespace {

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEpsilon = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double md = static_cast<double>(m);
        const double m2 = 2.0 * md;
        double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEpsilon) break;
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                             std::lgamma(b) + a * std::log(x) +
                             b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

// Inverse of I_x(a, b) in x, by bisection; I_x is monotone in x.
double beta_quantile(double p, double a, double b) {
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (incomplete_beta(a, b, mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TestObservations::TestObservations(TestSchedule schedule,
                                   std::vector<int> counts,
                                   int observed_components)
    : schedule_(std::move(schedule)),
      counts_(std::move(counts)),
      observed_components_(observed_components) {
    if (observed_components_ < 1) {
        throw std::invalid_argument("K must be at least 1");
    }
    if (static_cast<int>(counts_.size()) != schedule_.test_count()) {
        throw std::invalid_argument(
            "need exactly one failure count per test");
    }
    for (int k : counts_) {
        if (k < 0 || k > observed_components_) {
            throw std::invalid_argument(
                "failure counts must lie in [0, K]");
        }
    }
}

long TestObservations::total_count() const {
    long total = 0;
    for (int k : counts_) total += k;
    return total;
}

double observe_probability(int i, double lambda, double efficiency,
                           const TestSchedule& schedule) {
    if (i < 1 || i > schedule.test_count()) {
        throw std::out_of_range("test index out of range");
    }
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
    double p = efficiency * lambda * schedule.interval(i);
    if (i == schedule.test_count()) {
        p += (1.0 - efficiency) * lambda * schedule.tau();
    }
    return clamp_unit(p);
}

double estimate_lambda(const TestObservations& obs) {
    return static_cast<double>(obs.total_count()) /
           (static_cast<double>(obs.observed_components()) *
            obs.schedule().tau());
}

std::optional<EfficiencyEstimate> estimate_efficiency(
    const TestObservations& obs) {
    const int n = obs.schedule().test_count();
    if (n < 2) {
        throw std::invalid_argument(
            "efficiency is unidentifiable without partial tests");
    }
    const long total = obs.total_count();
    if (total == 0) return std::nullopt;
    long partial = 0;
    for (int i = 0; i < n - 1; ++i) partial += obs.counts()[static_cast<std::size_t>(i)];
    const double raw = obs.schedule().tau() / obs.schedule().time_at(n - 1) *
                       static_cast<double>(partial) /
                       static_cast<double>(total);
    return EfficiencyEstimate{clamp_unit(raw), raw};
}

std::pair<double, double> lambda_confidence_interval(
    const TestObservations& obs, double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("confidence level must lie in (0, 1)");
    }
    const long total = obs.total_count();
    const long trials = obs.observed_components();
    if (total > trials) {
        throw std::invalid_argument(
            "total failure count exceeds K; binomial interval undefined");
    }
    const double alpha = 1.0 - level;
    const double k = static_cast<double>(total);
    const double n = static_cast<double>(trials);
    const double p_lower =
        total == 0 ? 0.0 : beta_quantile(alpha / 2.0, k, n - k + 1.0);
    const double p_upper =
        total == trials ? 1.0 : beta_quantile(1.0 - alpha / 2.0, k + 1.0, n - k);
    const double tau = obs.schedule().tau();
    return {p_lower / tau, p_upper / tau};
}

EstimationResult estimate_parameters(const TestObservations& obs,
                                     double level) {
    EstimationResult result;
    result.lambda_hat = estimate_lambda(obs);
    if (obs.schedule().test_count() >= 2) {
        result.e_hat = estimate_efficiency(obs);
    }
    const auto ci = lambda_confidence_interval(obs, level);
    result.lambda_ci_lower = ci.first;
    result.lambda_ci_upper = ci.second;
    result.confidence_level = level;
    return result;
}

}  // namespace sis
