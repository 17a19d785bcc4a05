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

#include "sisproof/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sisproof/combinatorics.hpp"
#include "sisproof/numeric.hpp"

namespace sis {

namespace {

// Interval i (1-based) covering t under the right-continuous convention:
// t in [t_{i-1}, t_i). Returns n + 1 for t = tau (just renewed).
int interval_of(const TestSchedule& schedule, double t) {
    const auto& times = schedule.times();
    if (!(t >= 0.0) || t > schedule.tau()) {
        throw std::out_of_range("t outside [0, tau]");
    }
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    return static_cast<int>(it - times.begin()) + 1;
}

// Component availability evaluated with interval i's expression; valid on
// the closed interval [t_{i-1}, t_i] so that t = t_i yields the left limit.
double component_avail_in(int i, double t, const TestSchedule& schedule,
                          double efficiency, double lambda,
                          EvaluationMode mode) {
    if (lambda == 0.0) return 1.0;
    const double t_prev = schedule.time_at(i - 1);
    if (mode == EvaluationMode::exact) {
        return std::exp(lambda * (efficiency * t_prev - t));
    }
    return clamp_unit(1.0 + efficiency * lambda * t_prev - lambda * t);
}

// System availability with interval i's expression (same closed-interval
// use as component_avail_in). Exact form is the S-coefficient expansion;
// every exponent is <= 0, so terms stay bounded by |S|.
double system_avail_in(int i, double t, const SystemSpec& system,
                       const TestSchedule& schedule, double efficiency,
                       const SCoefficients& coeff, EvaluationMode mode) {
    if (system.lambda == 0.0) return 1.0;
    const double t_prev = schedule.time_at(i - 1);
    if (mode == EvaluationMode::exact) {
        CompensatedSum sum;
        for (int x = coeff.m(); x <= coeff.n_components(); ++x) {
            const double exponent =
                static_cast<double>(x) * system.lambda * (efficiency * t_prev - t);
            sum.add(static_cast<double>(coeff.at(x)) * std::exp(exponent));
        }
        return clamp_unit(sum.value());
    }
    const int order = system.n_components - system.m + 1;
    const double u = system.lambda * (t - efficiency * t_prev);
    const double defect =
        static_cast<double>(binomial(system.n_components, system.m - 1)) *
        std::pow(u, order);
    return clamp_unit(1.0 - defect);
}

// PFD over interval i per the time-averaged expansion; exact or Taylor.
double pfd_interval_in(int i, const SystemSpec& system,
                       const TestSchedule& schedule, double efficiency,
                       const SCoefficients& coeff, EvaluationMode mode) {
    if (system.lambda == 0.0) return 0.0;
    const double t_prev = schedule.time_at(i - 1);
    const double t_i = schedule.time_at(i);
    const double width = t_i - t_prev;
    if (mode == EvaluationMode::exact) {
        CompensatedSum sum;
        for (int x = coeff.m(); x <= coeff.n_components(); ++x) {
            const double xd = static_cast<double>(x);
            const double carry =
                std::exp(-xd * (1.0 - efficiency) * system.lambda * t_prev);
            const double decay = one_minus_exp_over(xd * system.lambda * width);
            sum.add(static_cast<double>(coeff.at(x)) * carry * decay);
        }
        return clamp_unit(1.0 - sum.value());
    }
    const int power = system.n_components - system.m + 2;
    const double head = t_i - efficiency * t_prev;
    const double tail = t_prev * (1.0 - efficiency);
    const double value =
        static_cast<double>(binomial(system.n_components, system.m - 1)) *
        std::pow(system.lambda, power - 1) / static_cast<double>(power) /
        width * (std::pow(head, power) - std::pow(tail, power));
    return clamp_unit(value);
}

}  // namespace

double component_availability(double t, const TestPolicy& policy,
                              double lambda, EvaluationMode mode) {
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    const int i = interval_of(policy.schedule(), t);
    if (i > policy.schedule().test_count()) return 1.0;  // t = tau, renewed
    return component_avail_in(i, t, policy.schedule(), policy.efficiency(),
                              lambda, mode);
}

double system_availability(double t, const SystemSpec& system,
                           const TestPolicy& policy, EvaluationMode mode) {
    const int i = interval_of(policy.schedule(), t);
    if (i > policy.schedule().test_count()) return 1.0;
    const auto coeff = s_coefficients(system.m, system.n_components);
    return system_avail_in(i, t, system, policy.schedule(),
                           policy.efficiency(), coeff, mode);
}

double pfd_interval(int i, const SystemSpec& system, const TestPolicy& policy,
                    EvaluationMode mode) {
    if (i < 1 || i > policy.schedule().test_count()) {
        throw std::out_of_range("test index out of range");
    }
    const auto coeff = s_coefficients(system.m, system.n_components);
    return pfd_interval_in(i, system, policy.schedule(), policy.efficiency(),
                           coeff, mode);
}

PFDReport pfd_average(const SystemSpec& system, const TestPolicy& policy,
                      EvaluationMode mode) {
    const TestSchedule& schedule = policy.schedule();
    const double tau = schedule.tau();
    const int n = schedule.test_count();
    const auto coeff = s_coefficients(system.m, system.n_components);

    PFDReport report;
    report.mode = mode;
    report.per_interval.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        report.per_interval.push_back(
            IntervalPfd{i, schedule.time_at(i - 1), schedule.time_at(i),
                        pfd_interval_in(i, system, schedule,
                                        policy.efficiency(), coeff, mode)});
    }

    if (system.lambda == 0.0) {
        report.pfd_avg = 0.0;
    } else if (mode == EvaluationMode::exact) {
        // Full-interval average: per x, the interval contributions are all
        // positive, so only the outer alternating sum needs compensation.
        CompensatedSum outer;
        for (int x = coeff.m(); x <= coeff.n_components(); ++x) {
            const double xd = static_cast<double>(x);
            double inner = 0.0;
            for (int i = 1; i <= n; ++i) {
                const double t_prev = schedule.time_at(i - 1);
                const double width = schedule.interval(i);
                inner += std::exp(-xd * (1.0 - policy.efficiency()) *
                                  system.lambda * t_prev) *
                         one_minus_exp_over(xd * system.lambda * width) *
                         (width / tau);
            }
            outer.add(static_cast<double>(coeff.at(x)) * inner);
        }
        report.pfd_avg = clamp_unit(1.0 - outer.value());
    } else {
        // Taylor mode: the interval values are already clamped, so average
        // them directly; this keeps the time-weighted decomposition exact
        // and coincides with the closed Taylor sum whenever nothing clamps.
        double acc = 0.0;
        for (const auto& entry : report.per_interval) {
            acc += (entry.t_end - entry.t_begin) / tau * entry.pfd;
        }
        report.pfd_avg = clamp_unit(acc);
    }

    const auto peak = max_unavailability(system, policy, mode);
    report.max_unavailability = peak.value;
    report.max_unavailability_time = peak.time;
    return report;
}

double pfd_average_no_partial(const SystemSpec& system, double tau_hours,
                              EvaluationMode mode) {
    if (!(tau_hours > 0.0) || !std::isfinite(tau_hours)) {
        throw std::invalid_argument("full test interval must be positive");
    }
    if (system.lambda == 0.0) return 0.0;
    if (mode == EvaluationMode::exact) {
        const auto coeff = s_coefficients(system.m, system.n_components);
        CompensatedSum sum;
        for (int x = coeff.m(); x <= coeff.n_components(); ++x) {
            sum.add(static_cast<double>(coeff.at(x)) *
                    one_minus_exp_over(static_cast<double>(x) * system.lambda *
                                       tau_hours));
        }
        return clamp_unit(1.0 - sum.value());
    }
    const int power = system.n_components - system.m + 2;
    const double value =
        static_cast<double>(binomial(system.n_components, system.m - 1)) *
        std::pow(system.lambda * tau_hours, power - 1) /
        static_cast<double>(power);
    return clamp_unit(value);
}

double pfd_average_periodic(const SystemSpec& system, double efficiency, int n,
                            double tau_hours, EvaluationMode mode) {
    if (n < 1) {
        throw std::invalid_argument("number of tests must be at least 1");
    }
    if (!(tau_hours > 0.0) || !std::isfinite(tau_hours)) {
        throw std::invalid_argument("full test interval must be positive");
    }
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
    if (system.lambda == 0.0) return 0.0;
    const double period = tau_hours / static_cast<double>(n);
    if (mode == EvaluationMode::exact) {
        const auto coeff = s_coefficients(system.m, system.n_components);
        CompensatedSum outer;
        for (int x = coeff.m(); x <= coeff.n_components(); ++x) {
            const double xd = static_cast<double>(x);
            const double ratio =
                std::exp(-xd * (1.0 - efficiency) * system.lambda * period);
            double geometric = 0.0;  // sum of ratio^{i-1}, i = 1..n
            double power_term = 1.0;
            for (int i = 1; i <= n; ++i) {
                geometric += power_term;
                power_term *= ratio;
            }
            outer.add(static_cast<double>(coeff.at(x)) *
                      one_minus_exp_over(xd * system.lambda * period) *
                      geometric / static_cast<double>(n));
        }
        return clamp_unit(1.0 - outer.value());
    }
    const int power = system.n_components - system.m + 2;
    const double miss = 1.0 - efficiency;
    double shape = 0.0;
    for (int j = 0; j < n; ++j) {
        const double jd = static_cast<double>(j);
        shape += std::pow(1.0 + jd * miss, power) - std::pow(jd * miss, power);
    }
    const double value =
        static_cast<double>(binomial(system.n_components, system.m - 1)) *
        std::pow(system.lambda * period, power - 1) /
        static_cast<double>(power) * shape / static_cast<double>(n);
    return clamp_unit(value);
}

std::vector<CurvePoint> availability_curve(const SystemSpec& system,
                                           const TestPolicy& policy,
                                           double step_hours,
                                           EvaluationMode mode) {
    if (!(step_hours > 0.0) || !std::isfinite(step_hours)) {
        throw std::invalid_argument("step must be positive");
    }
    const TestSchedule& schedule = policy.schedule();
    const auto coeff = s_coefficients(system.m, system.n_components);
    const int n = schedule.test_count();

    std::vector<CurvePoint> points;
    const auto emit = [&points](double t, double a) {
        points.push_back(CurvePoint{t, a, 1.0 - a});
    };

    emit(0.0, system_avail_in(1, 0.0, system, schedule, policy.efficiency(),
                              coeff, mode));
    for (int i = 1; i <= n; ++i) {
        const double t_prev = schedule.time_at(i - 1);
        const double t_i = schedule.time_at(i);
        // interior grid points, aligned to multiples of the step
        long k = static_cast<long>(std::floor(t_prev / step_hours)) + 1;
        for (; k * step_hours < t_i; ++k) {
            const double t = k * step_hours;
            if (t <= t_prev) continue;
            emit(t, system_avail_in(i, t, system, schedule,
                                    policy.efficiency(), coeff, mode));
        }
        // both one-sided values at the test instant
        emit(t_i, system_avail_in(i, t_i, system, schedule,
                                  policy.efficiency(), coeff, mode));
        emit(t_i, i == n ? 1.0
                         : system_avail_in(i + 1, t_i, system, schedule,
                                           policy.efficiency(), coeff, mode));
    }
    return points;
}

MaxUnavailability max_unavailability(const SystemSpec& system,
                                     const TestPolicy& policy,
                                     EvaluationMode mode) {
    const TestSchedule& schedule = policy.schedule();
    const auto coeff = s_coefficients(system.m, system.n_components);
    MaxUnavailability best{-1.0, 0.0};
    for (int i = 1; i <= schedule.test_count(); ++i) {
        const double t_i = schedule.time_at(i);
        const double u = 1.0 - system_avail_in(i, t_i, system, schedule,
                                               policy.efficiency(), coeff,
                                               mode);
        if (u > best.value) {
            best = MaxUnavailability{u, t_i};
        }
    }
    best.value = clamp_unit(best.value);
    return best;
}

double pfd_average_exact_times(const SystemSpec& system, double efficiency,
                               std::span<const double> times) {
    if (times.empty()) {
        throw std::invalid_argument("schedule needs at least the full test");
    }
    if (system.lambda == 0.0) return 0.0;
    const double tau = times.back();
    const auto coeff = s_coefficients(system.m, system.n_components);
    CompensatedSum outer;
    for (int x = coeff.m(); x <= coeff.n_components(); ++x) {
        const double xd = static_cast<double>(x);
        double inner = 0.0;
        double t_prev = 0.0;
        for (const double t : times) {
            const double width = t - t_prev;
            if (width > 0.0) {
                inner += std::exp(-xd * (1.0 - efficiency) * system.lambda *
                                  t_prev) *
                         one_minus_exp_over(xd * system.lambda * width) *
                         (width / tau);
            }
            t_prev = t;
        }
        outer.add(static_cast<double>(coeff.at(x)) * inner);
    }
    return clamp_unit(1.0 - outer.value());
}

}  // namespace sis
