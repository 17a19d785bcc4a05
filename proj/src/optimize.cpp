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

#include "sisproof/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sisproof/analytic.hpp"

namespace sis {

namespace {

constexpr double kRelativeTolerance = 1e-12;
constexpr std::int64_t kEvaluationBudgetPerStart = 10000;
constexpr int kMaxLatticeBits = 7;  // lattice starts capped at 2^7

std::vector<double> gaps_of(const TestSchedule& schedule) {
    std::vector<double> gaps;
    gaps.reserve(static_cast<std::size_t>(schedule.test_count()));
    for (int i = 1; i <= schedule.test_count(); ++i) {
        gaps.push_back(schedule.interval(i));
    }
    return gaps;
}

std::vector<double> times_of(const std::vector<double>& gaps, double tau) {
    std::vector<double> times(gaps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        acc += gaps[i];
        times[i] = acc;
    }
    times.back() = tau;
    return times;
}

// Objective wrapper counting evaluations.
struct Objective {
    const SystemSpec& system;
    double efficiency;
    double tau;
    std::int64_t evaluations = 0;

    double operator()(const std::vector<double>& gaps) {
        ++evaluations;
        const auto times = times_of(gaps, tau);
        return pfd_average_exact_times(system, efficiency, times);
    }
};

// Set gap j to `value` and rescale the others so the total stays tau.
void renormalize(std::vector<double>& gaps, std::size_t j, double value,
                 double tau) {
    double others = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (i != j) others += gaps[i];
    }
    const double remaining = tau - value;
    if (others > 0.0) {
        const double scale = remaining / others;
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            if (i != j) gaps[i] *= scale;
        }
    } else {
        const double share =
            remaining / static_cast<double>(gaps.size() - 1);
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            if (i != j) gaps[i] = share;
        }
    }
    gaps[j] = value;
}

// Golden-section line search for gap j over [0, tau], refined until the
// bracket shrinks below 1e-10 * tau or the evaluation budget runs out.
double line_search(Objective& objective, std::vector<double>& gaps,
                   std::size_t j, double tau, double current_best,
                   std::int64_t budget) {
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 0.0;
    double hi = tau;
    std::vector<double> probe = gaps;

    const auto eval_at = [&](double v) {
        probe = gaps;
        renormalize(probe, j, v, tau);
        return objective(probe);
    };

    double u = hi - kInvPhi * (hi - lo);
    double v = lo + kInvPhi * (hi - lo);
    double fu = eval_at(u);
    double fv = eval_at(v);
    while (hi - lo > 1e-10 * tau && objective.evaluations < budget) {
        if (fu <= fv) {
            hi = v;
            v = u;
            fv = fu;
            u = hi - kInvPhi * (hi - lo);
            fu = eval_at(u);
        } else {
            lo = u;
            u = v;
            fu = fv;
            v = lo + kInvPhi * (hi - lo);
            fv = eval_at(v);
        }
    }
    const double best_v = fu <= fv ? u : v;
    const double best_f = std::min(fu, fv);
    if (best_f < current_best) {
        renormalize(gaps, j, best_v, tau);
        return best_f;
    }
    return current_best;
}

// Coordinate descent from one start; returns the refined gaps and value.
std::pair<std::vector<double>, double> refine(Objective& objective,
                                              std::vector<double> gaps,
                                              double tau) {
    const std::int64_t budget =
        objective.evaluations + kEvaluationBudgetPerStart;
    double best = objective(gaps);
    for (int sweep = 0; sweep < 1000; ++sweep) {
        const double before = best;
        for (std::size_t j = 0; j < gaps.size(); ++j) {
            if (objective.evaluations >= budget) break;
            best = line_search(objective, gaps, j, tau, best, budget);
        }
        if (objective.evaluations >= budget) break;
        if (before - best <= kRelativeTolerance * std::max(before, 1e-300)) {
            break;
        }
    }
    return {std::move(gaps), best};
}

double distance_squared(const std::vector<double>& a,
                        const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

TestSchedule schedule_from_gaps(std::vector<double> gaps, double tau) {
    // repair degenerate gaps touched during the search to a minimum width
    const double min_gap = 1e-6 * tau;
    double total = 0.0;
    for (double& g : gaps) {
        g = std::max(g, min_gap);
        total += g;
    }
    const double scale = tau / total;
    for (double& g : gaps) g *= scale;
    return TestSchedule(times_of(gaps, tau));
}

}  // namespace

double evaluate_candidate(const SystemSpec& system, double efficiency,
                          const TestSchedule& schedule) {
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
    return pfd_average_exact_times(system, efficiency, schedule.times());
}

OptimizedPolicy optimize_schedule(const SystemSpec& system, double efficiency,
                                  int n, double tau_hours,
                                  const TestSchedule& reference) {
    if (n < 1) {
        throw std::invalid_argument("number of tests must be at least 1");
    }
    if (!(tau_hours > 0.0) || !std::isfinite(tau_hours)) {
        throw std::invalid_argument("full test interval must be positive");
    }
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
    if (reference.test_count() != n) {
        throw std::invalid_argument(
            "reference schedule has a different number of tests");
    }
    if (std::abs(reference.tau() - tau_hours) >
        1e-12 * std::max(1.0, tau_hours)) {
        throw std::invalid_argument(
            "reference schedule has a different full test interval");
    }

    const TestSchedule periodic = periodic_schedule(n, tau_hours);
    Objective objective{system, efficiency, tau_hours};
    const std::vector<double> reference_gaps = gaps_of(reference);
    const std::vector<double> periodic_gaps = gaps_of(periodic);
    const double reference_value = objective(reference_gaps);
    const double periodic_value = objective(periodic_gaps);

    const auto finish = [&](TestSchedule schedule, double value, bool flat,
                            int starts) {
        OptimizedPolicy out{std::move(schedule), value, reference_value,
                            0.0,  0.0,           0.0,
                            flat, objective.evaluations, starts};
        if (reference_value > 0.0) {
            out.improvement_fraction = 1.0 - value / reference_value;
        }
        out.u_max_star = max_unavailability(
                             system, TestPolicy(out.schedule, efficiency),
                             EvaluationMode::exact)
                             .value;
        out.u_max_reference =
            max_unavailability(system, TestPolicy(reference, efficiency),
                               EvaluationMode::exact)
                .value;
        return out;
    };

    // Flat objective: with E = 0 the average telescopes to the no-partial
    // value whatever the schedule (and with lambda = 0 it is zero), so the
    // reference is returned unchanged.
    if (efficiency == 0.0 || system.lambda == 0.0 || n == 1) {
        const bool flat = (efficiency == 0.0 || system.lambda == 0.0) && n > 1;
        return finish(reference, reference_value, flat, 0);
    }

    // Deterministic starts: reference, periodic, and a lattice of
    // perturbed periodic gap vectors (one sign pattern per mask).
    std::vector<std::vector<double>> starts;
    starts.push_back(reference_gaps);
    starts.push_back(periodic_gaps);
    const int free_gaps = n - 1;
    const int lattice_bits = std::min(free_gaps, kMaxLatticeBits);
    const unsigned lattice_size = 1u << lattice_bits;
    for (unsigned mask = 0; mask < lattice_size; ++mask) {
        std::vector<double> gaps(periodic_gaps);
        for (int bit = 0; bit < lattice_bits; ++bit) {
            const double factor = (mask >> bit & 1u) ? 1.5 : 0.5;
            gaps[static_cast<std::size_t>(bit)] *= factor;
        }
        double total = 0.0;
        for (double g : gaps) total += g;
        for (double& g : gaps) g *= tau_hours / total;
        starts.push_back(std::move(gaps));
    }

    struct Candidate {
        std::vector<double> gaps;
        double value;
    };
    std::vector<Candidate> candidates;
    candidates.push_back({reference_gaps, reference_value});
    candidates.push_back({periodic_gaps, periodic_value});
    for (const auto& start : starts) {
        auto [gaps, value] = refine(objective, start, tau_hours);
        candidates.push_back({std::move(gaps), value});
    }

    double best_value = candidates.front().value;
    for (const auto& candidate : candidates) {
        best_value = std::min(best_value, candidate.value);
    }
    // ties resolve to the candidate nearest the periodic gaps
    const Candidate* chosen = nullptr;
    double chosen_distance = 0.0;
    for (const auto& candidate : candidates) {
        if (candidate.value >
            best_value + kRelativeTolerance * std::max(best_value, 1e-300)) {
            continue;
        }
        const double dist = distance_squared(candidate.gaps, periodic_gaps);
        if (chosen == nullptr || dist < chosen_distance) {
            chosen = &candidate;
            chosen_distance = dist;
        }
    }

    TestSchedule schedule = schedule_from_gaps(chosen->gaps, tau_hours);
    double value = objective(gaps_of(schedule));
    if (value > reference_value) {
        // min-gap repair can only move the value by a vanishing amount;
        // never hand back anything worse than the reference itself
        schedule = reference;
        value = reference_value;
    }
    return finish(std::move(schedule), value, false,
                  static_cast<int>(starts.size()));
}

}  // namespace sis
