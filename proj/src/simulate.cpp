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

#include "sisproof/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "sisproof/rng.hpp"

namespace sis {

namespace {

// Trials are processed in fixed-size blocks. Each block accumulates its
// own partial sums, and blocks are reduced in index order afterwards, so
// the result is bit-identical for any thread count.
constexpr std::int64_t kTrialsPerBlock = 4096;

struct DownInterval {
    double begin;
    double end;
};

struct Event {
    double time;
    int delta;  // +1 component goes down, -1 comes back up
};

struct TrialWorkspace {
    std::vector<DownInterval> component;
    std::vector<Event> events;
};

int resolve_threads(int requested, std::int64_t blocks) {
    int threads = requested > 0
                      ? requested
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (static_cast<std::int64_t>(threads) > blocks) {
        threads = static_cast<int>(blocks);
    }
    return threads;
}

void validate_config(const SimulationConfig& config) {
    if (config.trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (config.time_grid_step < 0.0 || !std::isfinite(config.time_grid_step)) {
        throw std::invalid_argument("time grid step must be nonnegative");
    }
    if (config.threads < 0) {
        throw std::invalid_argument("thread count must be nonnegative");
    }
}

// Draw order is fixed per trial: for each component, first the full-only
// failure age, then one partial-mode sample per inter-test segment. Both
// entry points consume draws identically, so a trial index always maps to
// the same component history.
//
// Returns the trial's downtime fraction and, when a grid is given, bumps
// grid_down for every grid point at which the system is down (left limit).
double run_trial(const SystemSpec& system, const std::vector<double>& times,
                 double rate_partial, double rate_full, PhiloxStream& rng,
                 TrialWorkspace& ws, const std::vector<double>& grid,
                 std::vector<std::uint64_t>* grid_down) {
    const double tau = times.back();
    const int allowed_down = system.n_components - system.m;
    ws.events.clear();

    for (int c = 0; c < system.n_components; ++c) {
        ws.component.clear();
        const double full_age = rng.next_exponential(rate_full);
        double t_prev = 0.0;
        for (const double t_i : times) {
            const double offset = rng.next_exponential(rate_partial);
            if (t_prev + offset < t_i) {
                ws.component.push_back(DownInterval{t_prev + offset, t_i});
            }
            t_prev = t_i;
        }
        if (full_age < tau) {
            const DownInterval suffix{full_age, tau};
            const auto pos = std::lower_bound(
                ws.component.begin(), ws.component.end(), suffix,
                [](const DownInterval& a, const DownInterval& b) {
                    return a.begin < b.begin;
                });
            ws.component.insert(pos, suffix);
        }
        if (ws.component.empty()) continue;
        // merge the per-component union and emit down/up events
        DownInterval open = ws.component.front();
        for (std::size_t idx = 1; idx < ws.component.size(); ++idx) {
            const DownInterval& next = ws.component[idx];
            if (next.begin <= open.end) {
                open.end = std::max(open.end, next.end);
            } else {
                ws.events.push_back(Event{open.begin, +1});
                ws.events.push_back(Event{open.end, -1});
                open = next;
            }
        }
        ws.events.push_back(Event{open.begin, +1});
        ws.events.push_back(Event{open.end, -1});
    }

    if (ws.events.empty()) return 0.0;
    std::sort(ws.events.begin(), ws.events.end(),
              [](const Event& a, const Event& b) { return a.time < b.time; });

    double downtime = 0.0;
    double prev_time = 0.0;
    int down = 0;
    bool system_down = false;
    double system_down_since = 0.0;
    for (const Event& event : ws.events) {
        if (down > allowed_down) downtime += event.time - prev_time;
        prev_time = event.time;
        down += event.delta;
        const bool now_down = down > allowed_down;
        if (now_down && !system_down) {
            system_down = true;
            system_down_since = event.time;
        } else if (!now_down && system_down) {
            system_down = false;
            if (grid_down != nullptr) {
                // down at grid point g (left limit) iff since < g <= until
                const auto from = std::upper_bound(grid.begin(), grid.end(),
                                                   system_down_since);
                const auto to =
                    std::upper_bound(grid.begin(), grid.end(), event.time);
                for (auto it = from; it != to; ++it) {
                    ++(*grid_down)[static_cast<std::size_t>(
                        it - grid.begin())];
                }
            }
        }
    }
    return downtime / tau;
}

}  // namespace

SimulationResult simulate_pfd(const SystemSpec& system,
                              const TestPolicy& policy,
                              const SimulationConfig& config) {
    validate_config(config);
    const std::vector<double>& times = policy.schedule().times();
    const double tau = policy.schedule().tau();
    const double rate_partial = policy.efficiency() * system.lambda;
    const double rate_full = (1.0 - policy.efficiency()) * system.lambda;

    std::vector<double> grid;
    if (config.time_grid_step > 0.0) {
        for (double t = 0.0; t <= tau;
             t += config.time_grid_step) {
            grid.push_back(t);
        }
        if (grid.back() < tau) grid.push_back(tau);
    }

    const std::int64_t blocks =
        (config.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<double> block_sum(static_cast<std::size_t>(blocks), 0.0);
    std::vector<double> block_sumsq(static_cast<std::size_t>(blocks), 0.0);
    std::vector<std::vector<std::uint64_t>> block_grid_down;
    if (!grid.empty()) {
        block_grid_down.assign(static_cast<std::size_t>(blocks),
                               std::vector<std::uint64_t>(grid.size(), 0));
    }

    std::atomic<std::int64_t> next_block{0};
    const auto worker = [&] {
        TrialWorkspace ws;
        for (;;) {
            const std::int64_t b =
                next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= blocks) break;
            const std::int64_t lo = b * kTrialsPerBlock;
            const std::int64_t hi =
                std::min(config.trials, lo + kTrialsPerBlock);
            double sum = 0.0;
            double sumsq = 0.0;
            std::vector<std::uint64_t>* down_counts =
                grid.empty()
                    ? nullptr
                    : &block_grid_down[static_cast<std::size_t>(b)];
            for (std::int64_t trial = lo; trial < hi; ++trial) {
                PhiloxStream rng(config.master_seed,
                                 static_cast<std::uint64_t>(trial));
                const double value =
                    run_trial(system, times, rate_partial, rate_full, rng, ws,
                              grid, down_counts);
                sum += value;
                sumsq += value * value;
            }
            block_sum[static_cast<std::size_t>(b)] = sum;
            block_sumsq[static_cast<std::size_t>(b)] = sumsq;
        }
    };

    const int threads = resolve_threads(config.threads, blocks);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads - 1));
    for (int i = 0; i < threads - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& thread : pool) thread.join();

    double sum = 0.0;
    double sumsq = 0.0;
    for (std::int64_t b = 0; b < blocks; ++b) {
        sum += block_sum[static_cast<std::size_t>(b)];
        sumsq += block_sumsq[static_cast<std::size_t>(b)];
    }
    const double trials = static_cast<double>(config.trials);
    const double mean = sum / trials;

    SimulationResult result;
    result.trials = config.trials;
    result.pfd_avg_estimate = mean;
    if (config.trials >= 2) {
        const double variance =
            std::max(0.0, (sumsq - trials * mean * mean) / (trials - 1.0));
        result.standard_error = std::sqrt(variance / trials);
    } else {
        result.standard_error = std::numeric_limits<double>::quiet_NaN();
    }
    if (!grid.empty()) {
        result.curve_estimate.reserve(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g) {
            std::uint64_t down = 0;
            for (std::int64_t b = 0; b < blocks; ++b) {
                down += block_grid_down[static_cast<std::size_t>(b)][g];
            }
            result.curve_estimate.emplace_back(
                grid[g], 1.0 - static_cast<double>(down) / trials);
        }
    }
    return result;
}

std::pair<double, double> simulate_availability(const SystemSpec& system,
                                                const TestPolicy& policy,
                                                const SimulationConfig& config,
                                                double t) {
    validate_config(config);
    const std::vector<double>& times = policy.schedule().times();
    if (!(t >= 0.0) || t > policy.schedule().tau()) {
        throw std::out_of_range("t outside [0, tau]");
    }
    if (t == 0.0) return {1.0, 0.0};

    // segment holding the left limit: t in (t_{seg-1}, t_seg]
    const std::size_t seg = static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), t) - times.begin());
    const double seg_begin = seg == 0 ? 0.0 : times[seg - 1];
    const double rate_partial = policy.efficiency() * system.lambda;
    const double rate_full = (1.0 - policy.efficiency()) * system.lambda;

    const std::int64_t blocks =
        (config.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<std::int64_t> block_up(static_cast<std::size_t>(blocks), 0);
    std::atomic<std::int64_t> next_block{0};
    const auto worker = [&] {
        for (;;) {
            const std::int64_t b =
                next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= blocks) break;
            const std::int64_t lo = b * kTrialsPerBlock;
            const std::int64_t hi =
                std::min(config.trials, lo + kTrialsPerBlock);
            std::int64_t up_trials = 0;
            for (std::int64_t trial = lo; trial < hi; ++trial) {
                PhiloxStream rng(config.master_seed,
                                 static_cast<std::uint64_t>(trial));
                int down = 0;
                for (int c = 0; c < system.n_components; ++c) {
                    const double full_age = rng.next_exponential(rate_full);
                    bool component_down = full_age < t;
                    // same draw order as run_trial: one partial sample per
                    // segment, only the segment holding t matters
                    for (std::size_t s = 0; s < times.size(); ++s) {
                        const double offset =
                            rng.next_exponential(rate_partial);
                        if (s == seg && seg_begin + offset < t) {
                            component_down = true;
                        }
                    }
                    if (component_down) ++down;
                }
                if (system.n_components - down >= system.m) ++up_trials;
            }
            block_up[static_cast<std::size_t>(b)] = up_trials;
        }
    };

    const int threads = resolve_threads(config.threads, blocks);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads - 1));
    for (int i = 0; i < threads - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& thread : pool) thread.join();

    std::int64_t up = 0;
    for (std::int64_t b = 0; b < blocks; ++b) {
        up += block_up[static_cast<std::size_t>(b)];
    }
    const double trials = static_cast<double>(config.trials);
    const double estimate = static_cast<double>(up) / trials;
    const double standard_error =
        std::sqrt(std::max(0.0, estimate * (1.0 - estimate)) / trials);
    return {estimate, standard_error};
}

}  // namespace sis
