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

#include "sisproof/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sis {

double hours_per(TimeUnit unit) {
    switch (unit) {
        case TimeUnit::hour: return 1.0;
        case TimeUnit::month: return 730.0;
        case TimeUnit::year: return 8760.0;
    }
    throw std::invalid_argument("unknown time unit");
}

double convert_time(double value, TimeUnit from, TimeUnit to) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("time value must be finite");
    }
    if (from == to) return value;
    return value * (hours_per(from) / hours_per(to));
}

TimeUnit parse_time_unit(const std::string& name) {
    if (name == "hour" || name == "hours" || name == "h") return TimeUnit::hour;
    if (name == "month" || name == "months") return TimeUnit::month;
    if (name == "year" || name == "years") return TimeUnit::year;
    throw std::invalid_argument("unknown time unit: " + name);
}

std::string time_unit_name(TimeUnit unit) {
    switch (unit) {
        case TimeUnit::hour: return "hour";
        case TimeUnit::month: return "month";
        case TimeUnit::year: return "year";
    }
    throw std::invalid_argument("unknown time unit");
}

SystemSpec validate_system(int m, int n_components, double lambda) {
    if (m < 1) {
        throw std::invalid_argument("M must be at least 1");
    }
    if (n_components < 1) {
        throw std::invalid_argument("N must be at least 1");
    }
    if (m > n_components) {
        throw std::invalid_argument("M exceeds N");
    }
    if (std::isnan(lambda) || std::isinf(lambda)) {
        throw std::invalid_argument("lambda must be finite");
    }
    if (lambda < 0.0) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    return SystemSpec{m, n_components, lambda};
}

TestSchedule::TestSchedule(std::vector<double> test_times_hours)
    : times_(std::move(test_times_hours)) {
    if (times_.empty()) {
        throw std::invalid_argument("schedule needs at least the full test");
    }
    double prev = 0.0;
    for (double t : times_) {
        if (!std::isfinite(t)) {
            throw std::invalid_argument("test time must be finite");
        }
        if (t <= prev) {
            throw std::invalid_argument(
                "test times must be strictly increasing and positive");
        }
        prev = t;
    }
}

double TestSchedule::time_at(int i) const {
    if (i < 0 || i > test_count()) {
        throw std::out_of_range("test index out of range");
    }
    return i == 0 ? 0.0 : times_[static_cast<std::size_t>(i - 1)];
}

double TestSchedule::interval(int i) const {
    if (i < 1 || i > test_count()) {
        throw std::out_of_range("interval index out of range");
    }
    return time_at(i) - time_at(i - 1);
}

TestSchedule periodic_schedule(int n, double tau_hours) {
    if (n < 1) {
        throw std::invalid_argument("number of tests must be at least 1");
    }
    if (!(tau_hours > 0.0) || !std::isfinite(tau_hours)) {
        throw std::invalid_argument("full test interval must be positive");
    }
    std::vector<double> times(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) {
        times[static_cast<std::size_t>(i - 1)] =
            tau_hours * static_cast<double>(i) / static_cast<double>(n);
    }
    times.back() = tau_hours;
    return TestSchedule(std::move(times));
}

TestPolicy::TestPolicy(TestSchedule schedule, double efficiency)
    : schedule_(std::move(schedule)), efficiency_(efficiency) {
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
}

}  // namespace sis
