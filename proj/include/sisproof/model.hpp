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

#include <string>
#include <vector>

namespace sis {

// All computations run in hours internally. Month and year are fixed
// calendar-free units so that 12 months equal one 8760-hour year exactly.
enum class TimeUnit { hour, month, year };

double hours_per(TimeUnit unit);
double convert_time(double value, TimeUnit from, TimeUnit to);
TimeUnit parse_time_unit(const std::string& name);
std::string time_unit_name(TimeUnit unit);

/// An M-out-of-N system of identical components: operational while at
/// least `m` of `n_components` components are up. `lambda` is the
/// dangerous failure rate of one component, per hour.
struct SystemSpec {
    int m = 1;
    int n_components = 1;
    double lambda = 0.0;
};

/// Validates raw architecture inputs; throws std::invalid_argument with a
/// distinct message per violated rule.
SystemSpec validate_system(int m, int n_components, double lambda);

/// Ordered proof-test instants t_1 < ... < t_n (hours). The last test is
/// the full test, so tau = t_n. Immutable after construction.
class TestSchedule {
public:
    explicit TestSchedule(std::vector<double> test_times_hours);

    const std::vector<double>& times() const { return times_; }
    int test_count() const { return static_cast<int>(times_.size()); }
    double tau() const { return times_.back(); }

    /// t_i for i in [0, n]; t_0 = 0.
    double time_at(int i) const;
    /// T_i = t_i - t_{i-1} for i in [1, n].
    double interval(int i) const;

private:
    std::vector<double> times_;
};

/// Equally spaced tests: t_i = i * (tau / n), i = 1..n.
TestSchedule periodic_schedule(int n, double tau_hours);

/// A test schedule plus the partial-test effectiveness E in [0, 1]:
/// the fraction of each component's failure rate that partial tests
/// can reveal. E = 0 makes partial tests useless, E = 1 makes every
/// test a full renewal.
class TestPolicy {
public:
    TestPolicy(TestSchedule schedule, double efficiency);

    const TestSchedule& schedule() const { return schedule_; }
    double efficiency() const { return efficiency_; }

private:
    TestSchedule schedule_;
    double efficiency_;
};

}  // namespace sis
