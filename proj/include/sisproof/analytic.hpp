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

#include <span>
#include <vector>

#include "sisproof/model.hpp"

namespace sis {

/// Closed-form evaluation (sums of exponentials) or the small-lambda*tau
/// Taylor forms. Approximate results are clamped into [0, 1]; they are
/// only trustworthy while lambda * tau stays small (below ~1e-2).
enum class EvaluationMode { exact, approximate };

struct IntervalPfd {
    int index;       // i, 1-based
    double t_begin;  // t_{i-1}, hours
    double t_end;    // t_i, hours
    double pfd;      // mean unavailability over [t_{i-1}, t_i)
};

struct MaxUnavailability {
    double value;  // max U(t) over [0, tau]
    double time;   // attained at the left limit of this test instant
};

struct PFDReport {
    double pfd_avg = 0.0;
    std::vector<IntervalPfd> per_interval;
    double max_unavailability = 0.0;
    double max_unavailability_time = 0.0;
    EvaluationMode mode = EvaluationMode::exact;
};

/// Availability of one component at time t in [0, tau]. Test instants
/// evaluate post-repair (right-continuous); t = tau returns 1 (full
/// renewal).
double component_availability(double t, const TestPolicy& policy,
                              double lambda, EvaluationMode mode);

/// Availability of the MooN system at time t in [0, tau]; same instant
/// convention as component_availability.
double system_availability(double t, const SystemSpec& system,
                           const TestPolicy& policy, EvaluationMode mode);

/// Mean unavailability over the i-th inter-test interval, i in [1, n].
double pfd_interval(int i, const SystemSpec& system, const TestPolicy& policy,
                    EvaluationMode mode);

/// Mean unavailability over the full test interval [0, tau], with the
/// per-interval breakdown and the unavailability maximum.
PFDReport pfd_average(const SystemSpec& system, const TestPolicy& policy,
                      EvaluationMode mode);

/// Special case with no partial tests: a single full test at tau.
double pfd_average_no_partial(const SystemSpec& system, double tau_hours,
                              EvaluationMode mode);

/// Special case of equally spaced tests; matches pfd_average on
/// periodic_schedule(n, tau).
double pfd_average_periodic(const SystemSpec& system, double efficiency, int n,
                            double tau_hours, EvaluationMode mode);

struct CurvePoint {
    double t;               // hours
    double availability;    // A(t)
    double unavailability;  // 1 - A(t)
};

/// Samples A(t) on a step grid over [0, tau]. Every test instant appears
/// twice: the left limit (just before repair) and the post-repair value.
std::vector<CurvePoint> availability_curve(const SystemSpec& system,
                                           const TestPolicy& policy,
                                           double step_hours,
                                           EvaluationMode mode);

/// Maximum of U(t) over [0, tau]. U only grows between tests, so the scan
/// covers the n left limits t_i^-; ties resolve to the earliest instant.
MaxUnavailability max_unavailability(const SystemSpec& system,
                                     const TestPolicy& policy,
                                     EvaluationMode mode);

/// Exact-mode PFD_avg on a raw ordered time list (last entry = tau).
/// Zero-length intervals contribute zero weight, which lets optimizers
/// probe the boundary of the schedule simplex without constructing a
/// TestSchedule.
double pfd_average_exact_times(const SystemSpec& system, double efficiency,
                               std::span<const double> times);

}  // namespace sis
