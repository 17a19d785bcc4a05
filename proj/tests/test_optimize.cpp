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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sisproof/analytic.hpp"
#include "sisproof/optimize.hpp"

using namespace sis;

namespace {

const SystemSpec kCaseStudy = validate_system(2, 6, 6.1e-5);
constexpr double kMonth = 730.0;

}  // namespace

TEST_CASE("candidate evaluation reproduces the published averages") {
    CHECK(evaluate_candidate(kCaseStudy, 0.42, periodic_schedule(4, 8760.0)) ==
          doctest::Approx(2.06e-3).epsilon(0.01));
    const TestSchedule table2({4.8 * kMonth, 7.8 * kMonth, 10.1 * kMonth,
                               12.0 * kMonth});
    CHECK(evaluate_candidate(kCaseStudy, 0.42, table2) ==
          doctest::Approx(1.87e-3).epsilon(0.01));
    // and is exactly the pfd_average objective
    CHECK(evaluate_candidate(kCaseStudy, 0.42, table2) ==
          pfd_average(kCaseStudy, TestPolicy(table2, 0.42),
                      EvaluationMode::exact)
              .pfd_avg);
}

TEST_CASE("candidate evaluation with a single test is the no-partial case") {
    const TestSchedule single({8760.0});
    CHECK(evaluate_candidate(kCaseStudy, 0.42, single) ==
          doctest::Approx(pfd_average_no_partial(kCaseStudy, 8760.0,
                                                 EvaluationMode::exact))
              .epsilon(1e-14));
}

TEST_CASE("two perfect tests split the interval in half") {
    // with E = 1 and n = 2 the objective is proportional to
    // t_1^2 + (tau - t_1)^2, minimized at tau / 2
    const SystemSpec system = validate_system(1, 1, 1e-5);
    const double tau = 2000.0;
    const OptimizedPolicy result =
        optimize_schedule(system, 1.0, 2, tau, periodic_schedule(2, tau));
    CHECK(result.schedule.time_at(1) ==
          doctest::Approx(tau / 2.0).epsilon(1e-6));
    CHECK(result.schedule.time_at(2) == tau);
    CHECK_FALSE(result.flat_objective);
}

TEST_CASE("case study: optimizer reproduces the published policy") {
    const OptimizedPolicy result = optimize_schedule(
        kCaseStudy, 0.42, 4, 8760.0, periodic_schedule(4, 8760.0));
    // published one-decimal instants: 4.8, 7.8, 10.1 months
    CHECK(result.schedule.time_at(1) / kMonth ==
          doctest::Approx(4.8).epsilon(0.021));
    CHECK(result.schedule.time_at(2) / kMonth ==
          doctest::Approx(7.8).epsilon(0.013));
    CHECK(result.schedule.time_at(3) / kMonth ==
          doctest::Approx(10.1).epsilon(0.01));
    CHECK(result.schedule.time_at(4) == 8760.0);
    CHECK(result.pfd_avg_star == doctest::Approx(1.87e-3).epsilon(0.01));
    CHECK(result.reference_pfd_avg == doctest::Approx(2.06e-3).epsilon(0.01));
    CHECK(result.improvement_fraction ==
          doctest::Approx(0.093).epsilon(0.15));
    // intervals shrink toward the full test
    double previous = 1e99;
    for (int i = 1; i <= 4; ++i) {
        CHECK(result.schedule.interval(i) < previous);
        previous = result.schedule.interval(i);
    }
}

TEST_CASE("case-study optimum is first-order stationary") {
    const double tau = 8760.0;
    const OptimizedPolicy result = optimize_schedule(
        kCaseStudy, 0.42, 4, tau, periodic_schedule(4, tau));
    const double base = result.pfd_avg_star;
    const double nudge = 0.01 * tau;
    for (int i = 1; i <= 3; ++i) {
        for (double sign : {-1.0, 1.0}) {
            auto times = result.schedule.times();
            const double moved = times[static_cast<std::size_t>(i - 1)] +
                                 sign * nudge;
            // keep the perturbed instant feasible
            const double lo =
                (i == 1 ? 0.0 : times[static_cast<std::size_t>(i - 2)]);
            const double hi = times[static_cast<std::size_t>(i)];
            if (moved <= lo || moved >= hi) continue;
            times[static_cast<std::size_t>(i - 1)] = moved;
            const double perturbed =
                evaluate_candidate(kCaseStudy, 0.42, TestSchedule(times));
            CHECK(perturbed >= base * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("ineffective partial tests flatten the objective") {
    const TestSchedule reference({1000.0, 3000.0, 8760.0});
    const OptimizedPolicy result =
        optimize_schedule(kCaseStudy, 0.0, 3, 8760.0, reference);
    CHECK(result.flat_objective);
    CHECK(result.schedule.times() == reference.times());
    CHECK(result.pfd_avg_star ==
          doctest::Approx(pfd_average_no_partial(kCaseStudy, 8760.0,
                                                 EvaluationMode::exact))
              .epsilon(1e-12));
    CHECK(result.improvement_fraction == 0.0);

    // the flat objective really is flat: random schedules all evaluate
    // to the same number
    std::mt19937 gen(71);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> times;
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            acc += 0.05 + unit(gen);
            times.push_back(acc);
        }
        for (double& t : times) t *= 8760.0 / acc;
        times.back() = 8760.0;
        CHECK(evaluate_candidate(kCaseStudy, 0.0, TestSchedule(times)) ==
              doctest::Approx(result.pfd_avg_star).epsilon(1e-12));
    }
}

TEST_CASE("a zero failure rate is reported as flat as well") {
    const SystemSpec idle = validate_system(2, 6, 0.0);
    const OptimizedPolicy result = optimize_schedule(
        idle, 0.42, 4, 8760.0, periodic_schedule(4, 8760.0));
    CHECK(result.flat_objective);
    CHECK(result.pfd_avg_star == 0.0);
}

TEST_CASE("optimizer never returns worse than the reference") {
    std::mt19937 gen(73);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 8; ++rep) {
        const int n_components = 1 + static_cast<int>(gen() % 6);
        const int m = 1 + static_cast<int>(gen() % n_components);
        const SystemSpec system =
            validate_system(m, n_components, 1e-6 + 1e-4 * unit(gen));
        const double tau = (0.05 + 0.9 * unit(gen)) / system.lambda;
        const int n = 1 + static_cast<int>(gen() % 5);
        std::vector<double> times;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += 0.05 + unit(gen);
            times.push_back(acc);
        }
        for (double& t : times) t *= tau / acc;
        times.back() = tau;
        const TestSchedule reference(times);
        const double efficiency = unit(gen);
        const OptimizedPolicy result =
            optimize_schedule(system, efficiency, n, tau, reference);
        CAPTURE(rep);
        CHECK(result.pfd_avg_star <= result.reference_pfd_avg + 1e-12);
        CHECK(result.schedule.test_count() == n);
        CHECK(result.schedule.tau() == doctest::Approx(tau).epsilon(1e-12));
    }
}

TEST_CASE("repeated runs are bit-identical") {
    const auto run = [] {
        return optimize_schedule(kCaseStudy, 0.42, 4, 8760.0,
                                 periodic_schedule(4, 8760.0));
    };
    const OptimizedPolicy first = run();
    const OptimizedPolicy second = run();
    REQUIRE(first.schedule.test_count() == second.schedule.test_count());
    for (int i = 1; i <= first.schedule.test_count(); ++i) {
        CHECK(first.schedule.time_at(i) == second.schedule.time_at(i));
    }
    CHECK(first.pfd_avg_star == second.pfd_avg_star);
    CHECK(first.evaluations == second.evaluations);
    CHECK(first.starts == second.starts);
}

TEST_CASE("incompatible references are rejected") {
    CHECK_THROWS_AS(optimize_schedule(kCaseStudy, 0.42, 4, 8760.0,
                                      periodic_schedule(3, 8760.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimize_schedule(kCaseStudy, 0.42, 4, 8760.0,
                                      periodic_schedule(4, 8000.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimize_schedule(kCaseStudy, 1.5, 4, 8760.0,
                                      periodic_schedule(4, 8760.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimize_schedule(kCaseStudy, 0.42, 0, 8760.0,
                                      periodic_schedule(4, 8760.0)),
                    std::invalid_argument);
}

TEST_CASE("single-test optimization is trivial") {
    const TestSchedule single({8760.0});
    const OptimizedPolicy result =
        optimize_schedule(kCaseStudy, 0.42, 1, 8760.0, single);
    CHECK(result.schedule.times() == single.times());
    CHECK(result.pfd_avg_star == result.reference_pfd_avg);
    CHECK_FALSE(result.flat_objective);
}
