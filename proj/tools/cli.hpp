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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sisproof/analytic.hpp"
#include "sisproof/model.hpp"

namespace sis::cli {

/// Parsed configuration file. Times and rates keep their file units here;
/// conversion to hours happens when the domain objects are built.
struct ConfigDocument {
    struct System {
        int m = 1;
        int n = 1;
        double lambda = 0.0;
        TimeUnit lambda_unit = TimeUnit::hour;  // lambda is per this unit
    };
    struct PeriodicSchedule {
        int n_tests = 1;
        double full_test_interval = 0.0;
    };
    struct Policy {
        double efficiency = 0.0;
        TimeUnit time_unit = TimeUnit::hour;
        std::optional<PeriodicSchedule> periodic;
        std::optional<std::vector<double>> times;
    };
    struct Observations {
        int K = 1;
        std::vector<int> counts;
    };
    struct Simulation {
        std::int64_t trials = 100000;
        std::uint64_t seed = 1;
    };

    System system;
    Policy policy;
    std::optional<Observations> observations;
    std::optional<Simulation> simulation;
};

ConfigDocument parse_config(const std::string& path);
ConfigDocument parse_config_text(const std::string& text);
std::string dump_config(const ConfigDocument& doc);

/// Domain objects in canonical hours.
SystemSpec build_system(const ConfigDocument& doc);
TestSchedule build_schedule(const ConfigDocument& doc);
TestPolicy build_policy(const ConfigDocument& doc);

/// IEC 61508 low-demand band for a PFD_avg value: "SIL 1".."SIL 4",
/// or "none" outside [1e-5, 1e-1).
std::string sil_band(double pfd_avg);

/// Three-significant-digit scientific notation with an unpadded exponent,
/// e.g. 2.06e-3 — the way such values are usually quoted.
std::string format_probability(double value);

struct CommandOptions {
    EvaluationMode mode = EvaluationMode::exact;
    double step_hours = 0.0;  // 0 = auto (tau / 200)
    std::string out_path;
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    double confidence_level = 0.90;
    int threads = 0;
};

int cmd_assess(const ConfigDocument& doc, const CommandOptions& options,
               std::ostream& out);
int cmd_curve(const ConfigDocument& doc, const CommandOptions& options,
              std::ostream& out);
int cmd_estimate(const ConfigDocument& doc, const CommandOptions& options,
                 std::ostream& out);
int cmd_optimize(const ConfigDocument& doc, const CommandOptions& options,
                 std::ostream& out);
int cmd_simulate(const ConfigDocument& doc, const CommandOptions& options,
                 std::ostream& out);

}  // namespace sis::cli
