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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

// exit codes: 0 success, 2 input/validation error, 1 runtime error

int dispatch(const std::string& command, const std::string& config_path,
             bool dump, const sis::cli::CommandOptions& options) {
    const sis::cli::ConfigDocument doc = sis::cli::parse_config(config_path);
    if (dump) {
        std::cout << sis::cli::dump_config(doc) << "\n";
        return 0;
    }
    if (command == "assess") {
        return sis::cli::cmd_assess(doc, options, std::cout);
    }
    if (command == "curve") {
        return sis::cli::cmd_curve(doc, options, std::cout);
    }
    if (command == "estimate") {
        return sis::cli::cmd_estimate(doc, options, std::cout);
    }
    if (command == "optimize") {
        return sis::cli::cmd_optimize(doc, options, std::cout);
    }
    return sis::cli::cmd_simulate(doc, options, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "PFD and availability analysis of MooN systems under partial and "
        "full proof tests"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode = "exact";
    bool dump = false;
    sis::cli::CommandOptions options;
    long long trials = -1;
    long long seed = -1;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file (JSON)")
            ->required();
        cmd->add_flag("--dump-config", dump,
                      "print the parsed config and exit");
    };

    CLI::App* assess = app.add_subcommand(
        "assess", "PFD_avg, per-interval PFD, U_max, and SIL band");
    add_common(assess);
    assess->add_option("--mode", mode, "exact|approx")
        ->check(CLI::IsMember({"exact", "approx"}));

    CLI::App* curve =
        app.add_subcommand("curve", "availability curve as CSV");
    add_common(curve);
    curve->add_option("--mode", mode, "exact|approx")
        ->check(CLI::IsMember({"exact", "approx"}));
    curve->add_option("--step", options.step_hours, "grid step in hours");
    curve->add_option("--out", options.out_path, "output CSV path")
        ->required();

    CLI::App* estimate = app.add_subcommand(
        "estimate", "lambda and E from test feedback counts");
    add_common(estimate);
    estimate
        ->add_option("--level", options.confidence_level,
                     "confidence level for the lambda interval")
        ->default_val(0.90);

    CLI::App* optimize = app.add_subcommand(
        "optimize", "optimal partial-test instants minimizing PFD_avg");
    add_common(optimize);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo estimate of PFD_avg vs the analytic value");
    add_common(simulate);
    simulate->add_option("--trials", trials, "number of Monte Carlo trials");
    simulate->add_option("--seed", seed, "master seed");
    simulate->add_option("--threads", options.threads,
                         "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    options.mode = mode == "approx" ? sis::EvaluationMode::approximate
                                    : sis::EvaluationMode::exact;
    if (trials >= 0) options.trials = trials;
    if (seed >= 0) options.seed = static_cast<std::uint64_t>(seed);

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        return dispatch(command, config_path, dump, options);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
