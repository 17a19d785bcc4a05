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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sisproof/estimate.hpp"
#include "sisproof/optimize.hpp"
#include "sisproof/simulate.hpp"

namespace sis::cli {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& where,
                               const std::string& what) {
    throw std::invalid_argument("config field '" + where + "': " + what);
}

const json& require_field(const json& obj, const char* key,
                          const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) config_error(where + "." + key, "missing");
    return *it;
}

int get_int(const json& obj, const char* key, const std::string& where) {
    const json& value = require_field(obj, key, where);
    if (!value.is_number_integer()) {
        config_error(where + "." + key, "expected an integer");
    }
    return value.get<int>();
}

double get_double(const json& obj, const char* key, const std::string& where) {
    const json& value = require_field(obj, key, where);
    if (!value.is_number()) {
        config_error(where + "." + key, "expected a number");
    }
    return value.get<double>();
}

TimeUnit get_unit(const json& obj, const char* key, const std::string& where,
                  TimeUnit fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) config_error(where + "." + key, "expected a string");
    try {
        return parse_time_unit(it->get<std::string>());
    } catch (const std::invalid_argument& e) {
        config_error(where + "." + key, e.what());
    }
}

std::string format_time(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

void print_schedule_line(std::ostream& out, const TestSchedule& schedule,
                         TimeUnit unit) {
    const int n = schedule.test_count();
    out << "tests (" << time_unit_name(unit) << "s): ";
    for (int i = 1; i <= n; ++i) {
        const double t =
            convert_time(schedule.time_at(i), TimeUnit::hour, unit);
        out << "t_" << i << " = " << format_time(t);
        out << (i == n ? " (full)" : ", ");
    }
    out << "\n";
}

void print_inputs(std::ostream& out, const ConfigDocument& doc,
                  const SystemSpec& system, const TestPolicy& policy) {
    out << "system: " << system.m << "oo" << system.n_components
        << ", lambda = " << format_probability(system.lambda) << " /h\n";
    out << "policy: E = " << format_time(policy.efficiency())
        << ", tau = " << format_time(policy.schedule().tau()) << " h\n";
    print_schedule_line(out, policy.schedule(), doc.policy.time_unit);
}

SimulationConfig simulation_config(const ConfigDocument& doc,
                                   const CommandOptions& options) {
    SimulationConfig config;
    if (doc.simulation) {
        config.trials = doc.simulation->trials;
        config.master_seed = doc.simulation->seed;
    }
    if (options.trials) config.trials = *options.trials;
    if (options.seed) config.master_seed = *options.seed;
    config.threads = options.threads;
    return config;
}

}  // namespace

ConfigDocument parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

ConfigDocument parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") +
                                    e.what());
    }
    if (!root.is_object()) {
        throw std::invalid_argument("config root must be an object");
    }
    for (const auto& [key, value] : root.items()) {
        (void)value;
        if (key != "system" && key != "policy" && key != "observations" &&
            key != "simulation") {
            config_error(key, "unknown section");
        }
    }

    ConfigDocument doc;

    const json& system = require_field(root, "system", "");
    if (!system.is_object()) config_error("system", "expected an object");
    doc.system.m = get_int(system, "m", "system");
    doc.system.n = get_int(system, "n", "system");
    doc.system.lambda = get_double(system, "lambda", "system");
    doc.system.lambda_unit =
        get_unit(system, "lambda_unit", "system", TimeUnit::hour);

    const json& policy = require_field(root, "policy", "");
    if (!policy.is_object()) config_error("policy", "expected an object");
    doc.policy.efficiency = get_double(policy, "efficiency", "policy");
    doc.policy.time_unit =
        get_unit(policy, "time_unit", "policy", TimeUnit::hour);
    const json& schedule = require_field(policy, "schedule", "policy");
    if (!schedule.is_object()) {
        config_error("policy.schedule", "expected an object");
    }
    const bool has_periodic = schedule.contains("periodic");
    const bool has_times = schedule.contains("times");
    if (has_periodic == has_times) {
        config_error("policy.schedule",
                     "exactly one of 'periodic' or 'times' must be present");
    }
    if (has_periodic) {
        const json& periodic = schedule["periodic"];
        if (!periodic.is_object()) {
            config_error("policy.schedule.periodic", "expected an object");
        }
        ConfigDocument::PeriodicSchedule p;
        p.n_tests = get_int(periodic, "n_tests", "policy.schedule.periodic");
        p.full_test_interval = get_double(periodic, "full_test_interval",
                                          "policy.schedule.periodic");
        doc.policy.periodic = p;
    } else {
        const json& times = schedule["times"];
        if (!times.is_array() || times.empty()) {
            config_error("policy.schedule.times", "expected a nonempty array");
        }
        std::vector<double> values;
        for (const auto& entry : times) {
            if (!entry.is_number()) {
                config_error("policy.schedule.times", "expected numbers");
            }
            values.push_back(entry.get<double>());
        }
        doc.policy.times = std::move(values);
    }

    if (root.contains("observations")) {
        const json& obs = root["observations"];
        if (!obs.is_object()) config_error("observations", "expected an object");
        ConfigDocument::Observations parsed;
        parsed.K = get_int(obs, "K", "observations");
        const json& counts = require_field(obs, "counts", "observations");
        if (!counts.is_array()) {
            config_error("observations.counts", "expected an array");
        }
        for (const auto& entry : counts) {
            if (!entry.is_number_integer()) {
                config_error("observations.counts", "expected integers");
            }
            parsed.counts.push_back(entry.get<int>());
        }
        doc.observations = std::move(parsed);
    }

    if (root.contains("simulation")) {
        const json& sim = root["simulation"];
        if (!sim.is_object()) config_error("simulation", "expected an object");
        ConfigDocument::Simulation parsed;
        if (sim.contains("trials")) {
            parsed.trials = get_int(sim, "trials", "simulation");
        }
        if (sim.contains("seed")) {
            if (!sim["seed"].is_number_integer()) {
                config_error("simulation.seed", "expected an integer");
            }
            parsed.seed = sim["seed"].get<std::uint64_t>();
        }
        doc.simulation = parsed;
    }

    return doc;
}

std::string dump_config(const ConfigDocument& doc) {
    json root;
    root["system"] = {{"m", doc.system.m},
                      {"n", doc.system.n},
                      {"lambda", doc.system.lambda},
                      {"lambda_unit", time_unit_name(doc.system.lambda_unit)}};
    json schedule;
    if (doc.policy.periodic) {
        schedule["periodic"] = {
            {"n_tests", doc.policy.periodic->n_tests},
            {"full_test_interval", doc.policy.periodic->full_test_interval}};
    } else {
        schedule["times"] = *doc.policy.times;
    }
    root["policy"] = {{"efficiency", doc.policy.efficiency},
                      {"time_unit", time_unit_name(doc.policy.time_unit)},
                      {"schedule", schedule}};
    if (doc.observations) {
        root["observations"] = {{"K", doc.observations->K},
                                {"counts", doc.observations->counts}};
    }
    if (doc.simulation) {
        root["simulation"] = {{"trials", doc.simulation->trials},
                              {"seed", doc.simulation->seed}};
    }
    return root.dump(2);
}

SystemSpec build_system(const ConfigDocument& doc) {
    const double lambda_per_hour =
        doc.system.lambda / hours_per(doc.system.lambda_unit);
    try {
        return validate_system(doc.system.m, doc.system.n, lambda_per_hour);
    } catch (const std::invalid_argument& e) {
        config_error("system", e.what());
    }
}

TestSchedule build_schedule(const ConfigDocument& doc) {
    const double to_hours = hours_per(doc.policy.time_unit);
    try {
        if (doc.policy.periodic) {
            return periodic_schedule(
                doc.policy.periodic->n_tests,
                doc.policy.periodic->full_test_interval * to_hours);
        }
        std::vector<double> times;
        times.reserve(doc.policy.times->size());
        for (double t : *doc.policy.times) times.push_back(t * to_hours);
        return TestSchedule(std::move(times));
    } catch (const std::invalid_argument& e) {
        config_error("policy.schedule", e.what());
    }
}

TestPolicy build_policy(const ConfigDocument& doc) {
    try {
        return TestPolicy(build_schedule(doc), doc.policy.efficiency);
    } catch (const std::invalid_argument& e) {
        if (std::string(e.what()).rfind("config field", 0) == 0) throw;
        config_error("policy.efficiency", e.what());
    }
}

std::string sil_band(double pfd_avg) {
    if (pfd_avg >= 1e-5 && pfd_avg < 1e-4) return "SIL 4";
    if (pfd_avg >= 1e-4 && pfd_avg < 1e-3) return "SIL 3";
    if (pfd_avg >= 1e-3 && pfd_avg < 1e-2) return "SIL 2";
    if (pfd_avg >= 1e-2 && pfd_avg < 1e-1) return "SIL 1";
    return "none";
}

std::string format_probability(double value) {
    if (std::isnan(value)) return "nan";
    if (value == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", value);
    const std::string s(buf);
    const auto epos = s.find('e');
    const std::string mantissa = s.substr(0, epos);
    const int exponent = std::stoi(s.substr(epos + 1));
    return mantissa + "e" + std::to_string(exponent);
}

int cmd_assess(const ConfigDocument& doc, const CommandOptions& options,
               std::ostream& out) {
    const SystemSpec system = build_system(doc);
    const TestPolicy policy = build_policy(doc);
    const PFDReport report = pfd_average(system, policy, options.mode);

    print_inputs(out, doc, system, policy);
    out << "mode: "
        << (options.mode == EvaluationMode::exact ? "exact" : "approximate")
        << "\n";
    const double lambda_tau = system.lambda * policy.schedule().tau();
    if (options.mode == EvaluationMode::approximate && lambda_tau > 1e-2) {
        out << "warning: lambda*tau = " << format_time(lambda_tau)
            << " exceeds 1e-2; the Taylor approximation is unreliable here\n";
    }
    out << "\n";
    out << "PFD_avg = " << format_probability(report.pfd_avg) << "   (IEC 61508 low-demand band: "
        << sil_band(report.pfd_avg) << ")\n";
    if (policy.efficiency() == 0.0) {
        out << "note: E = 0, partial tests are ineffective; PFD_avg equals "
               "the no-partial-test value\n";
    }
    out << "U_max   = " << format_probability(report.max_unavailability)
        << " at t = " << format_time(report.max_unavailability_time)
        << " h (left limit)\n\n";
    out << "  i      t_{i-1} [h]        t_i [h]        T_i [h]      PFD_i\n";
    for (const auto& row : report.per_interval) {
        char line[160];
        std::snprintf(line, sizeof line, "%3d %14.6g %14.6g %14.6g   %s\n",
                      row.index, row.t_begin, row.t_end,
                      row.t_end - row.t_begin,
                      format_probability(row.pfd).c_str());
        out << line;
    }
    return 0;
}

int cmd_curve(const ConfigDocument& doc, const CommandOptions& options,
              std::ostream& out) {
    const SystemSpec system = build_system(doc);
    const TestPolicy policy = build_policy(doc);
    const double step = options.step_hours > 0.0
                            ? options.step_hours
                            : policy.schedule().tau() / 200.0;
    const auto curve = availability_curve(system, policy, step, options.mode);

    std::ofstream file(options.out_path);
    if (!file) {
        throw std::runtime_error("cannot write output file: " +
                                 options.out_path);
    }
    file << "t_hours,availability,unavailability\n";
    for (const auto& point : curve) {
        char line[160];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", point.t,
                      point.availability, point.unavailability);
        file << line;
    }
    if (!file.good()) {
        throw std::runtime_error("failed while writing: " + options.out_path);
    }
    out << "wrote " << curve.size() << " rows to " << options.out_path
        << " (step = " << format_time(step) << " h)\n";
    return 0;
}

int cmd_estimate(const ConfigDocument& doc, const CommandOptions& options,
                 std::ostream& out) {
    if (!doc.observations) {
        throw std::invalid_argument(
            "config field 'observations': required for estimate");
    }
    const TestSchedule schedule = build_schedule(doc);
    TestObservations obs = [&] {
        try {
            return TestObservations(schedule, doc.observations->counts,
                                    doc.observations->K);
        } catch (const std::invalid_argument& e) {
            config_error("observations", e.what());
        }
    }();
    const EstimationResult result =
        estimate_parameters(obs, options.confidence_level);

    out << "observed: K = " << obs.observed_components() << ", counts =";
    for (int k : obs.counts()) out << " " << k;
    out << " (total " << obs.total_count() << ")\n";
    print_schedule_line(out, schedule, doc.policy.time_unit);
    out << "\n";
    out << "lambda_hat = " << format_probability(result.lambda_hat)
        << " /h\n";
    out << static_cast<int>(result.confidence_level * 100 + 0.5)
        << "% CI for lambda: [" << format_probability(result.lambda_ci_lower)
        << ", " << format_probability(result.lambda_ci_upper) << "] /h\n";
    if (schedule.test_count() < 2) {
        out << "E_hat unidentifiable: the schedule has no partial tests\n";
    } else if (!result.e_hat) {
        out << "E_hat undefined: no failures were observed\n";
    } else {
        out << "E_hat = " << format_time(result.e_hat->value);
        if (result.e_hat->raw != result.e_hat->value) {
            out << " (clamped from " << format_time(result.e_hat->raw) << ")";
        }
        out << "\n";
    }
    return 0;
}

int cmd_optimize(const ConfigDocument& doc, const CommandOptions& options,
                 std::ostream& out) {
    (void)options;
    const SystemSpec system = build_system(doc);
    const TestPolicy reference = build_policy(doc);
    const TestSchedule& ref_schedule = reference.schedule();
    const OptimizedPolicy result =
        optimize_schedule(system, reference.efficiency(),
                          ref_schedule.test_count(), ref_schedule.tau(),
                          ref_schedule);

    print_inputs(out, doc, system, reference);
    out << "\n";
    out << "reference policy:\n  ";
    print_schedule_line(out, ref_schedule, doc.policy.time_unit);
    out << "  PFD_avg = " << format_probability(result.reference_pfd_avg)
        << ", U_max = " << format_probability(result.u_max_reference) << "\n";
    out << "optimized policy:\n  ";
    print_schedule_line(out, result.schedule, doc.policy.time_unit);
    out << "  PFD_avg = " << format_probability(result.pfd_avg_star)
        << ", U_max = " << format_probability(result.u_max_star) << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "improvement = %.1f%%\n",
                  100.0 * result.improvement_fraction);
    out << line;
    if (result.u_max_reference > 0.0) {
        std::snprintf(line, sizeof line, "U_max reduction = %.1f%%\n",
                      100.0 * (1.0 - result.u_max_star /
                                         result.u_max_reference));
        out << line;
    }
    if (result.flat_objective) {
        out << "note: the objective does not depend on the schedule here "
               "(E = 0 or lambda = 0); the reference schedule was kept\n";
    }
    out << "evaluations: " << result.evaluations
        << ", starts: " << result.starts << "\n";
    return 0;
}

int cmd_simulate(const ConfigDocument& doc, const CommandOptions& options,
                 std::ostream& out) {
    const SystemSpec system = build_system(doc);
    const TestPolicy policy = build_policy(doc);
    const SimulationConfig config = simulation_config(doc, options);
    const SimulationResult result = simulate_pfd(system, policy, config);
    const PFDReport analytic =
        pfd_average(system, policy, EvaluationMode::exact);

    print_inputs(out, doc, system, policy);
    out << "trials = " << result.trials << ", seed = " << config.master_seed
        << "\n\n";
    out << "simulated PFD_avg = "
        << format_probability(result.pfd_avg_estimate);
    if (std::isnan(result.standard_error)) {
        out << " (standard error undefined: single trial)\n";
    } else {
        out << " +/- " << format_probability(result.standard_error)
            << " (1 SE)\n";
    }
    out << "analytic  PFD_avg = " << format_probability(analytic.pfd_avg)
        << " (exact)\n";
    if (!std::isnan(result.standard_error) && result.standard_error > 0.0) {
        const double z = (result.pfd_avg_estimate - analytic.pfd_avg) /
                         result.standard_error;
        char line[80];
        std::snprintf(line, sizeof line, "difference = %.2f SE\n", z);
        out << line;
    }
    return 0;
}

}  // namespace sis::cli
