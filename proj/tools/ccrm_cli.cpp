/*
 * Copyright (C) 2026 CCRM developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end. Everything goes through the shared library's C
// interface; this file only handles arguments, files and exit codes.

#include "ccrm/ccrm.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

int exit_code(ccrm_status status)
{
    switch (status) {
    case CCRM_OK:
        return kExitOk;
    case CCRM_ERR_USAGE:
        return kExitUsage;
    case CCRM_ERR_DATA:
        return kExitData;
    default:
        return kExitInternal;
    }
}

class Failure : public std::runtime_error {
public:
    Failure(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const
    {
        return code_;
    }

private:
    int code_;
};

void check(ccrm_status status)
{
    if (status != CCRM_OK) {
        throw Failure(exit_code(status), ccrm_last_error());
    }
}

bool verbose()
{
    const char* level = std::getenv("CCRM_LOG");
    return level != nullptr && *level != '\0' && std::string(level) != "off";
}

void log_line(const std::string& message)
{
    if (verbose()) {
        std::cerr << "ccrm: " << message << "\n";
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw Failure(kExitData, "cannot read file: " + path);
    }
    std::ostringstream content;
    content << stream.rdbuf();
    return content.str();
}

void write_output(const std::string& dir, const std::string& name, const std::string& content)
{
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream) {
        throw Failure(kExitData, "cannot write file: " + path);
    }
    stream << content;
    log_line("wrote " + path);
}

/// Inline JSON or @path to a JSON file.
std::string json_argument(const std::string& value)
{
    if (!value.empty() && value.front() == '@') {
        return read_file(value.substr(1));
    }
    return value;
}

struct ScenarioHandle {
    ccrm_scenario* ptr = nullptr;
    ~ScenarioHandle()
    {
        ccrm_scenario_free(ptr);
    }
};

struct StringHandle {
    char* ptr = nullptr;
    ~StringHandle()
    {
        ccrm_string_free(ptr);
    }
    std::string str() const
    {
        return ptr == nullptr ? std::string() : std::string(ptr);
    }
};

struct ScenarioSet {
    std::vector<std::unique_ptr<ScenarioHandle>> handles;
    std::vector<const ccrm_scenario*> raw;

    void add_builtin(const std::string& id)
    {
        auto handle = std::make_unique<ScenarioHandle>();
        check(ccrm_scenario_builtin(id.c_str(), &handle->ptr));
        raw.push_back(handle->ptr);
        handles.push_back(std::move(handle));
    }

    void add_file(const std::string& path)
    {
        auto handle = std::make_unique<ScenarioHandle>();
        const std::string text = read_file(path);
        check(ccrm_scenario_parse(text.c_str(), &handle->ptr));
        raw.push_back(handle->ptr);
        handles.push_back(std::move(handle));
    }

    bool empty() const
    {
        return raw.empty();
    }
    size_t size() const
    {
        return raw.size();
    }
};

struct CommonOptions {
    std::vector<std::string> cases;
    std::vector<std::string> scenario_paths;
    std::uint64_t seed = 0;
    int runs = 8;
    int jobs = 1;
    std::string out_dir = "out";
    std::string params;
    std::string bounds;
};

void add_common(CLI::App* cmd, CommonOptions& options, bool with_runs = true)
{
    cmd->add_option("--case", options.cases, "Built-in case id (A, B, C or D); repeatable");
    cmd->add_option("--scenario", options.scenario_paths, "Scenario JSON file; repeatable");
    cmd->add_option("--seed", options.seed, "Master seed for all randomness");
    if (with_runs) {
        cmd->add_option("--runs", options.runs, "Simulation runs per objective evaluation");
    }
    cmd->add_option("--jobs", options.jobs, "Worker threads (results are independent of this)");
    cmd->add_option("--out", options.out_dir, "Output directory");
    cmd->add_option("--params", options.params, "Model/optimum parameters as JSON or @file");
    cmd->add_option("--bounds", options.bounds, "Parameter bounds as JSON or @file");
}

ScenarioSet load_scenarios(const CommonOptions& options, const std::vector<std::string>& fallback)
{
    ScenarioSet set;
    for (const std::string& id : options.cases) {
        set.add_builtin(id);
    }
    for (const std::string& path : options.scenario_paths) {
        set.add_file(path);
    }
    if (set.empty()) {
        for (const std::string& id : fallback) {
            set.add_builtin(id);
        }
    }
    return set;
}

json options_manifest(const CommonOptions& options, const std::string& command)
{
    json doc;
    doc["version"] = ccrm_version();
    doc["command"] = command;
    doc["seed"] = options.seed;
    doc["cases"] = options.cases;
    doc["scenarios"] = options.scenario_paths;
    doc["runs"] = options.runs;
    if (!options.params.empty()) {
        doc["params"] = json::parse(json_argument(options.params));
    }
    if (!options.bounds.empty()) {
        doc["bounds"] = json::parse(json_argument(options.bounds));
    }
    return doc;
}

void write_manifest(const CommonOptions& options, const std::string& command, json extra = {})
{
    json doc = options_manifest(options, command);
    if (!extra.empty()) {
        doc.update(extra);
    }
    write_output(options.out_dir, "manifest.json", doc.dump(2) + "\n");
}

json config_with_bounds(const CommonOptions& options)
{
    json config;
    config["runs"] = options.runs;
    config["jobs"] = options.jobs;
    config["seed"] = options.seed;
    if (!options.bounds.empty()) {
        config["bounds"] = json::parse(json_argument(options.bounds));
    }
    return config;
}

std::string theta_argument(const CommonOptions& options)
{
    return options.params.empty() ? std::string("{}") : json_argument(options.params);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simulator and calibration toolkit for disruption-and-replacement dynamics in "
                 "criminal networks"};
    app.require_subcommand(1);

    CommonOptions simulate_options;
    CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario and export its trace");
    add_common(simulate, simulate_options, false);

    CommonOptions score_options;
    std::string score_trace;
    std::string score_kind = "both";
    CLI::App* score = app.add_subcommand("score", "Score statements against a saved trace");
    add_common(score, score_options, false);
    score->add_option("--trace", score_trace, "Trace JSONL produced by `simulate`")->required();
    score->add_option("--kind", score_kind, "training, validation or both");

    CommonOptions calibrate_options;
    int calibrate_iterations = 3000;
    int calibrate_chains = 1;
    CLI::App* calibrate = app.add_subcommand("calibrate", "SPSA calibration of the 7 free parameters");
    add_common(calibrate, calibrate_options);
    calibrate->add_option("--iterations", calibrate_iterations, "SPSA iterations");
    calibrate->add_option("--chains", calibrate_chains, "Independent SPSA chains");

    CommonOptions validate_options;
    std::vector<std::string> validate_training;
    CLI::App* validate = app.add_subcommand("validate", "Score the hold-out case at an optimum");
    add_common(validate, validate_options);
    validate->add_option("--training-case", validate_training,
                         "Training cases for the comparison summary");

    CommonOptions sensitivity_options;
    int sensitivity_samples = 40;
    CLI::App* sensitivity = app.add_subcommand("sensitivity", "Global and local OAT sensitivity");
    add_common(sensitivity, sensitivity_options);
    sensitivity->add_option("--samples", sensitivity_samples, "Samples per parameter (global)");

    CommonOptions uq_options;
    int uq_samples = 200;
    std::vector<std::string> uq_frozen;
    CLI::App* uq = app.add_subcommand("uq", "Forward uncertainty propagation");
    add_common(uq, uq_options);
    uq->add_option("--samples", uq_samples, "Parameter samples");
    uq->add_option("--frozen", uq_frozen, "Parameters pinned at the optimum; repeatable");

    CommonOptions baseline_options;
    int baseline_models = 200;
    CLI::App* baseline = app.add_subcommand("baseline", "Null distribution of random models");
    add_common(baseline, baseline_options);
    baseline->add_option("--models", baseline_models, "Number of random parameter sets");

    CommonOptions landscape_options;
    int landscape_grid = 33;
    double landscape_span = 0.5;
    CLI::App* landscape = app.add_subcommand("landscape", "Objective on a random 2-D slice");
    add_common(landscape, landscape_options);
    landscape->add_option("--grid", landscape_grid, "Grid points per axis");
    landscape->add_option("--span", landscape_span, "Half extent of the slice (unit box)");

    CommonOptions profile_options;
    std::string profile_log;
    std::string profile_param;
    int profile_bins = 24;
    CLI::App* profile = app.add_subcommand("profile", "1-D objective profile from an eval log");
    add_common(profile, profile_options, false);
    profile->add_option("--log", profile_log, "eval_log.csv from `calibrate`")->required();
    profile->add_option("--param", profile_param, "Parameter name (beta..zeta)")->required();
    profile->add_option("--bins", profile_bins, "Histogram bins");

    CommonOptions expertise_options;
    std::string expertise_table;
    CLI::App* expertise = app.add_subcommand("expertise", "Score a domains-by-experts table");
    add_common(expertise, expertise_options, false);
    expertise->add_option("--table", expertise_table, "CSV table: domain,0/1,...")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& error) {
        const int rc = app.exit(error);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            ScenarioSet set = load_scenarios(simulate_options, {"A"});
            if (set.size() != 1) {
                throw Failure(kExitUsage, "simulate runs exactly one scenario");
            }
            ccrm_trace* trace = nullptr;
            const std::string params =
                simulate_options.params.empty() ? "" : json_argument(simulate_options.params);
            check(ccrm_simulate(set.raw.front(), params.empty() ? nullptr : params.c_str(),
                                simulate_options.seed, &trace));
            StringHandle trace_text;
            StringHandle events_text;
            StringHandle trust_text;
            check(ccrm_trace_to_jsonl(trace, &trace_text.ptr));
            check(ccrm_trace_events_jsonl(trace, &events_text.ptr));
            check(ccrm_trace_trust_csv(trace, &trust_text.ptr));
            ccrm_trace_free(trace);
            write_output(simulate_options.out_dir, "trace.jsonl", trace_text.str());
            write_output(simulate_options.out_dir, "events.jsonl", events_text.str());
            write_output(simulate_options.out_dir, "trust.csv", trust_text.str());
            write_manifest(simulate_options, "simulate");
            std::cout << "simulated 1 scenario -> " << simulate_options.out_dir << "\n";
        }
        else if (score->parsed()) {
            ScenarioSet set = load_scenarios(score_options, {"A"});
            if (set.size() != 1) {
                throw Failure(kExitUsage, "score takes exactly one scenario");
            }
            const std::string trace_text = read_file(score_trace);
            ccrm_trace* trace = nullptr;
            check(ccrm_trace_parse_jsonl(trace_text.c_str(), &trace));
            StringHandle result;
            const ccrm_status status =
                ccrm_score(set.raw.front(), trace, score_kind.c_str(), &result.ptr);
            ccrm_trace_free(trace);
            check(status);
            write_output(score_options.out_dir, "score.json", result.str());
            write_manifest(score_options, "score", json{{"trace", score_trace}, {"kind", score_kind}});
            std::cout << result.str();
        }
        else if (calibrate->parsed()) {
            ScenarioSet set = load_scenarios(calibrate_options, {"A", "B", "C"});
            json config = config_with_bounds(calibrate_options);
            config["iterations"] = calibrate_iterations;
            config["chains"] = calibrate_chains;
            if (!calibrate_options.params.empty()) {
                config["start"] = json::parse(json_argument(calibrate_options.params));
            }
            StringHandle optimum;
            StringHandle log;
            const std::string config_text = config.dump();
            check(ccrm_calibrate(set.raw.data(), set.size(), config_text.c_str(), &optimum.ptr,
                                 &log.ptr));
            write_output(calibrate_options.out_dir, "optimum.json", optimum.str());
            write_output(calibrate_options.out_dir, "optimum_theta.json",
                         json::parse(optimum.str()).at("optimum").dump(2) + "\n");
            write_output(calibrate_options.out_dir, "eval_log.csv", log.str());
            write_manifest(calibrate_options, "calibrate",
                           json{{"iterations", calibrate_iterations}, {"chains", calibrate_chains}});
            std::cout << optimum.str();
        }
        else if (validate->parsed()) {
            CommonOptions holdout_options = validate_options;
            if (holdout_options.cases.empty() && holdout_options.scenario_paths.empty()) {
                holdout_options.cases = {"D"};
            }
            ScenarioSet holdout_set = load_scenarios(holdout_options, {});
            CommonOptions training_options;
            training_options.cases =
                validate_training.empty() ? std::vector<std::string>{"A", "B", "C"} : validate_training;
            ScenarioSet training_set = load_scenarios(training_options, {});
            json config = config_with_bounds(validate_options);
            StringHandle result;
            const std::string theta = theta_argument(validate_options);
            const std::string config_text = config.dump();
            check(ccrm_validate(holdout_set.raw.data(), holdout_set.size(), training_set.raw.data(),
                                training_set.size(), theta.c_str(), config_text.c_str(),
                                &result.ptr));
            write_output(validate_options.out_dir, "validation.json", result.str());
            write_manifest(validate_options, "validate");
            std::cout << result.str();
        }
        else if (sensitivity->parsed()) {
            ScenarioSet set = load_scenarios(sensitivity_options, {"A", "B", "C"});
            json config = config_with_bounds(sensitivity_options);
            config["samples"] = sensitivity_samples;
            StringHandle result;
            const std::string theta = theta_argument(sensitivity_options);
            const std::string config_text = config.dump();
            check(ccrm_sensitivity(set.raw.data(), set.size(), theta.c_str(), config_text.c_str(),
                                   &result.ptr));
            write_output(sensitivity_options.out_dir, "sensitivity.json", result.str());
            write_manifest(sensitivity_options, "sensitivity",
                           json{{"samples", sensitivity_samples}});
            std::cout << result.str();
        }
        else if (uq->parsed()) {
            ScenarioSet set = load_scenarios(uq_options, {"A", "B", "C"});
            json config = config_with_bounds(uq_options);
            config["samples"] = uq_samples;
            if (!uq_frozen.empty()) {
                config["frozen"] = uq_frozen;
            }
            StringHandle result;
            const std::string theta = theta_argument(uq_options);
            const std::string config_text = config.dump();
            check(ccrm_uq(set.raw.data(), set.size(), theta.c_str(), config_text.c_str(),
                          &result.ptr));
            write_output(uq_options.out_dir, "uq.json", result.str());
            write_manifest(uq_options, "uq", json{{"samples", uq_samples}, {"frozen", uq_frozen}});
            std::cout << result.str();
        }
        else if (baseline->parsed()) {
            ScenarioSet set = load_scenarios(baseline_options, {"A", "B", "C"});
            json config = config_with_bounds(baseline_options);
            config["models"] = baseline_models;
            StringHandle result;
            const std::string theta = theta_argument(baseline_options);
            const std::string config_text = config.dump();
            check(ccrm_baseline(set.raw.data(), set.size(), theta.c_str(), config_text.c_str(),
                                &result.ptr));
            write_output(baseline_options.out_dir, "baseline.json", result.str());
            write_manifest(baseline_options, "baseline", json{{"models", baseline_models}});
            std::cout << result.str();
        }
        else if (landscape->parsed()) {
            ScenarioSet set = load_scenarios(landscape_options, {"A", "B", "C"});
            json config = config_with_bounds(landscape_options);
            config["grid"] = landscape_grid;
            config["span"] = landscape_span;
            StringHandle result;
            const std::string theta = theta_argument(landscape_options);
            const std::string config_text = config.dump();
            check(ccrm_landscape(set.raw.data(), set.size(), theta.c_str(), config_text.c_str(),
                                 &result.ptr));
            write_output(landscape_options.out_dir, "landscape.csv", result.str());
            write_manifest(landscape_options, "landscape",
                           json{{"grid", landscape_grid}, {"span", landscape_span}});
            std::cout << "landscape grid " << landscape_grid << "x" << landscape_grid << " -> "
                      << landscape_options.out_dir << "\n";
        }
        else if (profile->parsed()) {
            const std::string log_text = read_file(profile_log);
            StringHandle result;
            const std::string bounds =
                profile_options.bounds.empty() ? "" : json_argument(profile_options.bounds);
            check(ccrm_profile(log_text.c_str(), profile_param.c_str(), profile_bins,
                               bounds.empty() ? nullptr : bounds.c_str(), &result.ptr));
            write_output(profile_options.out_dir, "profile_" + profile_param + ".csv", result.str());
            write_manifest(profile_options, "profile",
                           json{{"log", profile_log}, {"param", profile_param}, {"bins", profile_bins}});
            std::cout << result.str();
        }
        else if (expertise->parsed()) {
            const std::string table = read_file(expertise_table);
            StringHandle result;
            check(ccrm_expertise(table.c_str(), &result.ptr));
            write_output(expertise_options.out_dir, "expertise.json", result.str());
            write_manifest(expertise_options, "expertise", json{{"table", expertise_table}});
            std::cout << result.str();
        }
    }
    catch (const Failure& failure) {
        std::cerr << "error: " << failure.what() << "\n";
        return failure.code();
    }
    catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
