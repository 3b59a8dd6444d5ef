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
#include "ccrm/ccrm.h"

#include "core/analysis.hpp"
#include "core/calibrate.hpp"
#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/replacement.hpp"
#include "core/scenarios.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <string>

using nlohmann::json;

struct ccrm_scenario {
    ccrm::scen::Scenario value;
};

struct ccrm_trace {
    ccrm::sim::SimulationTrace value;
};

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& text)
{
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out) {
        std::memcpy(out, text.c_str(), text.size() + 1);
    }
    return out;
}

template <typename Fn>
ccrm_status guarded(Fn&& fn)
{
    try {
        fn();
        return CCRM_OK;
    }
    catch (const ccrm::UsageError& error) {
        g_last_error = error.what();
        return CCRM_ERR_USAGE;
    }
    catch (const ccrm::DataError& error) {
        g_last_error = error.what();
        return CCRM_ERR_DATA;
    }
    catch (const std::exception& error) {
        g_last_error = error.what();
        return CCRM_ERR_INTERNAL;
    }
}

json parse_config(const char* text, const char* what)
{
    if (text == nullptr || *text == '\0') {
        return json::object();
    }
    try {
        json doc = json::parse(text);
        if (!doc.is_object()) {
            throw ccrm::UsageError(std::string(what) + " must be a JSON object");
        }
        return doc;
    }
    catch (const json::exception& error) {
        throw ccrm::UsageError(std::string(what) + " is not valid JSON: " + error.what());
    }
}

ccrm::cal::Theta theta_from(const char* theta_json)
{
    return ccrm::io::theta_from_json(parse_config(theta_json, "theta"));
}

ccrm::cal::ParamSpace bounds_from(const json& config)
{
    if (config.contains("bounds")) {
        return ccrm::io::bounds_from_json(config.at("bounds"));
    }
    return ccrm::cal::ParamSpace{};
}

std::vector<ccrm::scen::Scenario> gather(const ccrm_scenario* const* scenarios, size_t count)
{
    if (scenarios == nullptr || count == 0) {
        throw ccrm::UsageError("at least one scenario handle is required");
    }
    std::vector<ccrm::scen::Scenario> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        if (scenarios[k] == nullptr) {
            throw ccrm::UsageError("scenario handle is null");
        }
        out.push_back(scenarios[k]->value);
    }
    return out;
}

ccrm::cal::TrainingObjective make_objective(const std::vector<ccrm::scen::Scenario>& scenarios,
                                            const json& config)
{
    return ccrm::cal::TrainingObjective(scenarios, config.value("runs", 8), config.value("jobs", 1));
}

void require_out(void* out)
{
    if (out == nullptr) {
        throw ccrm::UsageError("output pointer is null");
    }
}

} // namespace

extern "C" {

const char* ccrm_version(void)
{
    return ccrm::io::kVersion;
}

const char* ccrm_last_error(void)
{
    return g_last_error.c_str();
}

void ccrm_string_free(char* text)
{
    std::free(text);
}

ccrm_status ccrm_scenario_parse(const char* json_text, ccrm_scenario** out)
{
    return guarded([&]() {
        require_out(out);
        if (json_text == nullptr) {
            throw ccrm::UsageError("scenario text is null");
        }
        auto* handle = new ccrm_scenario{ccrm::scen::parse_scenario(json_text)};
        *out = handle;
    });
}

ccrm_status ccrm_scenario_builtin(const char* case_id, ccrm_scenario** out)
{
    return guarded([&]() {
        require_out(out);
        if (case_id == nullptr) {
            throw ccrm::UsageError("case id is null");
        }
        *out = new ccrm_scenario{ccrm::scen::builtin_case(case_id)};
    });
}

ccrm_status ccrm_scenario_print(const ccrm_scenario* scenario, char** out_text)
{
    return guarded([&]() {
        require_out(out_text);
        if (scenario == nullptr) {
            throw ccrm::UsageError("scenario handle is null");
        }
        *out_text = copy_string(ccrm::scen::print_scenario(scenario->value));
    });
}

ccrm_status ccrm_scenario_id(const ccrm_scenario* scenario, char** out_text)
{
    return guarded([&]() {
        require_out(out_text);
        if (scenario == nullptr) {
            throw ccrm::UsageError("scenario handle is null");
        }
        *out_text = copy_string(scenario->value.id);
    });
}

void ccrm_scenario_free(ccrm_scenario* scenario)
{
    delete scenario;
}

ccrm_status ccrm_split_holdout(size_t count, double fraction, uint64_t seed, char** out_json)
{
    return guarded([&]() {
        require_out(out_json);
        ccrm::Rng rng(seed);
        const ccrm::scen::HoldoutSplit split = ccrm::scen::split_holdout(count, fraction, rng);
        json doc{{"train", split.train}, {"holdout", split.holdout}};
        *out_json = copy_string(doc.dump(2) + "\n");
    });
}

ccrm_status ccrm_expertise(const char* table_csv, char** out_json)
{
    return guarded([&]() {
        require_out(out_json);
        if (table_csv == nullptr) {
            throw ccrm::UsageError("table text is null");
        }
        std::vector<std::string> domains;
        std::vector<std::vector<int>> matrix;
        ccrm::io::parse_expertise_csv(table_csv, domains, matrix);
        const auto scores = ccrm::scen::score_expertise_table(domains, matrix);
        *out_json = copy_string(ccrm::io::expertise_json(scores).dump(2) + "\n");
    });
}

ccrm_status ccrm_simulate(const ccrm_scenario* scenario, const char* params_json, uint64_t seed,
                          ccrm_trace** out)
{
    return guarded([&]() {
        require_out(out);
        if (scenario == nullptr) {
            throw ccrm::UsageError("scenario handle is null");
        }
        ccrm::rep::ModelParams params;
        const json config = parse_config(params_json, "params");
        if (!config.empty()) {
            params = ccrm::cal::apply_theta(ccrm::io::theta_from_json(config));
            // zeta stays a per-run draw unless explicitly given
            if (!config.contains("zeta")) {
                params.replacement.zeta.reset();
            }
            if (config.contains("noise_scale")) {
                params.dynamics.noise_scale = config.at("noise_scale").get<double>();
            }
        }
        else {
            params.replacement.zeta.reset();
        }
        ccrm::rep::Simulation simulation(scenario->value, params, seed);
        *out = new ccrm_trace{simulation.run()};
    });
}

ccrm_status ccrm_trace_to_jsonl(const ccrm_trace* trace, char** out_text)
{
    return guarded([&]() {
        require_out(out_text);
        if (trace == nullptr) {
            throw ccrm::UsageError("trace handle is null");
        }
        *out_text = copy_string(ccrm::io::trace_jsonl(trace->value));
    });
}

ccrm_status ccrm_trace_parse_jsonl(const char* text, ccrm_trace** out)
{
    return guarded([&]() {
        require_out(out);
        if (text == nullptr) {
            throw ccrm::UsageError("trace text is null");
        }
        *out = new ccrm_trace{ccrm::io::parse_trace_jsonl(text)};
    });
}

ccrm_status ccrm_trace_events_jsonl(const ccrm_trace* trace, char** out_text)
{
    return guarded([&]() {
        require_out(out_text);
        if (trace == nullptr) {
            throw ccrm::UsageError("trace handle is null");
        }
        *out_text = copy_string(ccrm::io::events_jsonl(trace->value));
    });
}

ccrm_status ccrm_trace_trust_csv(const ccrm_trace* trace, char** out_text)
{
    return guarded([&]() {
        require_out(out_text);
        if (trace == nullptr) {
            throw ccrm::UsageError("trace handle is null");
        }
        *out_text = copy_string(ccrm::io::trust_csv(trace->value));
    });
}

void ccrm_trace_free(ccrm_trace* trace)
{
    delete trace;
}

ccrm_status ccrm_score(const ccrm_scenario* scenario, const ccrm_trace* trace, const char* kind,
                       char** out_json)
{
    return guarded([&]() {
        require_out(out_json);
        if (scenario == nullptr || trace == nullptr) {
            throw ccrm::UsageError("scenario and trace handles are required");
        }
        const std::string which = kind == nullptr ? "both" : kind;
        json doc = json::object();
        if (which == "training" || which == "both") {
            if (!scenario->value.training.empty()) {
                doc["training"] = ccrm::io::case_score_json(
                    ccrm::stmt::score_case(scenario->value.id, scenario->value.training, trace->value));
            }
        }
        if (which == "validation" || which == "both") {
            if (!scenario->value.validation.empty()) {
                doc["validation"] = ccrm::io::case_score_json(ccrm::stmt::score_case(
                    scenario->value.id, scenario->value.validation, trace->value));
            }
        }
        if (which != "training" && which != "validation" && which != "both") {
            throw ccrm::UsageError("kind must be training, validation or both");
        }
        if (doc.empty()) {
            throw ccrm::DataError("scenario carries no statements of kind '" + which + "'");
        }
        *out_json = copy_string(doc.dump(2) + "\n");
    });
}

ccrm_status ccrm_calibrate(const ccrm_scenario* const* scenarios, size_t count,
                           const char* config_json, char** out_json, char** out_log_csv)
{
    return guarded([&]() {
        require_out(out_json);
        require_out(out_log_csv);
        const json config = parse_config(config_json, "config");
        const auto set = gather(scenarios, count);
        const ccrm::cal::TrainingObjective objective = make_objective(set, config);
        const ccrm::cal::ParamSpace space = bounds_from(config);

        ccrm::cal::SpsaConfig spsa;
        spsa.iterations = config.value("iterations", 3000);
        spsa.runs = config.value("runs", 8);
        spsa.seed = config.value("seed", 0ULL);
        spsa.a_scale = config.value("a_scale", spsa.a_scale);
        spsa.c_scale = config.value("c_scale", spsa.c_scale);
        spsa.alpha = config.value("alpha", spsa.alpha);
        spsa.gamma = config.value("gamma", spsa.gamma);
        spsa.stability = config.value("stability", spsa.stability);

        std::optional<ccrm::cal::Theta> start;
        if (config.contains("start")) {
            start = ccrm::io::theta_from_json(config.at("start"));
        }

        const int chains = config.value("chains", 1);
        if (chains < 1) {
            throw ccrm::UsageError("chains must be at least 1");
        }

        json chain_list = json::array();
        std::vector<ccrm::cal::EvalRecord> merged_log;
        ccrm::cal::Theta best{};
        double best_value = std::numeric_limits<double>::infinity();
        for (int chain = 0; chain < chains; ++chain) {
            ccrm::cal::SpsaConfig chain_config = spsa;
            chain_config.seed = ccrm::Rng::derive(spsa.seed, {0xc4a1ULL, static_cast<std::uint64_t>(chain)});
            const ccrm::cal::SpsaResult result =
                ccrm::cal::spsa_optimize(objective, space, chain_config, start);
            chain_list.push_back({{"optimum", ccrm::io::theta_json(result.optimum)},
                                  {"objective", result.optimum_value}});
            merged_log.insert(merged_log.end(), result.log.begin(), result.log.end());
            if (result.optimum_value < best_value) {
                best_value = result.optimum_value;
                best = result.optimum;
            }
        }

        json doc{{"optimum", ccrm::io::theta_json(best)},
                 {"objective", best_value},
                 {"iterations", spsa.iterations},
                 {"runs", spsa.runs},
                 {"chains", std::move(chain_list)}};
        *out_json = copy_string(doc.dump(2) + "\n");
        *out_log_csv = copy_string(ccrm::io::eval_log_csv(merged_log));
    });
}

ccrm_status ccrm_validate(const ccrm_scenario* const* holdout, size_t holdout_count,
                          const ccrm_scenario* const* training, size_t training_count,
                          const char* theta_json, const char* config_json, char** out_json)
{
    return guarded([&]() {
        require_out(out_json);
        const json config = parse_config(config_json, "config");
        const auto holdout_set = gather(holdout, holdout_count);
        std::vector<ccrm::scen::Scenario> training_set;
        if (training != nullptr && training_count > 0) {
            training_set = gather(training, training_count);
        }
        const ccrm::ana::ValidationReport report = ccrm::ana::validate(
            theta_from(theta_json), holdout_set, training_set, config.value("runs", 8),
            config.value("seed", 0ULL), config.value("tolerance", 0.25));
        *out_json = copy_string(ccrm::io::validation_json(report).dump(2) + "\n");
    });
}

ccrm_status ccrm_sensitivity(const ccrm_scenario* const* scenarios, size_t count,
                             const char* theta_json, const char* config_json, char** out_json)
{
    return guarded([&]() {
        require_out(out_json);
        const json config = parse_config(config_json, "config");
        const auto set = gather(scenarios, count);
        const ccrm::cal::TrainingObjective objective = make_objective(set, config);
        const ccrm::ana::SensitivityReport report = ccrm::ana::sensitivity_report(
            objective, bounds_from(config), theta_from(theta_json), config.value("samples", 40),
            config.value("seed", 0ULL));
        *out_json = copy_string(ccrm::io::sensitivity_json(report).dump(2) + "\n");
    });
}

ccrm_status ccrm_uq(const ccrm_scenario* const* scenarios, size_t count, const char* theta_json,
                    const char* config_json, char** out_json)
{
    return guarded([&]() {
        require_out(out_json);
        const json config = parse_config(config_json, "config");
        const auto set = gather(scenarios, count);
        const ccrm::cal::TrainingObjective objective = make_objective(set, config);
        std::vector<int> frozen;
        if (config.contains("frozen")) {
            for (const json& name : config.at("frozen")) {
                frozen.push_back(ccrm::cal::param_index(name.get<std::string>()));
            }
        }
        const ccrm::ana::UqResult result = ccrm::ana::forward_uq(
            objective, bounds_from(config), theta_from(theta_json), set,
            config.value("samples", 200), config.value("runs", 4), config.value("seed", 0ULL),
            frozen);
        *out_json = copy_string(ccrm::io::uq_json(result).dump(2) + "\n");
    });
}

ccrm_status ccrm_baseline(const ccrm_scenario* const* scenarios, size_t count,
                          const char* theta_json, const char* config_json, char** out_json)
{
    return guarded([&]() {
        require_out(out_json);
        const json config = parse_config(config_json, "config");
        const auto set = gather(scenarios, count);
        const ccrm::cal::TrainingObjective objective = make_objective(set, config);
        const ccrm::ana::BaselineResult result = ccrm::ana::null_baseline(
            objective, bounds_from(config), theta_from(theta_json), config.value("models", 200),
            config.value("seed", 0ULL));
        *out_json = copy_string(ccrm::io::baseline_json(result).dump(2) + "\n");
    });
}

ccrm_status ccrm_landscape(const ccrm_scenario* const* scenarios, size_t count,
                           const char* theta_json, const char* config_json, char** out_csv)
{
    return guarded([&]() {
        require_out(out_csv);
        const json config = parse_config(config_json, "config");
        const auto set = gather(scenarios, count);
        const ccrm::cal::TrainingObjective objective = make_objective(set, config);
        ccrm::cal::LandscapeConfig slice_config;
        slice_config.grid = config.value("grid", slice_config.grid);
        slice_config.span = config.value("span", slice_config.span);
        slice_config.sigma = config.value("sigma", slice_config.sigma);
        slice_config.seed = config.value("seed", 0ULL);
        const ccrm::cal::LandscapeSlice slice = ccrm::cal::landscape_slice(
            objective, bounds_from(config), theta_from(theta_json), slice_config);
        *out_csv = copy_string(ccrm::io::landscape_csv(slice));
    });
}

ccrm_status ccrm_profile(const char* eval_log_csv, const char* param_name, int bins,
                         const char* bounds_json, char** out_csv)
{
    return guarded([&]() {
        require_out(out_csv);
        if (eval_log_csv == nullptr || param_name == nullptr) {
            throw ccrm::UsageError("profile needs an evaluation log and a parameter name");
        }
        ccrm::cal::ParamSpace space;
        if (bounds_json != nullptr && *bounds_json != '\0') {
            space = ccrm::io::bounds_from_json(parse_config(bounds_json, "bounds"));
        }
        const auto log = ccrm::io::parse_eval_log_csv(eval_log_csv);
        const ccrm::ana::ProfilePoints points =
            ccrm::ana::profile_1d(log, space, ccrm::cal::param_index(param_name), bins);
        *out_csv = copy_string(ccrm::io::profile_csv(points));
    });
}

} // extern "C"
