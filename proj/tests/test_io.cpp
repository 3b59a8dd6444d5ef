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
#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/replacement.hpp"
#include "core/scenarios.hpp"

#include <doctest.h>

using namespace ccrm;

TEST_CASE("doubles print in shortest round-trip form")
{
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(io::format_double(0.0) == "0");
}

TEST_CASE("a trace survives the JSONL round trip")
{
    const scen::Scenario scenario = scen::builtin_case("A");
    rep::Simulation simulation(scenario, rep::ModelParams{}, 404);
    const sim::SimulationTrace trace = simulation.run();

    const std::string text = io::trace_jsonl(trace);
    const sim::SimulationTrace parsed = io::parse_trace_jsonl(text);
    CHECK(parsed.agent_ids == trace.agent_ids);
    CHECK(parsed.steps.size() == trace.steps.size());
    CHECK(parsed.events.size() == trace.events.size());
    CHECK(parsed.removal_step == trace.removal_step);
    CHECK(parsed.conclave_step == trace.conclave_step);
    CHECK(parsed.instatement_step == trace.instatement_step);
    CHECK(io::trace_jsonl(parsed) == text); // byte-stable second pass

    // scores computed on the parsed trace agree with the original
    const stmt::CaseScore original = stmt::score_case("A", scenario.training, trace);
    const stmt::CaseScore reloaded = stmt::score_case("A", scenario.training, parsed);
    CHECK(original.achieved == reloaded.achieved);
    CHECK(original.failed_count == reloaded.failed_count);

    CHECK_THROWS_AS(io::parse_trace_jsonl("{\"type\":\"step\"}"), DataError);
    CHECK_THROWS_AS(io::parse_trace_jsonl("garbage"), DataError);
}

TEST_CASE("trust CSV lists every edge of every step")
{
    const scen::Scenario scenario = scen::builtin_case("A");
    rep::Simulation simulation(scenario, rep::ModelParams{}, 11);
    const sim::SimulationTrace trace = simulation.run();
    const std::string csv = io::trust_csv(trace);
    CHECK(csv.rfind("step,agent_i,agent_j,trust,social_tag\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) {
        lines += c == '\n' ? 1 : 0;
    }
    std::size_t edges = 0;
    for (const auto& snap : trace.steps) {
        edges += snap.edges.size();
    }
    CHECK(lines == edges + 1);
}

TEST_CASE("the evaluation log round-trips through CSV")
{
    std::vector<cal::EvalRecord> log;
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        cal::EvalRecord record;
        record.iteration = k / 2;
        for (int d = 0; d < cal::kDim; ++d) {
            record.theta[d] = rng.uniform01();
        }
        record.value = rng.uniform(0.0, 3.0);
        record.runs = 8;
        log.push_back(record);
    }
    const std::string csv = io::eval_log_csv(log);
    const std::vector<cal::EvalRecord> parsed = io::parse_eval_log_csv(csv);
    REQUIRE(parsed.size() == log.size());
    for (std::size_t k = 0; k < log.size(); ++k) {
        CHECK(parsed[k].iteration == log[k].iteration);
        CHECK(parsed[k].value == log[k].value); // shortest round-trip format is exact
        for (int d = 0; d < cal::kDim; ++d) {
            CHECK(parsed[k].theta[d] == log[k].theta[d]);
        }
    }
    CHECK_THROWS_AS(io::parse_eval_log_csv(""), DataError);
    CHECK_THROWS_AS(io::parse_eval_log_csv("iteration,beta\n1,2\n"), DataError);
}

TEST_CASE("theta and bounds JSON converters validate input")
{
    const cal::Theta theta = io::theta_from_json({{"beta", 0.4}, {"zeta", 0.9}});
    CHECK(theta[0] == 0.4);
    CHECK(theta[6] == 0.9);
    CHECK(theta[3] == cal::default_theta()[3]);
    CHECK_THROWS_AS(io::theta_from_json({{"omega", 1.0}}), UsageError);

    const cal::ParamSpace space = io::bounds_from_json({{"psi", {1.0, 4.0}}});
    CHECK(space.lower[4] == 1.0);
    CHECK(space.upper[4] == 4.0);
    CHECK(space.lower[0] == 0.0); // untouched default
    CHECK_THROWS_AS(io::bounds_from_json({{"psi", {4.0, 1.0}}}), DataError);
    CHECK(io::bounds_json(space)["psi"][0] == 1.0);
}

TEST_CASE("expertise CSV accepts an optional header row")
{
    std::vector<std::string> domains;
    std::vector<std::vector<int>> matrix;
    io::parse_expertise_csv("domain,E1,E2\nDomain 1,1,0\nDomain 2,0,0\n", domains, matrix);
    REQUIRE(domains.size() == 2);
    CHECK(matrix[0] == std::vector<int>{1, 0});
    io::parse_expertise_csv("Domain 1,1,1\n", domains, matrix);
    CHECK(domains.size() == 1);
    CHECK_THROWS_AS(io::parse_expertise_csv("", domains, matrix), DataError);
    CHECK_THROWS_AS(io::parse_expertise_csv("Domain 1,7\n", domains, matrix), DataError);
}
