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
#include "core/network.hpp"
#include "core/scenarios.hpp"

#include <doctest.h>

#include <fstream>
#include <set>

using namespace ccrm;

namespace {

const char* kMinimalScenario = R"({
  "schema": "ccrm-scenario/1",
  "id": "mini",
  "agents": [
    {"id": "boss", "business_role": "kingpin", "social_role": "neutral", "capitals": "sample"},
    {"id": "heir", "business_role": "organizer", "social_role": "family", "capitals": "sample"}
  ],
  "edges": [
    {"i": "boss", "j": "heir", "social_tag": "family", "trust": 0.8}
  ],
  "intervention": {"target": "boss", "step": 0},
  "horizon": 60
})";

std::string patched(const std::string& needle, const std::string& replacement)
{
    std::string text = kMinimalScenario;
    const auto at = text.find(needle);
    REQUIRE(at != std::string::npos);
    text.replace(at, needle.size(), replacement);
    return text;
}

} // namespace

TEST_CASE("a minimal document parses and reports missing metadata sections")
{
    std::vector<std::string> warnings;
    const scen::Scenario scenario = scen::parse_scenario(kMinimalScenario, &warnings);
    CHECK(scenario.id == "mini");
    CHECK(scenario.agents.size() == 2);
    CHECK(scenario.edges.size() == 1);
    CHECK(scenario.horizon == 60);
    CHECK(warnings.size() == 6); // all six translation sections absent
}

TEST_CASE("schema violations carry a field path")
{
    CHECK_THROWS_WITH_AS(scen::parse_scenario("{}"), doctest::Contains("schema"), DataError);
    CHECK_THROWS_WITH_AS(scen::parse_scenario(patched("\"heir\", \"business_role\": \"organizer\"",
                                                      "\"heir\", \"business_role\": \"wizard\"")),
                         doctest::Contains("wizard"), DataError);
    CHECK_THROWS_WITH_AS(scen::parse_scenario(patched("\"j\": \"heir\"", "\"j\": \"ghost\"")),
                         doctest::Contains("ghost"), DataError);
    CHECK_THROWS_WITH_AS(scen::parse_scenario(patched("\"target\": \"boss\"", "\"target\": \"heir\"")),
                         doctest::Contains("kingpin or murderbroker"), DataError);
    CHECK_THROWS_WITH_AS(scen::parse_scenario(patched("\"horizon\": 60", "\"horizon\": 30")),
                         doctest::Contains("45"), DataError);
    CHECK_THROWS_WITH_AS(scen::parse_scenario(patched("\"trust\": 0.8", "\"trust\": 1.4")),
                         doctest::Contains("[0,1]"), DataError);
    CHECK_THROWS_AS(scen::parse_scenario("not json"), DataError);
}

TEST_CASE("print -> parse -> print is byte-stable")
{
    const scen::Scenario scenario = scen::parse_scenario(kMinimalScenario);
    const std::string canonical = scen::print_scenario(scenario);
    const scen::Scenario reparsed = scen::parse_scenario(canonical);
    CHECK(scen::print_scenario(reparsed) == canonical);
}

TEST_CASE("built-in cases validate, round-trip, and keep their rosters")
{
    for (const std::string& id : scen::builtin_case_ids()) {
        const scen::Scenario scenario = scen::builtin_case(id);
        std::vector<std::string> warnings;
        const std::string canonical = scen::print_scenario(scenario);
        const scen::Scenario reparsed = scen::parse_scenario(canonical, &warnings);
        CHECK(warnings.empty());
        CHECK(scen::print_scenario(reparsed) == canonical);
        CHECK(reparsed.id == id);
    }
    CHECK_THROWS_AS(scen::builtin_case("Z"), DataError);

    // case A ships the narrative roster: the kingpin Main plus persons A..G
    const scen::Scenario case_a = scen::builtin_case("A");
    std::set<std::string> roster;
    for (const auto& agent : case_a.agents) {
        roster.insert(agent.id);
    }
    CHECK(roster == std::set<std::string>{"Main", "A", "B", "C", "D", "E", "F", "G"});
    CHECK(case_a.intervention.step == 60);

    // case D removes a murderbroker and carries no family ties
    const scen::Scenario case_d = scen::builtin_case("D");
    for (const auto& agent : case_d.agents) {
        if (agent.id == case_d.intervention.target) {
            CHECK(agent.business_role == net::BusinessRole::murderbroker);
        }
    }
    for (const auto& edge : case_d.edges) {
        CHECK(edge.social_tag != net::SocialRole::family);
    }
}

TEST_CASE("built-in statement totals match the source tables")
{
    auto total = [](const std::vector<stmt::Statement>& statements) {
        Frac sum{0, 1};
        for (const auto& statement : statements) {
            sum = sum + statement.max_score;
        }
        return sum;
    };
    CHECK(total(scen::builtin_case("A").training) == Frac(8));
    CHECK(total(scen::builtin_case("B").training) == Frac(6));
    CHECK(total(scen::builtin_case("C").training) == Frac(6));
    CHECK(total(scen::builtin_case("D").validation) == Frac(5));
    CHECK(scen::builtin_case("A").validation.empty());
    CHECK(scen::builtin_case("D").training.empty());
}

TEST_CASE("sampled capitals in built-ins always land in the role ranges")
{
    const scen::Scenario scenario = scen::builtin_case("A");
    for (int round = 0; round < 200; ++round) {
        Rng rng(Rng::derive(9, {static_cast<std::uint64_t>(round)}));
        const net::NetworkState state = net::build_network(scenario, rng);
        for (std::size_t a = 0; a < state.agents.size(); ++a) {
            const net::RoleInfo& info = net::role_info(state.agents[a].business_role);
            const net::Capitals& caps = state.agents[a].capitals;
            if (!scenario.agents[a].capitals) {
                CHECK(caps.criminal >= info.criminal.lo);
                CHECK(caps.criminal <= info.criminal.hi);
                CHECK(caps.violence >= info.violence.lo);
                CHECK(caps.violence <= info.violence.hi);
                CHECK(caps.financial >= info.financial.lo);
                CHECK(caps.financial <= info.financial.hi);
            }
        }
    }
}

TEST_CASE("the synthetic example case file parses but carries no statements")
{
    std::ifstream stream("data/synthetic_case.json");
    REQUIRE(stream.good());
    std::string text((std::istreambuf_iterator<char>(stream)), std::istreambuf_iterator<char>());
    std::vector<std::string> warnings;
    const scen::Scenario scenario = scen::parse_scenario(text, &warnings);
    CHECK(warnings.empty());
    CHECK(scenario.training.empty());
    CHECK(scenario.validation.empty());
}

TEST_CASE("holdout split sizes and determinism")
{
    Rng rng(3);
    const scen::HoldoutSplit split = scen::split_holdout(10, 0.2, rng);
    CHECK(split.holdout.size() == 2);
    CHECK(split.train.size() == 8);

    Rng r1(55);
    Rng r2(55);
    const scen::HoldoutSplit s1 = scen::split_holdout(25, 0.2, r1);
    const scen::HoldoutSplit s2 = scen::split_holdout(25, 0.2, r2);
    CHECK(s1.holdout == s2.holdout);
    CHECK(s1.train == s2.train);

    Rng tiny(1);
    CHECK_THROWS_AS(scen::split_holdout(1, 0.2, tiny), UsageError);
    CHECK_THROWS_AS(scen::split_holdout(10, 0.0, tiny), UsageError);

    // an aggressive fraction still leaves at least one on each side
    Rng skew(2);
    const scen::HoldoutSplit clamped = scen::split_holdout(4, 0.9, skew);
    CHECK(clamped.train.size() >= 1);
    CHECK(clamped.holdout.size() >= 1);

    std::vector<std::string> train;
    std::vector<std::string> holdout;
    scen::pinned_split(train, holdout);
    CHECK(train == std::vector<std::string>{"A", "B", "C"});
    CHECK(holdout == std::vector<std::string>{"D"});
}

TEST_CASE("expertise table scoring flags underrepresented domains")
{
    const std::vector<std::string> domains = {"Domain 1", "Domain 2", "Domain 3", "Domain 4",
                                              "Domain 5"};
    const std::vector<std::vector<int>> matrix = {
        {1, 1, 1, 1, 1}, {1, 0, 0, 1, 1}, {0, 0, 0, 0, 0}, {1, 1, 0, 1, 1}, {0, 0, 0, 0, 0}};
    const auto scores = scen::score_expertise_table(domains, matrix);
    REQUIRE(scores.size() == 5);
    CHECK(scores[0].score == 5);
    CHECK(scores[0].included);
    CHECK(scores[1].score == 3);
    CHECK(scores[2].score == 0);
    CHECK_FALSE(scores[2].included);
    CHECK(scores[3].score == 4);
    CHECK_FALSE(scores[4].included);

    // boundary: a single expert vote keeps the domain
    const auto single = scen::score_expertise_table({"solo"}, {{1}});
    CHECK(single[0].score == 1);
    CHECK(single[0].included);

    CHECK_THROWS_AS(scen::score_expertise_table({}, {}), DataError);
    CHECK_THROWS_AS(scen::score_expertise_table({"bad"}, {{2}}), DataError);
}
