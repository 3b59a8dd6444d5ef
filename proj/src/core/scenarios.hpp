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
#ifndef CCRM_SCENARIOS_H
#define CCRM_SCENARIOS_H

#include "core/network.hpp"
#include "core/rng.hpp"
#include "core/statements.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ccrm::scen {

struct ScenarioAgent {
    std::string id;
    net::BusinessRole business_role = net::BusinessRole::organizer;
    net::SocialRole social_role = net::SocialRole::neutral;
    std::optional<net::Capitals> capitals; // unset: sample from the role range
};

struct ScenarioEdge {
    std::string i;
    std::string j;
    net::SocialRole social_tag = net::SocialRole::neutral;
    std::optional<double> trust; // unset: sample from the tag range
};

struct Intervention {
    std::string target;
    int step = 0;
};

/**
 * A machine-readable case file: the initial network, the intervention, and
 * the statements the resulting traces are scored against. The metadata map
 * carries the narrative annotations (time, agents, behaviour, rules,
 * topology, ties) that document how the case was translated.
 */
struct Scenario {
    std::string id;
    std::map<std::string, std::string> metadata;
    std::vector<ScenarioAgent> agents;
    std::vector<ScenarioEdge> edges;
    Intervention intervention;
    int horizon = 365;
    std::vector<stmt::Statement> training;
    std::vector<stmt::Statement> validation;
};

inline constexpr const char* kScenarioSchema = "ccrm-scenario/1";

/**
 * Parse and validate a scenario document ("ccrm-scenario/1"). Validation
 * failures throw DataError with a field path; missing metadata sections are
 * reported through `warnings` when given.
 */
Scenario parse_scenario(const std::string& text, std::vector<std::string>* warnings = nullptr);

/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string print_scenario(const Scenario& scenario);

/// Built-in encodings of the four case files. Valid ids: "A", "B", "C", "D".
Scenario builtin_case(const std::string& id);

const std::vector<std::string>& builtin_case_ids();

/**
 * Seeded random partition of n items; the holdout side receives
 * round(fraction * n) items, at least 1 and at most n - 1.
 */
struct HoldoutSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> holdout;
};
HoldoutSplit split_holdout(std::size_t count, double fraction, Rng& rng);

/// The pinned default split: cases A-C train, case D is held out.
void pinned_split(std::vector<std::string>& train, std::vector<std::string>& holdout);

struct DomainScore {
    std::string domain;
    int score = 0;
    bool included = false;
};

/**
 * Row sums of a domains x experts binary matrix; a domain below score 1 is
 * flagged for exclusion from the project.
 */
std::vector<DomainScore> score_expertise_table(const std::vector<std::string>& domains,
                                               const std::vector<std::vector<int>>& matrix);

} // namespace ccrm::scen

#endif // CCRM_SCENARIOS_H
