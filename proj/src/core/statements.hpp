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
#ifndef CCRM_STATEMENTS_H
#define CCRM_STATEMENTS_H

#include "core/frac.hpp"
#include "core/trace.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ccrm::stmt {

/**
 * Statements are machine-checkable predicates over a simulation trace,
 * expressed as nested arrays:
 *
 *   ["holds_role", agent, role, time]
 *   ["present", agent, time] / ["absent", agent, time]
 *   ["trust_top", observer, [target...], time]
 *   ["monotone_high_trust", threshold, t0, t1 (, "proportional")]
 *   ["aggregate_delta", selector, metric, t0, t1, relation, amount]
 *   ["aggregate_level", selector, metric, time, relation, amount]
 *   ["near_value", selector, metric, time, target, scale]
 *   ["first_selected", agent]
 *   ["unsupported", label]
 *   ["and", p...] / ["or", p...] / ["not", p]
 *   ["weighted", [[weight, p], ...]]
 *
 * Times are "init", "removal", "conclave", "instatement" or "end", with an
 * optional +N / -N day offset ("removal+7"); resolved steps are clamped to
 * the trace. A missing anchor (say, no conclave ever formed) makes the
 * predicate score zero rather than erroring. Selectors: "all_agents",
 * "orphans", "all_edges", "orphan_edges", "family_edges",
 * "non_kingpin_edges". Metrics: "mean_criminal_capital",
 * "mean_violence_capital", "mean_financial_capital", "mean_trust", and for
 * deltas additionally "mean_abs_trust_change" and "degree_dist_l1".
 * Relations: "increase", "ge_delta", "ge_ratio", "ge", "le".
 */
class Predicate;
using PredicatePtr = std::shared_ptr<const Predicate>;

/// Anchor + day offset, resolved against a concrete trace.
struct TimeRef {
    enum class Anchor { init, removal, conclave, instatement, end_of_run };
    Anchor anchor = Anchor::init;
    int offset = 0;

    static TimeRef parse(const std::string& text);
    std::string str() const;
    /// Step index in the trace, or nullopt when the anchor never happened.
    std::optional<int> resolve(const sim::SimulationTrace& trace) const;
};

struct Statement {
    std::string id; // e.g. "A.IV"
    enum class Kind { training, validation } kind = Kind::training;
    Frac max_score{1, 1};
    std::string description;
    nlohmann::json predicate; // canonical source form
    PredicatePtr compiled;

    static Statement from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

struct StatementScore {
    std::string id;
    double achieved = 0.0;
    Frac max{0, 1};
};

struct CaseScore {
    std::string case_id;
    double achieved = 0.0;
    Frac max{0, 1};
    std::vector<StatementScore> per_statement;
    int failed_count = 0; // statements with achieved < max
};

/// Compile a predicate expression; throws DataError on malformed input.
PredicatePtr compile_predicate(const nlohmann::json& expr);

/// Credit in [0, 1] for the compiled predicate against a trace.
double evaluate_predicate(const Predicate& predicate, const sim::SimulationTrace& trace);

/// Achieved points in [0, max_score].
double evaluate_statement(const Statement& statement, const sim::SimulationTrace& trace);

/// Score one case's statements; all statements must share the case id prefix.
CaseScore score_case(const std::string& case_id, const std::vector<Statement>& statements,
                     const sim::SimulationTrace& trace);

/// Partial credit for "as close as possible" targets: 1/(1 + |value-target|/scale).
double squash_partial(double value, double target, double scale = 1.0);

} // namespace ccrm::stmt

#endif // CCRM_STATEMENTS_H
