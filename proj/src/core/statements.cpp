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
#include "core/statements.hpp"

#include "core/errors.hpp"
#include "core/roles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ccrm::stmt {

using nlohmann::json;

TimeRef TimeRef::parse(const std::string& text)
{
    static const std::map<std::string, Anchor> anchors = {
        {"init", Anchor::init},
        {"removal", Anchor::removal},
        {"conclave", Anchor::conclave},
        {"instatement", Anchor::instatement},
        {"end", Anchor::end_of_run},
    };

    std::string name = text;
    int offset = 0;
    const auto plus = text.find_first_of("+-");
    if (plus != std::string::npos) {
        name = text.substr(0, plus);
        try {
            offset = std::stoi(text.substr(plus));
        }
        catch (const std::exception&) {
            throw DataError("malformed time offset in '" + text + "'");
        }
    }
    const auto found = anchors.find(name);
    if (found == anchors.end()) {
        throw DataError("unknown time reference '" + text + "'");
    }
    return TimeRef{found->second, offset};
}

std::string TimeRef::str() const
{
    std::string name;
    switch (anchor) {
    case Anchor::init:
        name = "init";
        break;
    case Anchor::removal:
        name = "removal";
        break;
    case Anchor::conclave:
        name = "conclave";
        break;
    case Anchor::instatement:
        name = "instatement";
        break;
    case Anchor::end_of_run:
        name = "end";
        break;
    }
    if (offset > 0) {
        name += "+" + std::to_string(offset);
    }
    else if (offset < 0) {
        name += std::to_string(offset);
    }
    return name;
}

std::optional<int> TimeRef::resolve(const sim::SimulationTrace& trace) const
{
    std::optional<int> base;
    switch (anchor) {
    case Anchor::init:
        base = 0;
        break;
    case Anchor::removal:
        base = trace.removal_step;
        break;
    case Anchor::conclave:
        base = trace.conclave_step;
        break;
    case Anchor::instatement:
        base = trace.instatement_step;
        break;
    case Anchor::end_of_run:
        base = trace.last_step();
        break;
    }
    if (!base) {
        return std::nullopt;
    }
    return std::clamp(*base + offset, 0, trace.last_step());
}

namespace {

enum class Selector {
    all_agents,
    orphans,
    all_edges,
    orphan_edges,
    family_edges,
    non_kingpin_edges,
};

enum class Metric {
    mean_criminal_capital,
    mean_violence_capital,
    mean_financial_capital,
    mean_trust,
    mean_abs_trust_change, // delta only
    degree_dist_l1,        // delta only
};

enum class Relation {
    increase,
    ge_delta,
    ge_ratio,
    ge,
    le,
};

Selector parse_selector(const std::string& text)
{
    if (text == "all_agents") return Selector::all_agents;
    if (text == "orphans") return Selector::orphans;
    if (text == "all_edges") return Selector::all_edges;
    if (text == "orphan_edges") return Selector::orphan_edges;
    if (text == "family_edges") return Selector::family_edges;
    if (text == "non_kingpin_edges") return Selector::non_kingpin_edges;
    throw DataError("unknown selector '" + text + "'");
}

Metric parse_metric(const std::string& text)
{
    if (text == "mean_criminal_capital") return Metric::mean_criminal_capital;
    if (text == "mean_violence_capital") return Metric::mean_violence_capital;
    if (text == "mean_financial_capital") return Metric::mean_financial_capital;
    if (text == "mean_trust") return Metric::mean_trust;
    if (text == "mean_abs_trust_change") return Metric::mean_abs_trust_change;
    if (text == "degree_dist_l1") return Metric::degree_dist_l1;
    throw DataError("unknown metric '" + text + "'");
}

Relation parse_relation(const std::string& text)
{
    if (text == "increase") return Relation::increase;
    if (text == "ge_delta") return Relation::ge_delta;
    if (text == "ge_ratio") return Relation::ge_ratio;
    if (text == "ge") return Relation::ge;
    if (text == "le") return Relation::le;
    throw DataError("unknown relation '" + text + "'");
}

bool selector_is_edge(Selector selector)
{
    return selector == Selector::all_edges || selector == Selector::orphan_edges ||
           selector == Selector::family_edges || selector == Selector::non_kingpin_edges;
}

} // namespace

class Predicate {
public:
    enum class Kind {
        holds_role,
        presence,
        trust_top,
        monotone_high_trust,
        aggregate_delta,
        aggregate_level,
        near_value,
        first_selected,
        unsupported,
        all_of,
        any_of,
        negation,
        weighted,
    };

    Kind kind = Kind::unsupported;
    std::string agent;
    net::BusinessRole role = net::BusinessRole::kingpin;
    bool want_present = true;
    std::vector<std::string> targets;
    double threshold = 0.0;
    double amount = 0.0;
    double scale = 1.0;
    bool proportional = false;
    Selector selector = Selector::all_agents;
    Metric metric = Metric::mean_trust;
    Relation relation = Relation::ge;
    TimeRef t0;
    TimeRef t1;
    std::vector<PredicatePtr> children;
    std::vector<Frac> weights;
};

namespace {

int require_agent(const sim::SimulationTrace& trace, const std::string& id)
{
    const int index = trace.index_of(id);
    if (index < 0) {
        throw DataError("statement references agent '" + id + "' absent from the scenario");
    }
    return index;
}

bool is_boss_role(net::BusinessRole role)
{
    return role == net::BusinessRole::kingpin || role == net::BusinessRole::murderbroker;
}

double evaluate_metric_level(Selector selector, Metric metric, const sim::StepSnap& snap)
{
    double sum = 0.0;
    int n = 0;
    if (selector_is_edge(selector)) {
        for (const sim::EdgeSnap& edge : snap.edges) {
            bool eligible = true;
            switch (selector) {
            case Selector::orphan_edges: {
                const sim::AgentSnap* a = snap.find_agent(edge.i);
                const sim::AgentSnap* b = snap.find_agent(edge.j);
                eligible = a && b && a->orphan && b->orphan;
                break;
            }
            case Selector::family_edges:
                eligible = edge.tag == net::SocialRole::family;
                break;
            case Selector::non_kingpin_edges: {
                const sim::AgentSnap* a = snap.find_agent(edge.i);
                const sim::AgentSnap* b = snap.find_agent(edge.j);
                eligible = a && b && !is_boss_role(a->role) && !is_boss_role(b->role);
                break;
            }
            default:
                break;
            }
            if (!eligible) {
                continue;
            }
            if (metric != Metric::mean_trust) {
                throw DataError("edge selector requires the mean_trust metric");
            }
            sum += edge.trust;
            ++n;
        }
    }
    else {
        for (const sim::AgentSnap& agent : snap.agents) {
            if (selector == Selector::orphans && !agent.orphan) {
                continue;
            }
            switch (metric) {
            case Metric::mean_criminal_capital:
                sum += agent.capitals.criminal;
                break;
            case Metric::mean_violence_capital:
                sum += agent.capitals.violence;
                break;
            case Metric::mean_financial_capital:
                sum += agent.capitals.financial;
                break;
            default:
                throw DataError("agent selector requires a capital metric");
            }
            ++n;
        }
    }
    if (n == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return sum / n;
}

// Mean |trust change| over edges alive at both times whose endpoints never
// hold the boss role at either time.
double mean_abs_trust_change(const sim::StepSnap& before, const sim::StepSnap& after)
{
    double sum = 0.0;
    int n = 0;
    for (const sim::EdgeSnap& edge : before.edges) {
        const sim::EdgeSnap* latest = after.find_edge(edge.i, edge.j);
        if (!latest) {
            continue;
        }
        bool boss = false;
        for (int endpoint : {edge.i, edge.j}) {
            const sim::AgentSnap* now = before.find_agent(endpoint);
            const sim::AgentSnap* then = after.find_agent(endpoint);
            boss = boss || (now && is_boss_role(now->role)) || (then && is_boss_role(then->role));
        }
        if (boss) {
            continue;
        }
        sum += std::abs(latest->trust - edge.trust);
        ++n;
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / n;
}

// L1 distance between the normalized degree histograms of two snapshots.
double degree_distribution_shift(const sim::StepSnap& before, const sim::StepSnap& after)
{
    auto histogram = [](const sim::StepSnap& snap) {
        std::map<int, double> buckets;
        if (snap.agents.empty()) {
            return buckets;
        }
        std::map<int, int> degree;
        for (const sim::AgentSnap& agent : snap.agents) {
            degree[agent.agent] = 0;
        }
        for (const sim::EdgeSnap& edge : snap.edges) {
            ++degree[edge.i];
            ++degree[edge.j];
        }
        for (const auto& [agent, d] : degree) {
            buckets[d] += 1.0 / static_cast<double>(snap.agents.size());
        }
        return buckets;
    };

    const auto hist0 = histogram(before);
    const auto hist1 = histogram(after);
    double l1 = 0.0;
    for (const auto& [d, p] : hist0) {
        const auto other = hist1.find(d);
        l1 += std::abs(p - (other == hist1.end() ? 0.0 : other->second));
    }
    for (const auto& [d, p] : hist1) {
        if (hist0.find(d) == hist0.end()) {
            l1 += p;
        }
    }
    return l1;
}

double credit_of(const Predicate& node, const sim::SimulationTrace& trace);

double leaf_credit(const Predicate& node, const sim::SimulationTrace& trace)
{
    switch (node.kind) {
    case Predicate::Kind::holds_role: {
        const int agent = require_agent(trace, node.agent);
        const auto step = node.t0.resolve(trace);
        if (!step) {
            return 0.0;
        }
        const sim::AgentSnap* snap = trace.at(*step).find_agent(agent);
        return snap && snap->role == node.role ? 1.0 : 0.0;
    }
    case Predicate::Kind::presence: {
        const int agent = require_agent(trace, node.agent);
        const auto step = node.t0.resolve(trace);
        if (!step) {
            return 0.0;
        }
        const bool there = trace.at(*step).find_agent(agent) != nullptr;
        return there == node.want_present ? 1.0 : 0.0;
    }
    case Predicate::Kind::trust_top: {
        const int observer = require_agent(trace, node.agent);
        std::vector<int> wanted;
        wanted.reserve(node.targets.size());
        for (const std::string& target : node.targets) {
            wanted.push_back(require_agent(trace, target));
        }
        const auto step = node.t0.resolve(trace);
        if (!step) {
            return 0.0;
        }
        const sim::StepSnap& snap = trace.at(*step);
        if (!snap.find_agent(observer)) {
            return 0.0;
        }
        struct Neighbor {
            int agent;
            double trust;
        };
        std::vector<Neighbor> neighbors;
        for (const sim::EdgeSnap& edge : snap.edges) {
            if (edge.i == observer) {
                neighbors.push_back({edge.j, edge.trust});
            }
            else if (edge.j == observer) {
                neighbors.push_back({edge.i, edge.trust});
            }
        }
        if (neighbors.size() < wanted.size()) {
            return 0.0;
        }
        std::sort(neighbors.begin(), neighbors.end(), [&](const Neighbor& a, const Neighbor& b) {
            if (a.trust != b.trust) {
                return a.trust > b.trust;
            }
            return trace.agent_ids[a.agent] < trace.agent_ids[b.agent];
        });
        std::vector<int> top;
        for (std::size_t k = 0; k < wanted.size(); ++k) {
            top.push_back(neighbors[k].agent);
        }
        std::sort(top.begin(), top.end());
        std::sort(wanted.begin(), wanted.end());
        return top == wanted ? 1.0 : 0.0;
    }
    case Predicate::Kind::monotone_high_trust: {
        const auto s0 = node.t0.resolve(trace);
        const auto s1 = node.t1.resolve(trace);
        if (!s0 || !s1) {
            return 0.0;
        }
        const sim::StepSnap& before = trace.at(*s0);
        const sim::StepSnap& after = trace.at(*s1);
        int qualifying = 0;
        int satisfied = 0;
        for (const sim::EdgeSnap& edge : before.edges) {
            if (edge.trust <= node.threshold) {
                continue;
            }
            ++qualifying;
            const sim::EdgeSnap* latest = after.find_edge(edge.i, edge.j);
            if (latest && latest->trust >= edge.trust) {
                ++satisfied;
            }
        }
        if (qualifying == 0) {
            return 1.0; // vacuously true
        }
        if (node.proportional) {
            return static_cast<double>(satisfied) / qualifying;
        }
        return satisfied == qualifying ? 1.0 : 0.0;
    }
    case Predicate::Kind::aggregate_delta: {
        const auto s0 = node.t0.resolve(trace);
        const auto s1 = node.t1.resolve(trace);
        if (!s0 || !s1) {
            return 0.0;
        }
        const sim::StepSnap& before = trace.at(*s0);
        const sim::StepSnap& after = trace.at(*s1);
        double v0 = 0.0;
        double v1 = 0.0;
        if (node.metric == Metric::mean_abs_trust_change) {
            v0 = 0.0;
            v1 = mean_abs_trust_change(before, after);
        }
        else if (node.metric == Metric::degree_dist_l1) {
            v0 = 0.0;
            v1 = degree_distribution_shift(before, after);
        }
        else {
            v0 = evaluate_metric_level(node.selector, node.metric, before);
            v1 = evaluate_metric_level(node.selector, node.metric, after);
        }
        if (std::isnan(v0) || std::isnan(v1)) {
            return 0.0;
        }
        switch (node.relation) {
        case Relation::increase:
            return v1 > v0 ? 1.0 : 0.0;
        case Relation::ge_delta:
            return v1 - v0 >= node.amount ? 1.0 : 0.0;
        case Relation::ge_ratio:
            return v0 != 0.0 && v1 / v0 >= node.amount ? 1.0 : 0.0;
        case Relation::ge:
            return v1 >= node.amount ? 1.0 : 0.0;
        case Relation::le:
            return v1 <= node.amount ? 1.0 : 0.0;
        }
        return 0.0;
    }
    case Predicate::Kind::aggregate_level: {
        const auto step = node.t0.resolve(trace);
        if (!step) {
            return 0.0;
        }
        const double value = evaluate_metric_level(node.selector, node.metric, trace.at(*step));
        if (std::isnan(value)) {
            return 0.0;
        }
        switch (node.relation) {
        case Relation::ge:
            return value >= node.amount ? 1.0 : 0.0;
        case Relation::le:
            return value <= node.amount ? 1.0 : 0.0;
        default:
            throw DataError("aggregate_level supports only 'ge' and 'le'");
        }
    }
    case Predicate::Kind::near_value: {
        const auto step = node.t0.resolve(trace);
        if (!step) {
            return 0.0;
        }
        const double value = evaluate_metric_level(node.selector, node.metric, trace.at(*step));
        if (std::isnan(value)) {
            return 0.0;
        }
        return squash_partial(value, node.amount, node.scale);
    }
    case Predicate::Kind::first_selected: {
        const int agent = require_agent(trace, node.agent);
        for (const sim::TraceEvent& event : trace.events) {
            if (event.type == sim::EventType::selection) {
                return event.subject == agent ? 1.0 : 0.0;
            }
        }
        return 0.0;
    }
    case Predicate::Kind::unsupported:
        return 0.0;
    default:
        throw DataError("predicate node is not a leaf");
    }
}

double credit_of(const Predicate& node, const sim::SimulationTrace& trace)
{
    switch (node.kind) {
    case Predicate::Kind::all_of: {
        double credit = 1.0;
        for (const auto& child : node.children) {
            credit = std::min(credit, credit_of(*child, trace));
        }
        return credit;
    }
    case Predicate::Kind::any_of: {
        double credit = 0.0;
        for (const auto& child : node.children) {
            credit = std::max(credit, credit_of(*child, trace));
        }
        return credit;
    }
    case Predicate::Kind::negation:
        return 1.0 - credit_of(*node.children.front(), trace);
    case Predicate::Kind::weighted: {
        double total = 0.0;
        double earned = 0.0;
        for (std::size_t k = 0; k < node.children.size(); ++k) {
            const double weight = node.weights[k].to_double();
            total += weight;
            earned += weight * credit_of(*node.children[k], trace);
        }
        return total == 0.0 ? 0.0 : earned / total;
    }
    default:
        return leaf_credit(node, trace);
    }
}

TimeRef time_at(const json& expr, std::size_t index)
{
    return TimeRef::parse(expr.at(index).get<std::string>());
}

} // namespace

PredicatePtr compile_predicate(const json& expr)
{
    if (!expr.is_array() || expr.empty() || !expr.at(0).is_string()) {
        throw DataError("predicate must be a non-empty array starting with an operator");
    }
    const std::string op = expr.at(0).get<std::string>();
    auto node = std::make_shared<Predicate>();
    try {
        if (op == "holds_role") {
            node->kind = Predicate::Kind::holds_role;
            node->agent = expr.at(1).get<std::string>();
            node->role = net::parse_role(expr.at(2).get<std::string>());
            node->t0 = time_at(expr, 3);
        }
        else if (op == "present" || op == "absent") {
            node->kind = Predicate::Kind::presence;
            node->want_present = op == "present";
            node->agent = expr.at(1).get<std::string>();
            node->t0 = time_at(expr, 2);
        }
        else if (op == "trust_top") {
            node->kind = Predicate::Kind::trust_top;
            node->agent = expr.at(1).get<std::string>();
            for (const auto& target : expr.at(2)) {
                node->targets.push_back(target.get<std::string>());
            }
            if (node->targets.empty()) {
                throw DataError("trust_top requires at least one target");
            }
            node->t0 = time_at(expr, 3);
        }
        else if (op == "monotone_high_trust") {
            node->kind = Predicate::Kind::monotone_high_trust;
            node->threshold = expr.at(1).get<double>();
            node->t0 = time_at(expr, 2);
            node->t1 = time_at(expr, 3);
            if (expr.size() > 4) {
                if (expr.at(4).get<std::string>() != "proportional") {
                    throw DataError("monotone_high_trust: unknown flag");
                }
                node->proportional = true;
            }
        }
        else if (op == "aggregate_delta") {
            node->kind = Predicate::Kind::aggregate_delta;
            node->selector = parse_selector(expr.at(1).get<std::string>());
            node->metric = parse_metric(expr.at(2).get<std::string>());
            node->t0 = time_at(expr, 3);
            node->t1 = time_at(expr, 4);
            node->relation = parse_relation(expr.at(5).get<std::string>());
            node->amount = expr.at(6).get<double>();
        }
        else if (op == "aggregate_level") {
            node->kind = Predicate::Kind::aggregate_level;
            node->selector = parse_selector(expr.at(1).get<std::string>());
            node->metric = parse_metric(expr.at(2).get<std::string>());
            node->t0 = time_at(expr, 3);
            node->relation = parse_relation(expr.at(4).get<std::string>());
            node->amount = expr.at(5).get<double>();
        }
        else if (op == "near_value") {
            node->kind = Predicate::Kind::near_value;
            node->selector = parse_selector(expr.at(1).get<std::string>());
            node->metric = parse_metric(expr.at(2).get<std::string>());
            node->t0 = time_at(expr, 3);
            node->amount = expr.at(4).get<double>();
            node->scale = expr.size() > 5 ? expr.at(5).get<double>() : 1.0;
            if (node->scale <= 0.0) {
                throw DataError("near_value scale must be positive");
            }
        }
        else if (op == "first_selected") {
            node->kind = Predicate::Kind::first_selected;
            node->agent = expr.at(1).get<std::string>();
        }
        else if (op == "unsupported") {
            node->kind = Predicate::Kind::unsupported;
            node->agent = expr.size() > 1 ? expr.at(1).get<std::string>() : "";
        }
        else if (op == "and" || op == "or") {
            node->kind = op == "and" ? Predicate::Kind::all_of : Predicate::Kind::any_of;
            for (std::size_t k = 1; k < expr.size(); ++k) {
                node->children.push_back(compile_predicate(expr.at(k)));
            }
            if (node->children.empty()) {
                throw DataError("'" + op + "' requires at least one operand");
            }
        }
        else if (op == "not") {
            node->kind = Predicate::Kind::negation;
            node->children.push_back(compile_predicate(expr.at(1)));
        }
        else if (op == "weighted") {
            node->kind = Predicate::Kind::weighted;
            for (const auto& pair : expr.at(1)) {
                node->weights.push_back(Frac::parse(pair.at(0).get<std::string>()));
                node->children.push_back(compile_predicate(pair.at(1)));
            }
            if (node->children.empty()) {
                throw DataError("'weighted' requires at least one component");
            }
        }
        else {
            throw DataError("unknown predicate operator '" + op + "'");
        }
    }
    catch (const json::exception& error) {
        throw DataError("malformed '" + op + "' predicate: " + error.what());
    }
    return node;
}

double evaluate_predicate(const Predicate& predicate, const sim::SimulationTrace& trace)
{
    return credit_of(predicate, trace);
}

Statement Statement::from_json(const json& doc)
{
    Statement statement;
    try {
        statement.id = doc.at("id").get<std::string>();
        const std::string kind = doc.at("kind").get<std::string>();
        if (kind == "training") {
            statement.kind = Kind::training;
        }
        else if (kind == "validation") {
            statement.kind = Kind::validation;
        }
        else {
            throw DataError("statement kind must be 'training' or 'validation'");
        }
        statement.max_score = Frac::parse(doc.at("max").get<std::string>());
        statement.description = doc.value("description", "");
        statement.predicate = doc.at("predicate");
    }
    catch (const json::exception& error) {
        throw DataError(std::string("malformed statement: ") + error.what());
    }
    statement.compiled = compile_predicate(statement.predicate);
    return statement;
}

json Statement::to_json() const
{
    json doc;
    doc["id"] = id;
    doc["kind"] = kind == Kind::training ? "training" : "validation";
    doc["max"] = max_score.str();
    doc["description"] = description;
    doc["predicate"] = predicate;
    return doc;
}

double evaluate_statement(const Statement& statement, const sim::SimulationTrace& trace)
{
    return statement.max_score.to_double() * credit_of(*statement.compiled, trace);
}

CaseScore score_case(const std::string& case_id, const std::vector<Statement>& statements,
                     const sim::SimulationTrace& trace)
{
    CaseScore score;
    score.case_id = case_id;
    for (const Statement& statement : statements) {
        if (statement.id.substr(0, statement.id.find('.')) != case_id) {
            throw DataError("statement '" + statement.id + "' does not belong to case " + case_id);
        }
        const double achieved = evaluate_statement(statement, trace);
        score.per_statement.push_back({statement.id, achieved, statement.max_score});
        score.achieved += achieved;
        score.max = score.max + statement.max_score;
        if (achieved < statement.max_score.to_double() - 1e-9) {
            ++score.failed_count;
        }
    }
    return score;
}

double squash_partial(double value, double target, double scale)
{
    return 1.0 / (1.0 + std::abs(value - target) / scale);
}

} // namespace ccrm::stmt
