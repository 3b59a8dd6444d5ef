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
#include "core/scenarios.hpp"

#include "core/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace ccrm::scen {

using nlohmann::json;

namespace {

const std::vector<std::string> kMetadataSections = {"time", "agents", "behaviour",
                                                    "rules", "topology", "ties"};

net::Capitals parse_capitals(const json& value, const std::string& path)
{
    net::Capitals caps;
    for (const char* field : {"criminal", "violence", "financial"}) {
        if (!value.contains(field) || !value.at(field).is_number()) {
            throw DataError(path + "." + field + ": expected a number in [0,1]");
        }
    }
    caps.criminal = value.at("criminal").get<double>();
    caps.violence = value.at("violence").get<double>();
    caps.financial = value.at("financial").get<double>();
    if (!caps.in_unit_range()) {
        throw DataError(path + ": capital outside [0,1]");
    }
    return caps;
}

std::vector<stmt::Statement> parse_statement_list(const json& list, stmt::Statement::Kind kind,
                                                  const std::string& path)
{
    std::vector<stmt::Statement> statements;
    for (std::size_t k = 0; k < list.size(); ++k) {
        stmt::Statement statement = stmt::Statement::from_json(list.at(k));
        if (statement.kind != kind) {
            throw DataError(path + "[" + std::to_string(k) + "]: statement '" + statement.id +
                            "' has the wrong kind for this list");
        }
        statements.push_back(std::move(statement));
    }
    return statements;
}

} // namespace

Scenario parse_scenario(const std::string& text, std::vector<std::string>* warnings)
{
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::exception& error) {
        throw DataError(std::string("scenario is not valid JSON: ") + error.what());
    }
    if (!doc.is_object()) {
        throw DataError("scenario: expected a JSON object");
    }
    if (doc.value("schema", "") != kScenarioSchema) {
        throw DataError("scenario.schema: expected \"" + std::string(kScenarioSchema) + "\"");
    }

    Scenario scenario;
    scenario.id = doc.value("id", "");
    if (scenario.id.empty()) {
        throw DataError("scenario.id: required non-empty string");
    }

    if (doc.contains("metadata")) {
        if (!doc.at("metadata").is_object()) {
            throw DataError("scenario.metadata: expected an object of strings");
        }
        for (const auto& [key, value] : doc.at("metadata").items()) {
            if (!value.is_string()) {
                throw DataError("scenario.metadata." + key + ": expected a string");
            }
            scenario.metadata[key] = value.get<std::string>();
        }
    }
    if (warnings) {
        for (const std::string& section : kMetadataSections) {
            if (scenario.metadata.find(section) == scenario.metadata.end()) {
                warnings->push_back("metadata section '" + section +
                                    "' missing; case translations should state it");
            }
        }
    }

    if (!doc.contains("agents") || !doc.at("agents").is_array()) {
        throw DataError("scenario.agents: expected an array");
    }
    std::set<std::string> seen_ids;
    for (std::size_t k = 0; k < doc.at("agents").size(); ++k) {
        const std::string path = "scenario.agents[" + std::to_string(k) + "]";
        const json& entry = doc.at("agents").at(k);
        ScenarioAgent agent;
        agent.id = entry.value("id", "");
        if (agent.id.empty()) {
            throw DataError(path + ".id: required non-empty string");
        }
        if (!seen_ids.insert(agent.id).second) {
            throw DataError(path + ".id: duplicate agent id '" + agent.id + "'");
        }
        if (!entry.contains("business_role")) {
            throw DataError(path + ".business_role: required");
        }
        agent.business_role = net::parse_role(entry.at("business_role").get<std::string>());
        agent.social_role = net::parse_social(entry.value("social_role", "neutral"));
        if (entry.contains("capitals") && entry.at("capitals") != json("sample")) {
            agent.capitals = parse_capitals(entry.at("capitals"), path + ".capitals");
        }
        scenario.agents.push_back(std::move(agent));
    }

    if (doc.contains("edges")) {
        if (!doc.at("edges").is_array()) {
            throw DataError("scenario.edges: expected an array");
        }
        std::set<std::pair<std::string, std::string>> seen_edges;
        for (std::size_t k = 0; k < doc.at("edges").size(); ++k) {
            const std::string path = "scenario.edges[" + std::to_string(k) + "]";
            const json& entry = doc.at("edges").at(k);
            ScenarioEdge edge;
            edge.i = entry.value("i", "");
            edge.j = entry.value("j", "");
            if (seen_ids.find(edge.i) == seen_ids.end() || seen_ids.find(edge.j) == seen_ids.end()) {
                throw DataError(path + ": edge " + edge.i + "--" + edge.j +
                                " references a missing agent");
            }
            if (edge.i == edge.j) {
                throw DataError(path + ": self edge on '" + edge.i + "'");
            }
            auto key = std::minmax(edge.i, edge.j);
            if (!seen_edges.insert(key).second) {
                throw DataError(path + ": duplicate edge " + edge.i + "--" + edge.j);
            }
            edge.social_tag = net::parse_social(entry.value("social_tag", "neutral"));
            if (entry.contains("trust") && entry.at("trust") != json("sample")) {
                if (!entry.at("trust").is_number()) {
                    throw DataError(path + ".trust: expected a number or \"sample\"");
                }
                edge.trust = entry.at("trust").get<double>();
                if (*edge.trust < 0.0 || *edge.trust > 1.0) {
                    throw DataError(path + ".trust: outside [0,1]");
                }
            }
            scenario.edges.push_back(std::move(edge));
        }
    }

    if (!doc.contains("intervention") || !doc.at("intervention").is_object()) {
        throw DataError("scenario.intervention: required object");
    }
    scenario.intervention.target = doc.at("intervention").value("target", "");
    scenario.intervention.step = doc.at("intervention").value("step", 0);
    if (seen_ids.find(scenario.intervention.target) == seen_ids.end()) {
        throw DataError("scenario.intervention.target: unknown agent '" +
                        scenario.intervention.target + "'");
    }
    for (const ScenarioAgent& agent : scenario.agents) {
        if (agent.id == scenario.intervention.target &&
            !net::is_intervention_role(agent.business_role)) {
            throw DataError("scenario.intervention.target: '" + agent.id +
                            "' is not a kingpin or murderbroker");
        }
    }
    if (scenario.intervention.step < 0) {
        throw DataError("scenario.intervention.step: must be >= 0");
    }

    scenario.horizon = doc.value("horizon", 365);
    // The promotion window must fit inside the run.
    if (scenario.horizon < scenario.intervention.step + 45) {
        throw DataError("scenario.horizon: must reach intervention step + 45");
    }

    if (doc.contains("statements")) {
        const json& statements = doc.at("statements");
        if (!statements.is_object()) {
            throw DataError("scenario.statements: expected an object");
        }
        if (statements.contains("training")) {
            scenario.training = parse_statement_list(statements.at("training"),
                                                     stmt::Statement::Kind::training,
                                                     "scenario.statements.training");
        }
        if (statements.contains("validation")) {
            scenario.validation = parse_statement_list(statements.at("validation"),
                                                       stmt::Statement::Kind::validation,
                                                       "scenario.statements.validation");
        }
    }
    return scenario;
}

std::string print_scenario(const Scenario& scenario)
{
    json doc;
    doc["schema"] = kScenarioSchema;
    doc["id"] = scenario.id;
    doc["metadata"] = json::object();
    for (const auto& [key, value] : scenario.metadata) {
        doc["metadata"][key] = value;
    }
    doc["agents"] = json::array();
    for (const ScenarioAgent& agent : scenario.agents) {
        json entry;
        entry["id"] = agent.id;
        entry["business_role"] = std::string(net::role_name(agent.business_role));
        entry["social_role"] = std::string(net::social_name(agent.social_role));
        if (agent.capitals) {
            entry["capitals"] = {{"criminal", agent.capitals->criminal},
                                 {"violence", agent.capitals->violence},
                                 {"financial", agent.capitals->financial}};
        }
        else {
            entry["capitals"] = "sample";
        }
        doc["agents"].push_back(std::move(entry));
    }
    doc["edges"] = json::array();
    for (const ScenarioEdge& edge : scenario.edges) {
        json entry;
        entry["i"] = edge.i;
        entry["j"] = edge.j;
        entry["social_tag"] = std::string(net::social_name(edge.social_tag));
        if (edge.trust) {
            entry["trust"] = *edge.trust;
        }
        else {
            entry["trust"] = "sample";
        }
        doc["edges"].push_back(std::move(entry));
    }
    doc["intervention"] = {{"target", scenario.intervention.target},
                           {"step", scenario.intervention.step}};
    doc["horizon"] = scenario.horizon;
    doc["statements"]["training"] = json::array();
    for (const stmt::Statement& statement : scenario.training) {
        doc["statements"]["training"].push_back(statement.to_json());
    }
    doc["statements"]["validation"] = json::array();
    for (const stmt::Statement& statement : scenario.validation) {
        doc["statements"]["validation"].push_back(statement.to_json());
    }
    return doc.dump(2) + "\n";
}

namespace {

ScenarioAgent make_agent(std::string id, net::BusinessRole role, net::SocialRole social)
{
    ScenarioAgent agent;
    agent.id = std::move(id);
    agent.business_role = role;
    agent.social_role = social;
    return agent;
}

ScenarioAgent make_agent(std::string id, net::BusinessRole role, net::SocialRole social,
                         double criminal, double violence, double financial)
{
    ScenarioAgent agent = make_agent(std::move(id), role, social);
    agent.capitals = net::Capitals{criminal, violence, financial};
    return agent;
}

ScenarioEdge make_edge(std::string i, std::string j, net::SocialRole tag, double trust)
{
    ScenarioEdge edge;
    edge.i = std::move(i);
    edge.j = std::move(j);
    edge.social_tag = tag;
    edge.trust = trust;
    return edge;
}

stmt::Statement make_statement(const std::string& id, stmt::Statement::Kind kind,
                               const std::string& max, const std::string& description,
                               json predicate)
{
    json doc;
    doc["id"] = id;
    doc["kind"] = kind == stmt::Statement::Kind::training ? "training" : "validation";
    doc["max"] = max;
    doc["description"] = description;
    doc["predicate"] = std::move(predicate);
    return stmt::Statement::from_json(doc);
}

constexpr auto kTraining = stmt::Statement::Kind::training;
constexpr auto kValidation = stmt::Statement::Kind::validation;

using net::BusinessRole;
using net::SocialRole;

Scenario case_a()
{
    Scenario scenario;
    scenario.id = "A";
    scenario.metadata = {
        {"encoding", "interpretation"},
        {"time", "Daily steps over one year; the network runs 60 stable days before the "
                 "kingpin is removed on day 60."},
        {"agents", "Kingpin Main with inner circle A and B (brothers), cousin C, financier D, "
                   "old friend E; F runs an independent operation nearby; G depends on Main "
                   "for his trade."},
        {"behaviour", "The inner circle reorganizes around a successor; G loses his only tie "
                      "and drifts out of the milieu."},
        {"rules", "Successor search follows the default conclave and promotion windows."},
        {"topology", "Family-tied core around Main, weaker friend ties outward, G attached "
                     "by a single neutral edge."},
        {"ties", "Family trust dominates the core; F is reachable only through one weak "
                 "neutral tie to A."},
    };

    scenario.agents = {
        make_agent("Main", BusinessRole::kingpin, SocialRole::neutral),
        make_agent("A", BusinessRole::organizer, SocialRole::family, 0.90, 0.05, 0.50),
        make_agent("B", BusinessRole::organizer, SocialRole::family, 0.82, 0.45, 0.52),
        make_agent("C", BusinessRole::coordinator, SocialRole::family, 0.50, 0.50, 0.40),
        make_agent("D", BusinessRole::financer, SocialRole::friend_tie),
        make_agent("E", BusinessRole::broker, SocialRole::friend_tie),
        make_agent("F", BusinessRole::coordinator, SocialRole::neutral, 0.95, 0.55, 0.75),
        make_agent("G", BusinessRole::distributor, SocialRole::neutral),
    };
    scenario.edges = {
        make_edge("Main", "A", SocialRole::family, 0.90),
        make_edge("Main", "B", SocialRole::family, 0.85),
        make_edge("Main", "C", SocialRole::family, 0.80),
        make_edge("Main", "D", SocialRole::friend_tie, 0.60),
        make_edge("Main", "E", SocialRole::friend_tie, 0.55),
        make_edge("Main", "G", SocialRole::neutral, 0.40),
        make_edge("A", "B", SocialRole::family, 0.90),
        make_edge("A", "C", SocialRole::family, 0.88),
        make_edge("A", "D", SocialRole::friend_tie, 0.62),
        make_edge("A", "E", SocialRole::friend_tie, 0.60),
        make_edge("A", "F", SocialRole::neutral, 0.22),
        make_edge("B", "C", SocialRole::friend_tie, 0.35),
        make_edge("B", "D", SocialRole::friend_tie, 0.45),
        make_edge("B", "E", SocialRole::friend_tie, 0.40),
        make_edge("C", "D", SocialRole::friend_tie, 0.30),
        make_edge("C", "E", SocialRole::friend_tie, 0.30),
        make_edge("D", "E", SocialRole::friend_tie, 0.50),
    };
    scenario.intervention = {"Main", 60};
    scenario.horizon = 365;

    scenario.training = {
        make_statement("A.I", kTraining, "1", "Correct person is new kingpin by the end of the simulation",
                       json::array({"holds_role", "A", "kingpin", "end"})),
        make_statement("A.II", kTraining, "1", "Correct person is kingpin directly after conclave",
                       json::array({"holds_role", "A", "kingpin", "instatement"})),
        make_statement("A.III", kTraining, "1", "Person G should not be there anymore at the end of the simulation",
                       json::array({"absent", "G", "end"})),
        make_statement("A.IV", kTraining, "1", "A trusts B and C the most",
                       json::array({"trust_top", "A", json::array({"B", "C"}), "end"})),
        make_statement("A.V", kTraining, "1",
                       "All high trust values (>0.8) should have increased or at least remained "
                       "the same directly after the killing",
                       json::array({"monotone_high_trust", 0.8, "removal", "removal+1"})),
        make_statement("A.VI", kTraining, "1",
                       "The average violence capital among the orphans increases after the "
                       "liquidation (measured at 1 week after)",
                       json::array({"aggregate_delta", "orphans", "mean_violence_capital", "removal",
                                    "removal+7", "increase", 0})),
        make_statement("A.VII", kTraining, "1", "Average trust among the orphans increased after 1 year",
                       json::array({"aggregate_delta", "orphan_edges", "mean_trust", "removal", "end",
                                    "increase", 0})),
        make_statement("A.VIII", kTraining, "1",
                       "Connectivity and/or trust values among the non-kingpin nodes changed "
                       "significantly (at least 0.1)",
                       json::array({"or",
                                    json::array({"aggregate_delta", "non_kingpin_edges",
                                                 "mean_abs_trust_change", "removal", "end", "ge_delta",
                                                 0.1}),
                                    json::array({"aggregate_delta", "all_agents", "degree_dist_l1",
                                                 "removal", "end", "ge_delta", 0.1})})),
    };
    return scenario;
}

Scenario case_b()
{
    Scenario scenario;
    scenario.id = "B";
    scenario.metadata = {
        {"encoding", "interpretation"},
        {"time", "Daily steps over one year; removal on the first day."},
        {"agents", "Iconic criminal X heads a cluster of six: old confidant Y, supplier A, "
                   "infrastructure man B, enforcer C, family member D, childhood friend E; P is "
                   "A's contact in the wider network."},
        {"behaviour", "Y tries to step into X's place but lacks the standing; the cluster "
                      "reorganizes around its strongest member."},
        {"rules", "Default replacement windows; E only joins the search when P's tie to him "
                  "is trusted enough."},
        {"topology", "Dense friendship cluster around X embedded in a larger trafficking "
                     "network."},
        {"ties", "A, B and C trust each other most; Y hangs off the cluster through E."},
    };

    scenario.agents = {
        make_agent("X", BusinessRole::kingpin, SocialRole::neutral),
        make_agent("Y", BusinessRole::murderbroker, SocialRole::friend_tie, 0.95, 0.95, 0.12),
        make_agent("A", BusinessRole::organizer, SocialRole::friend_tie, 0.92, 0.82, 0.72),
        make_agent("B", BusinessRole::organizer, SocialRole::friend_tie, 0.88, 0.78, 0.68),
        make_agent("C", BusinessRole::assassin, SocialRole::friend_tie, 0.65, 0.85, 0.60),
        make_agent("D", BusinessRole::financer, SocialRole::family),
        make_agent("E", BusinessRole::coordinator, SocialRole::friend_tie, 0.45, 0.30, 0.30),
        make_agent("P", BusinessRole::coordinator, SocialRole::neutral, 0.48, 0.30, 0.30),
    };
    scenario.edges = {
        make_edge("X", "Y", SocialRole::friend_tie, 0.85),
        make_edge("X", "A", SocialRole::friend_tie, 0.65),
        make_edge("X", "B", SocialRole::friend_tie, 0.60),
        make_edge("X", "C", SocialRole::neutral, 0.45),
        make_edge("X", "D", SocialRole::family, 0.70),
        make_edge("A", "B", SocialRole::friend_tie, 0.92),
        make_edge("A", "C", SocialRole::friend_tie, 0.90),
        make_edge("B", "C", SocialRole::friend_tie, 0.88),
        make_edge("A", "D", SocialRole::friend_tie, 0.60),
        make_edge("A", "P", SocialRole::friend_tie, 0.88),
        make_edge("P", "E", SocialRole::friend_tie, 0.54),
        make_edge("E", "Y", SocialRole::friend_tie, 0.95),
        make_edge("Y", "C", SocialRole::neutral, 0.45),
        make_edge("A", "Y", SocialRole::neutral, 0.20),
        make_edge("Y", "D", SocialRole::friend_tie, 0.95),
        make_edge("B", "D", SocialRole::friend_tie, 0.45),
        make_edge("B", "Y", SocialRole::neutral, 0.22),
        make_edge("C", "D", SocialRole::friend_tie, 0.40),
    };
    scenario.intervention = {"X", 0};
    scenario.horizon = 365;

    scenario.training = {
        make_statement("B.I", kTraining, "1",
                       "Correct triplet of persons is together the new kingpin by the end of the "
                       "simulation",
                       json::array({"unsupported", "triumvirate-replacement"})),
        make_statement("B.II", kTraining, "1",
                       "Correct person is new kingpin by the begin of the simulation (Y selected "
                       "at first)",
                       json::array({"first_selected", "Y"})),
        make_statement("B.III", kTraining, "1",
                       "The average trust among the orphans increases after the liquidation "
                       "(measured at 364 days after)",
                       json::array({"aggregate_delta", "orphan_edges", "mean_trust", "removal",
                                    "removal+364", "increase", 0})),
        make_statement("B.IV", kTraining, "1", "Person Y should not be there anymore at the end of the simulation",
                       json::array({"absent", "Y", "end"})),
        make_statement("B.V", kTraining, "1/3", "A trusts B and C the most",
                       json::array({"trust_top", "A", json::array({"B", "C"}), "end"})),
        make_statement("B.VI", kTraining, "1/3", "B trusts A and C the most",
                       json::array({"trust_top", "B", json::array({"A", "C"}), "end"})),
        make_statement("B.VII", kTraining, "1/3", "C trusts A and B the most",
                       json::array({"trust_top", "C", json::array({"A", "B"}), "end"})),
        make_statement("B.VIII", kTraining, "1",
                       "All high trust values (>0.8) should have increased or at least remained "
                       "the same directly after the killing",
                       json::array({"monotone_high_trust", 0.8, "removal", "removal+1"})),
    };
    return scenario;
}

Scenario case_c()
{
    Scenario scenario;
    scenario.id = "C";
    scenario.metadata = {
        {"encoding", "interpretation"},
        {"time", "Daily steps over one year; removal on the first day."},
        {"agents", "Leader X of a homogeneous local network; Y steps up immediately; A is X's "
                   "brother, B a local representative, C depends on Y; W runs supply contacts "
                   "reachable only through go-betweens G and H; P1 and P2 are periphery."},
        {"behaviour", "Y assumes leadership backed by the family core despite thin muscle."},
        {"rules", "Default replacement windows; H joins the search only when G's tie to him "
                  "is trusted enough."},
        {"topology", "Family core (Y, A, B) with dependent periphery; W sits two hops out."},
        {"ties", "Y's strongest ties are to A and B; the tie A--H gates the reach of the "
                 "search."},
    };

    scenario.agents = {
        make_agent("X", BusinessRole::kingpin, SocialRole::neutral),
        make_agent("Y", BusinessRole::organizer, SocialRole::friend_tie, 0.85, 0.20, 0.58),
        make_agent("A", BusinessRole::organizer, SocialRole::family, 0.80, 0.50, 0.43),
        make_agent("B", BusinessRole::broker, SocialRole::family, 0.70, 0.45, 0.50),
        make_agent("C", BusinessRole::distributor, SocialRole::friend_tie),
        make_agent("G", BusinessRole::coordinator, SocialRole::friend_tie, 0.52, 0.30, 0.32),
        make_agent("H", BusinessRole::coordinator, SocialRole::friend_tie, 0.60, 0.40, 0.40),
        make_agent("W", BusinessRole::coordinator, SocialRole::neutral, 1.00, 0.75, 0.85),
        make_agent("P1", BusinessRole::coordinator, SocialRole::neutral, 0.50, 0.30, 0.30),
        make_agent("P2", BusinessRole::coordinator, SocialRole::neutral, 0.55, 0.30, 0.35),
    };
    scenario.edges = {
        make_edge("X", "Y", SocialRole::friend_tie, 0.80),
        make_edge("X", "A", SocialRole::family, 0.85),
        make_edge("X", "B", SocialRole::friend_tie, 0.60),
        make_edge("X", "C", SocialRole::friend_tie, 0.55),
        make_edge("Y", "A", SocialRole::family, 0.50),
        make_edge("Y", "B", SocialRole::family, 0.48),
        make_edge("Y", "C", SocialRole::friend_tie, 0.45),
        make_edge("A", "B", SocialRole::family, 0.52),
        make_edge("B", "C", SocialRole::friend_tie, 0.45),
        make_edge("A", "G", SocialRole::friend_tie, 0.88),
        make_edge("G", "Y", SocialRole::friend_tie, 0.92),
        make_edge("G", "H", SocialRole::friend_tie, 0.44),
        make_edge("H", "W", SocialRole::friend_tie, 0.92),
        make_edge("A", "P1", SocialRole::family, 0.92),
        make_edge("A", "P2", SocialRole::family, 0.90),
        make_edge("P1", "P2", SocialRole::neutral, 0.30),
    };
    scenario.intervention = {"X", 0};
    scenario.horizon = 365;

    scenario.training = {
        make_statement("C.I", kTraining, "1", "Correct person is new kingpin by the end of the simulation",
                       json::array({"holds_role", "Y", "kingpin", "end"})),
        make_statement("C.II", kTraining, "1", "Correct person is kingpin directly after conclave",
                       json::array({"holds_role", "Y", "kingpin", "instatement"})),
        make_statement("C.III", kTraining, "1", "Y trusts A and B the most",
                       json::array({"trust_top", "Y", json::array({"A", "B"}), "end"})),
        make_statement("C.IV", kTraining, "1",
                       "All high trust values (>0.8) should have increased or at least remained "
                       "the same directly after the killing",
                       json::array({"monotone_high_trust", 0.8, "removal", "removal+1"})),
        make_statement("C.V", kTraining, "1",
                       "The trust between the orphans increases by 15% before the new replacement "
                       "is chosen",
                       json::array({"aggregate_delta", "orphan_edges", "mean_trust", "removal",
                                    "instatement", "ge_ratio", 1.15})),
        make_statement("C.VI", kTraining, "1", "The trust between family members has an average of at least 75%",
                       json::array({"aggregate_level", "family_edges", "mean_trust", "end", "ge",
                                    0.75})),
    };
    return scenario;
}

Scenario case_d()
{
    Scenario scenario;
    scenario.id = "D";
    scenario.metadata = {
        {"encoding", "interpretation"},
        {"time", "Daily steps over one year; the arrest happens on the first day."},
        {"agents", "Murderbroker X works for the leading group (coordinators O1, O2); hitmen "
                   "Y, Z, B, C take his jobs; A refuses to fall in under Y. The encoding keeps "
                   "the core plus an eight-person periphery of the large (200+) network."},
        {"behaviour", "After the arrest the leading group vets a replacement broker among the "
                      "violence specialists; A drops out rather than take orders."},
        {"rules", "Default replacement windows with murderbroker thresholds."},
        {"topology", "Large multi-ethnic network; the encoded core hangs off O1/O2 with a "
                     "worker ring behind them."},
        {"ties", "No family ties anywhere; Y's strongest ties are to B and C, Z leans on Y."},
    };

    scenario.agents = {
        make_agent("X", BusinessRole::murderbroker, SocialRole::neutral),
        make_agent("Y", BusinessRole::assassin, SocialRole::friend_tie, 0.38, 0.98, 0.38),
        make_agent("Z", BusinessRole::assassin, SocialRole::friend_tie, 0.30, 0.85, 0.30),
        make_agent("A", BusinessRole::organizer, SocialRole::friend_tie),
        make_agent("B", BusinessRole::assassin, SocialRole::neutral, 0.28, 0.82, 0.28),
        make_agent("C", BusinessRole::assassin, SocialRole::neutral, 0.25, 0.80, 0.25),
        make_agent("O1", BusinessRole::coordinator, SocialRole::friend_tie, 0.45, 0.25, 0.30),
        make_agent("O2", BusinessRole::coordinator, SocialRole::friend_tie, 0.42, 0.25, 0.28),
        make_agent("P1", BusinessRole::driver, SocialRole::neutral),
        make_agent("P2", BusinessRole::cutter, SocialRole::neutral),
        make_agent("P3", BusinessRole::stasher, SocialRole::neutral),
        make_agent("P4", BusinessRole::retriever, SocialRole::neutral),
        make_agent("P5", BusinessRole::transporter, SocialRole::neutral),
        make_agent("P6", BusinessRole::placer_inland, SocialRole::neutral),
        make_agent("P7", BusinessRole::frontman, SocialRole::neutral),
        make_agent("P8", BusinessRole::driver, SocialRole::neutral),
    };
    scenario.edges = {
        make_edge("X", "O1", SocialRole::friend_tie, 0.70),
        make_edge("X", "O2", SocialRole::friend_tie, 0.65),
        make_edge("X", "A", SocialRole::friend_tie, 0.60),
        make_edge("X", "Y", SocialRole::friend_tie, 0.66),
        make_edge("X", "Z", SocialRole::friend_tie, 0.60),
        make_edge("X", "B", SocialRole::neutral, 0.45),
        make_edge("X", "C", SocialRole::neutral, 0.40),
        make_edge("Y", "B", SocialRole::friend_tie, 0.88),
        make_edge("Y", "C", SocialRole::friend_tie, 0.45),
        make_edge("Y", "Z", SocialRole::friend_tie, 0.60),
        make_edge("O1", "Y", SocialRole::friend_tie, 0.55),
        make_edge("O1", "O2", SocialRole::friend_tie, 0.50),
        make_edge("O2", "Z", SocialRole::neutral, 0.35),
        make_edge("Z", "P1", SocialRole::neutral, 0.20),
        make_edge("O1", "P1", SocialRole::neutral, 0.40),
        make_edge("O2", "P2", SocialRole::neutral, 0.38),
        make_edge("B", "P3", SocialRole::neutral, 0.30),
        make_edge("C", "P4", SocialRole::neutral, 0.30),
        make_edge("P1", "P2", SocialRole::neutral, 0.30),
        make_edge("P2", "P3", SocialRole::neutral, 0.35),
        make_edge("P3", "P4", SocialRole::neutral, 0.30),
        make_edge("P4", "P5", SocialRole::neutral, 0.32),
        make_edge("P5", "P6", SocialRole::neutral, 0.30),
        make_edge("P6", "P7", SocialRole::neutral, 0.33),
        make_edge("P7", "P8", SocialRole::neutral, 0.31),
        make_edge("P8", "P1", SocialRole::neutral, 0.30),
    };
    scenario.intervention = {"X", 0};
    scenario.horizon = 365;

    scenario.validation = {
        make_statement("D.I", kValidation, "1", "Y is new murderbroker by the end of the simulation",
                       json::array({"holds_role", "Y", "murderbroker", "end"})),
        make_statement("D.II", kValidation, "1", "Y is murderbroker one month after conclave",
                       json::array({"holds_role", "Y", "murderbroker", "conclave+30"})),
        make_statement("D.III", kValidation, "1/2", "Y trusts C and B the most by the end of simulation",
                       json::array({"trust_top", "Y", json::array({"C", "B"}), "end"})),
        make_statement("D.IV", kValidation, "1/2", "Z trusts Y the most by the end of simulation",
                       json::array({"trust_top", "Z", json::array({"Y"}), "end"})),
        make_statement("D.V", kValidation, "1",
                       "All high trust values (>0.8) should have increased or at least remained "
                       "the same directly after the killing (partial score possible)",
                       json::array({"monotone_high_trust", 0.8, "removal", "removal+1",
                                    "proportional"})),
        make_statement("D.VI", kValidation, "1", "Person A should not be there anymore at the end of the simulation",
                       json::array({"absent", "A", "end"})),
    };
    return scenario;
}

} // namespace

Scenario builtin_case(const std::string& id)
{
    if (id == "A") {
        return case_a();
    }
    if (id == "B") {
        return case_b();
    }
    if (id == "C") {
        return case_c();
    }
    if (id == "D") {
        return case_d();
    }
    throw DataError("unknown built-in case '" + id + "' (expected A, B, C or D)");
}

const std::vector<std::string>& builtin_case_ids()
{
    static const std::vector<std::string> ids = {"A", "B", "C", "D"};
    return ids;
}

HoldoutSplit split_holdout(std::size_t count, double fraction, Rng& rng)
{
    if (count < 2) {
        throw UsageError("holdout split needs at least 2 items");
    }
    if (fraction <= 0.0 || fraction >= 1.0) {
        throw UsageError("holdout fraction must lie strictly between 0 and 1");
    }
    std::vector<std::size_t> order(count);
    for (std::size_t k = 0; k < count; ++k) {
        order[k] = k;
    }
    for (std::size_t k = count - 1; k > 0; --k) {
        const std::size_t pick = static_cast<std::size_t>(rng.uniform_index(k + 1));
        std::swap(order[k], order[pick]);
    }
    std::size_t holdout_count = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(count)));
    holdout_count = std::clamp<std::size_t>(holdout_count, 1, count - 1);

    HoldoutSplit split;
    split.holdout.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(holdout_count));
    split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(holdout_count), order.end());
    std::sort(split.holdout.begin(), split.holdout.end());
    std::sort(split.train.begin(), split.train.end());
    return split;
}

void pinned_split(std::vector<std::string>& train, std::vector<std::string>& holdout)
{
    train = {"A", "B", "C"};
    holdout = {"D"};
}

std::vector<DomainScore> score_expertise_table(const std::vector<std::string>& domains,
                                               const std::vector<std::vector<int>>& matrix)
{
    if (domains.empty() || matrix.empty() || domains.size() != matrix.size()) {
        throw DataError("expertise table: need one row of 0/1 entries per domain");
    }
    std::vector<DomainScore> scores;
    for (std::size_t row = 0; row < matrix.size(); ++row) {
        if (matrix[row].empty()) {
            throw DataError("expertise table: row '" + domains[row] + "' is empty");
        }
        DomainScore score;
        score.domain = domains[row];
        for (int cell : matrix[row]) {
            if (cell != 0 && cell != 1) {
                throw DataError("expertise table: entries must be 0 or 1 (row '" + domains[row] +
                                "')");
            }
            score.score += cell;
        }
        score.included = score.score >= 1;
        scores.push_back(std::move(score));
    }
    return scores;
}

} // namespace ccrm::scen
