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
#include "core/replacement.hpp"

#include "core/errors.hpp"
#include "core/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace ccrm::rep {

void apply_intervention(net::NetworkState& state, int target)
{
    if (target < 0 || target >= static_cast<int>(state.agents.size()) || !state.agents[target].present) {
        throw DataError("intervention target is absent from the network");
    }
    net::Agent& victim = state.agents[target];
    if (!net::is_intervention_role(victim.business_role)) {
        throw DataError("intervention target '" + victim.id + "' holds role '" +
                        std::string(net::role_name(victim.business_role)) +
                        "', expected kingpin or murderbroker");
    }

    state.distance_snapshot = net::distances_from(state, target);
    state.removed_role = victim.business_role;
    state.removal_step = state.step;
    state.removed_agent = target;
    state.stage = net::Stage::intervention;

    state.former_neighbors.clear();
    auto keep = std::remove_if(state.edges.begin(), state.edges.end(), [&](const net::TrustEdge& edge) {
        if (!edge.touches(target)) {
            return false;
        }
        state.former_neighbors.push_back(edge.i == target ? edge.j : edge.i);
        return true;
    });
    state.edges.erase(keep, state.edges.end());
    state.removed_degree = static_cast<int>(state.former_neighbors.size());
    std::sort(state.former_neighbors.begin(), state.former_neighbors.end());

    victim.present = false;

    for (net::Agent& agent : state.agents) {
        if (agent.present) {
            agent.mindset = net::Mindset::uncertain;
        }
    }
    for (int neighbor : state.former_neighbors) {
        state.agents[neighbor].orphan = true;
        state.agents[neighbor].mindset = net::Mindset::chaotic;
    }
}

std::vector<int> conclave_members(const net::NetworkState& state, const ReplacementParams& params)
{
    std::vector<int> members;
    for (std::size_t a = 0; a < state.agents.size(); ++a) {
        const net::Agent& agent = state.agents[a];
        if (!agent.present || !agent.orphan) {
            continue;
        }
        if (state.distance_snapshot.empty() ||
            state.distance_snapshot[a] != params.conclave_distance) {
            continue;
        }
        if (net::role_group(agent.business_role) != net::RoleGroup::organizer_group) {
            continue;
        }
        members.push_back(static_cast<int>(a));
    }
    return members;
}

namespace {

// Searchers are the searching agents of eligible role plus every helper
// reachable through a chain of trust >= beta edges between such roles.
std::vector<bool> searcher_set(const net::NetworkState& state, const ReplacementParams& params)
{
    const std::size_t n = state.agents.size();
    std::vector<bool> searching(n, false);
    std::vector<int> frontier;
    for (std::size_t a = 0; a < n; ++a) {
        const net::Agent& agent = state.agents[a];
        if (agent.present && agent.activity == net::Activity::searching &&
            params.is_searcher_role(agent.business_role)) {
            searching[a] = true;
            frontier.push_back(static_cast<int>(a));
        }
    }
    while (!frontier.empty()) {
        const int u = frontier.back();
        frontier.pop_back();
        for (const net::TrustEdge& edge : state.edges) {
            if (!edge.touches(u) || edge.trust < params.beta) {
                continue;
            }
            const int v = edge.i == u ? edge.j : edge.i;
            const net::Agent& helper = state.agents[v];
            if (searching[v] || !helper.present || !params.is_searcher_role(helper.business_role)) {
                continue;
            }
            if (!state.distance_snapshot.empty() &&
                state.distance_snapshot[v] > params.search_radius) {
                continue;
            }
            searching[v] = true;
            frontier.push_back(v);
        }
    }
    return searching;
}

} // namespace

std::vector<Candidate> enumerate_candidates(const net::NetworkState& state, const ReplacementParams& params,
                                            const std::vector<bool>& rejected)
{
    const std::vector<bool> searching = searcher_set(state, params);
    const net::Capitals& minimums = params.candidate_minimums(state.removed_role);

    std::vector<Candidate> candidates;
    for (std::size_t a = 0; a < state.agents.size(); ++a) {
        const net::Agent& agent = state.agents[a];
        if (!agent.present || (a < rejected.size() && rejected[a])) {
            continue;
        }
        if (!params.is_candidate_role(agent.business_role)) {
            continue;
        }
        if (state.distance_snapshot.empty() || state.distance_snapshot[a] > params.search_radius) {
            continue;
        }
        bool suggested = false;
        for (const net::TrustEdge& edge : state.edges) {
            if (!edge.touches(static_cast<int>(a)) || edge.trust < params.gamma) {
                continue;
            }
            const int u = edge.i == static_cast<int>(a) ? edge.j : edge.i;
            if (searching[u]) {
                suggested = true;
                break;
            }
        }
        if (!suggested) {
            continue;
        }
        if (!agent.capitals.meets(minimums, params.threshold_scale)) {
            continue;
        }
        candidates.push_back({static_cast<int>(a), net::total_attribute_score(state, static_cast<int>(a))});
    }

    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
        if (x.score != y.score) {
            return x.score > y.score;
        }
        return state.agents[x.agent].id < state.agents[y.agent].id;
    });
    return candidates;
}

int select_kingpin(const std::vector<Candidate>& candidates, double zeta, Rng& rng)
{
    if (candidates.empty()) {
        throw UsageError("selection over an empty candidate list");
    }
    if (zeta < 0.0) {
        throw UsageError("selection temperature must be non-negative");
    }
    if (zeta == 0.0) {
        return candidates.front().agent; // already sorted score desc, id asc
    }

    // Softmax over score/zeta, shifted by the maximum for stability.
    const double top = candidates.front().score;
    std::vector<double> weights(candidates.size());
    double total = 0.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        weights[k] = std::exp((candidates[k].score - top) / zeta);
        total += weights[k];
    }
    double u = rng.uniform01() * total;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        u -= weights[k];
        if (u < 0.0) {
            return candidates[k].agent;
        }
    }
    return candidates.back().agent;
}

namespace {

void append_counterparts(std::vector<int>& chosen_set, std::vector<int> pool, std::size_t want, Rng& rng)
{
    // Fisher-Yates over the sorted pool keeps the draw order seed-stable.
    while (!pool.empty() && chosen_set.size() < want) {
        const std::size_t pick = static_cast<std::size_t>(rng.uniform_index(pool.size()));
        chosen_set.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
}

} // namespace

void instate(net::NetworkState& state, int chosen, const ReplacementParams& params, Rng& rng)
{
    net::Agent& successor = state.agents[chosen];
    successor.business_role = state.removed_role;

    std::vector<int> counterparts;
    std::vector<int> other_neighbors;
    std::vector<int> rest;
    for (std::size_t a = 0; a < state.agents.size(); ++a) {
        const net::Agent& agent = state.agents[a];
        if (!agent.present || static_cast<int>(a) == chosen) {
            continue;
        }
        if (agent.orphan) {
            counterparts.push_back(static_cast<int>(a));
        }
        else if (std::binary_search(state.former_neighbors.begin(), state.former_neighbors.end(),
                                    static_cast<int>(a))) {
            other_neighbors.push_back(static_cast<int>(a));
        }
        else {
            rest.push_back(static_cast<int>(a));
        }
    }

    const std::size_t orphan_count = counterparts.size();
    const std::size_t target =
        std::max(static_cast<std::size_t>(std::lround(params.rewire_fraction * state.removed_degree)),
                 orphan_count);
    append_counterparts(counterparts, std::move(other_neighbors), target, rng);
    append_counterparts(counterparts, std::move(rest), target, rng);

    const net::TrustRange range = net::trust_range(params.new_edge_tag);
    for (int counterpart : counterparts) {
        if (state.has_edge(chosen, counterpart)) {
            continue;
        }
        net::TrustEdge edge;
        edge.i = chosen;
        edge.j = counterpart;
        edge.social_tag = params.new_edge_tag;
        edge.trust = rng.uniform(range.lo, range.hi);
        state.insert_edge(edge);
    }

    for (net::Agent& agent : state.agents) {
        if (agent.present) {
            agent.mindset = net::Mindset::neutral;
            agent.activity = net::Activity::normal;
        }
    }
}

bool fitness_ok(const net::NetworkState& state, int agent, const ReplacementParams& params)
{
    return state.agents[agent].capitals.meets(params.final_thresholds(state.removed_role),
                                              params.threshold_scale);
}

Simulation::Simulation(const scen::Scenario& scenario, const ModelParams& params, std::uint64_t seed)
    : state_(net::NetworkState{})
    , params_(params)
    , rng_(seed)
{
    state_ = net::build_network(scenario, rng_);
    horizon_ = scenario.horizon;
    // The initial snapshot occupies day 0; an intervention declared for
    // step 0 therefore fires on the first simulated day.
    intervention_step_ = std::max(1, scenario.intervention.step);
    intervention_target_ = state_.index_of(scenario.intervention.target);
    if (intervention_target_ < 0) {
        throw DataError("intervention target '" + scenario.intervention.target + "' is not in the network");
    }

    zeta_ = params_.replacement.zeta ? *params_.replacement.zeta : rng_.uniform01();
    rejected_.assign(state_.agents.size(), false);

    trace_.horizon = horizon_;
    trace_.agent_ids.reserve(state_.agents.size());
    for (const auto& agent : state_.agents) {
        trace_.agent_ids.push_back(agent.id);
    }
    trace_.steps.reserve(static_cast<std::size_t>(horizon_) + 1);
    record_snapshot();
}

void Simulation::record_snapshot()
{
    sim::StepSnap snap;
    snap.step = state_.step;
    snap.stage = state_.stage;
    snap.agents.reserve(state_.agents.size());
    for (std::size_t a = 0; a < state_.agents.size(); ++a) {
        const net::Agent& agent = state_.agents[a];
        if (!agent.present) {
            continue;
        }
        snap.agents.push_back({static_cast<int>(a), agent.business_role, agent.capitals, agent.mindset,
                               agent.activity, agent.orphan});
    }
    snap.edges.reserve(state_.edges.size());
    for (const auto& edge : state_.edges) {
        snap.edges.push_back({edge.i, edge.j, edge.trust, edge.social_tag});
    }
    trace_.steps.push_back(std::move(snap));
}

void Simulation::stage_events()
{
    const int today = state_.step;

    if (today == intervention_step_) {
        apply_intervention(state_, intervention_target_);
        trace_.removal_step = today;
        trace_.removed_agent = intervention_target_;
        conclave_step_ = today + rng_.uniform_int(params_.replacement.conclave_offset_min,
                                                  params_.replacement.conclave_offset_max);
        promotion_end_ = today + params_.replacement.promotion_offset_max;
        sim::TraceEvent event;
        event.step = today;
        event.type = sim::EventType::intervention;
        event.subject = intervention_target_;
        trace_.events.push_back(std::move(event));
        return; // who-done-it starts the next day
    }

    if (state_.stage == net::Stage::intervention) {
        state_.stage = net::Stage::who_done_it;
    }

    if (state_.stage == net::Stage::who_done_it && today == conclave_step_) {
        conclave_.members = conclave_members(state_, params_.replacement);
        conclave_.formed_at = today;
        state_.stage = net::Stage::cooldown;
        trace_.conclave_step = today;
        // Rule V's window is anchored at the removal but can never open
        // before the conclave exists.
        promotion_begin_ = std::max(*state_.removal_step + params_.replacement.promotion_offset_min,
                                    conclave_step_);

        sim::TraceEvent event;
        event.step = today;
        event.type = sim::EventType::conclave;
        event.group = conclave_.members;
        trace_.events.push_back(event);

        if (conclave_.members.empty()) {
            disintegrated_ = true;
            sim::TraceEvent failure;
            failure.step = today;
            failure.type = sim::EventType::disintegration;
            trace_.events.push_back(std::move(failure));
            return;
        }
        for (int member : conclave_.members) {
            state_.agents[member].activity = net::Activity::searching;
        }
    }

    if (state_.stage == net::Stage::cooldown && !disintegrated_ && instated_agent_ < 0) {
        attempt_promotion();
    }
    else if (instated_agent_ >= 0 && today > instated_step_) {
        run_fitness_check();
        if (instated_agent_ >= 0 && state_.stage == net::Stage::cooldown) {
            state_.stage = net::Stage::stable;
        }
    }
}

void Simulation::attempt_promotion()
{
    const int today = state_.step;
    if (promotion_begin_ < 0 || today < promotion_begin_) {
        return;
    }
    if (today > promotion_end_) {
        disintegrated_ = true;
        sim::TraceEvent event;
        event.step = today;
        event.type = sim::EventType::disintegration;
        trace_.events.push_back(std::move(event));
        return;
    }

    std::vector<Candidate> candidates = enumerate_candidates(state_, params_.replacement, rejected_);
    if (candidates.empty()) {
        return; // search continues tomorrow
    }

    sim::TraceEvent pool;
    pool.step = today;
    pool.type = sim::EventType::candidacy;
    for (const Candidate& candidate : candidates) {
        pool.group.push_back(candidate.agent);
        pool.group_values.push_back(candidate.score);
    }
    trace_.events.push_back(std::move(pool));

    const int chosen = select_kingpin(candidates, zeta_, rng_);
    double chosen_score = 0.0;
    for (const Candidate& candidate : candidates) {
        if (candidate.agent == chosen) {
            chosen_score = candidate.score;
        }
    }

    sim::TraceEvent selection;
    selection.step = today;
    selection.type = sim::EventType::selection;
    selection.subject = chosen;
    selection.value = chosen_score;
    trace_.events.push_back(std::move(selection));

    if (!state_.agents[chosen].capitals.meets(params_.replacement.final_thresholds(state_.removed_role),
                                              params_.replacement.threshold_scale)) {
        rejected_[chosen] = true;
        sim::TraceEvent rejection;
        rejection.step = today;
        rejection.type = sim::EventType::rejection;
        rejection.subject = chosen;
        trace_.events.push_back(std::move(rejection));
        return;
    }

    pre_instatement_role_ = state_.agents[chosen].business_role;
    instate(state_, chosen, params_.replacement, rng_);
    instated_agent_ = chosen;
    instated_step_ = today;
    trace_.instatement_step = today;

    sim::TraceEvent event;
    event.step = today;
    event.type = sim::EventType::instatement;
    event.subject = chosen;
    event.value = chosen_score;
    trace_.events.push_back(std::move(event));
}

void Simulation::run_fitness_check()
{
    if (!state_.agents[instated_agent_].present) {
        return; // pruned successors are handled by the node-removal path
    }
    if (fitness_ok(state_, instated_agent_, params_.replacement)) {
        return;
    }

    sim::TraceEvent event;
    event.step = state_.step;
    event.type = sim::EventType::fitness_failure;
    event.subject = instated_agent_;
    trace_.events.push_back(std::move(event));

    state_.agents[instated_agent_].business_role = pre_instatement_role_;
    rejected_[instated_agent_] = true;
    instated_agent_ = -1;
    instated_step_ = -1;
    state_.stage = net::Stage::cooldown;
    for (int member : conclave_.members) {
        if (state_.agents[member].present) {
            state_.agents[member].activity = net::Activity::searching;
        }
    }
}

void Simulation::step()
{
    if (state_.step >= horizon_) {
        return;
    }
    state_.step += 1;

    stage_events();
    dyn::trust_step(state_, params_.dynamics, rng_);

    for (const net::TrustEdge& edge : dyn::prune_edges(state_, params_.dynamics)) {
        sim::TraceEvent event;
        event.step = state_.step;
        event.type = sim::EventType::edge_removed;
        event.subject = edge.i;
        event.other = edge.j;
        event.value = edge.trust;
        trace_.events.push_back(std::move(event));
    }
    for (int agent : dyn::prune_nodes(state_, params_.dynamics)) {
        sim::TraceEvent event;
        event.step = state_.step;
        event.type = sim::EventType::node_removed;
        event.subject = agent;
        trace_.events.push_back(std::move(event));
    }

    record_snapshot();
}

sim::SimulationTrace Simulation::run()
{
    while (state_.step < horizon_) {
        step();
    }
    return trace_;
}

void Simulation::force_capitals(std::string_view id, const net::Capitals& capitals)
{
    const int agent = state_.index_of(id);
    if (agent < 0 || !state_.agents[agent].present) {
        throw DataError("cannot override capitals of absent agent '" + std::string(id) + "'");
    }
    if (!capitals.in_unit_range()) {
        throw DataError("capital outside [0,1]");
    }
    state_.agents[agent].capitals = capitals;
}

} // namespace ccrm::rep
