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
#include "core/network.hpp"

#include "core/errors.hpp"
#include "core/scenarios.hpp"

#include <algorithm>
#include <deque>

namespace ccrm::net {

std::string_view stage_name(Stage stage)
{
    switch (stage) {
    case Stage::stable:
        return "stable";
    case Stage::intervention:
        return "intervention";
    case Stage::who_done_it:
        return "who-done-it";
    case Stage::cooldown:
        return "cooldown";
    }
    return "?";
}

std::string_view social_name(SocialRole role)
{
    switch (role) {
    case SocialRole::family:
        return "family";
    case SocialRole::friend_tie:
        return "friend";
    case SocialRole::neutral:
        return "neutral";
    }
    return "?";
}

std::string_view mindset_name(Mindset mindset)
{
    switch (mindset) {
    case Mindset::neutral:
        return "neutral";
    case Mindset::chaotic:
        return "chaotic";
    case Mindset::uncertain:
        return "uncertain";
    }
    return "?";
}

std::string_view activity_name(Activity activity)
{
    return activity == Activity::searching ? "searching" : "normal";
}

SocialRole parse_social(std::string_view name)
{
    if (name == "family") {
        return SocialRole::family;
    }
    if (name == "friend") {
        return SocialRole::friend_tie;
    }
    if (name == "neutral") {
        return SocialRole::neutral;
    }
    throw DataError("unknown social role: " + std::string(name));
}

TrustRange trust_range(SocialRole tag)
{
    switch (tag) {
    case SocialRole::family:
        return {0.5, 1.0};
    case SocialRole::friend_tie:
        return {0.3, 0.9};
    case SocialRole::neutral:
        return {0.0, 0.5};
    }
    return {0.0, 0.0};
}

int NetworkState::index_of(std::string_view id) const
{
    for (std::size_t k = 0; k < agents.size(); ++k) {
        if (agents[k].id == id) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

int NetworkState::alive_count() const
{
    int n = 0;
    for (const auto& agent : agents) {
        n += agent.present ? 1 : 0;
    }
    return n;
}

int NetworkState::degree(int agent) const
{
    int n = 0;
    for (const auto& edge : edges) {
        n += edge.touches(agent) ? 1 : 0;
    }
    return n;
}

double NetworkState::mean_incident_trust(int agent) const
{
    double sum = 0.0;
    int n = 0;
    for (const auto& edge : edges) {
        if (edge.touches(agent)) {
            sum += edge.trust;
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / n;
}

void NetworkState::insert_edge(TrustEdge edge)
{
    if (edge.i > edge.j) {
        std::swap(edge.i, edge.j);
    }
    auto pos = std::lower_bound(edges.begin(), edges.end(), edge, [](const TrustEdge& a, const TrustEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    edges.insert(pos, edge);
}

bool NetworkState::has_edge(int a, int b) const
{
    if (a > b) {
        std::swap(a, b);
    }
    return std::any_of(edges.begin(), edges.end(), [&](const TrustEdge& e) { return e.i == a && e.j == b; });
}

Capitals sample_capitals(BusinessRole role, Rng& rng)
{
    const RoleInfo& info = role_info(role);
    Capitals caps;
    caps.criminal = rng.uniform(info.criminal.lo, info.criminal.hi);
    caps.violence = rng.uniform(info.violence.lo, info.violence.hi);
    caps.financial = rng.uniform(info.financial.lo, info.financial.hi);
    return caps;
}

NetworkState build_network(const scen::Scenario& scenario, Rng& rng)
{
    if (scenario.agents.empty()) {
        throw DataError("empty network: scenario '" + scenario.id + "' declares no agents");
    }

    NetworkState state;
    state.agents.reserve(scenario.agents.size());
    for (const auto& spec_agent : scenario.agents) {
        if (state.index_of(spec_agent.id) >= 0) {
            throw DataError("duplicate agent id: " + spec_agent.id);
        }
        Agent agent;
        agent.id = spec_agent.id;
        agent.business_role = spec_agent.business_role;
        agent.social_role = spec_agent.social_role;
        if (spec_agent.capitals) {
            if (!spec_agent.capitals->in_unit_range()) {
                throw DataError("capital outside [0,1] for agent " + spec_agent.id);
            }
            agent.capitals = *spec_agent.capitals;
        }
        else {
            agent.capitals = sample_capitals(agent.business_role, rng);
        }
        state.agents.push_back(std::move(agent));
    }

    for (const auto& spec_edge : scenario.edges) {
        const int a = state.index_of(spec_edge.i);
        const int b = state.index_of(spec_edge.j);
        if (a < 0 || b < 0) {
            throw DataError("edge " + spec_edge.i + "--" + spec_edge.j + " references a missing agent");
        }
        if (a == b) {
            throw DataError("self edge on agent " + spec_edge.i);
        }
        if (state.has_edge(a, b)) {
            throw DataError("duplicate edge " + spec_edge.i + "--" + spec_edge.j);
        }
        TrustEdge edge;
        edge.i = a;
        edge.j = b;
        edge.social_tag = spec_edge.social_tag;
        if (spec_edge.trust) {
            if (*spec_edge.trust < 0.0 || *spec_edge.trust > 1.0) {
                throw DataError("trust outside [0,1] on edge " + spec_edge.i + "--" + spec_edge.j);
            }
            edge.trust = *spec_edge.trust;
        }
        else {
            const TrustRange range = trust_range(edge.social_tag);
            edge.trust = rng.uniform(range.lo, range.hi);
        }
        state.insert_edge(edge);
    }

    state.stage = Stage::stable;
    state.step = 0;
    return state;
}

std::vector<int> distances_from(const NetworkState& state, int from)
{
    std::vector<int> dist(state.agents.size(), kUnreachable);
    if (from < 0 || from >= static_cast<int>(state.agents.size()) || !state.agents[from].present) {
        return dist;
    }

    std::vector<std::vector<int>> adjacency(state.agents.size());
    for (const auto& edge : state.edges) {
        adjacency[edge.i].push_back(edge.j);
        adjacency[edge.j].push_back(edge.i);
    }

    std::deque<int> queue;
    dist[from] = 0;
    queue.push_back(from);
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : adjacency[u]) {
            if (dist[v] == kUnreachable && state.agents[v].present) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

int distance(const NetworkState& state, int from, int to)
{
    const int n = static_cast<int>(state.agents.size());
    if (from < 0 || from >= n || to < 0 || to >= n) {
        throw DataError("distance query names an unknown agent");
    }
    if (from == to) {
        return 0;
    }
    return distances_from(state, from)[to];
}

double total_attribute_score(const NetworkState& state, int agent)
{
    return state.agents[agent].capitals.sum() + state.mean_incident_trust(agent);
}

} // namespace ccrm::net
