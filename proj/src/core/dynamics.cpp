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
#include "core/dynamics.hpp"

#include <algorithm>

namespace ccrm::dyn {

double trust_drift(const EdgeContext& ctx, const DynamicsParams& params)
{
    double removal_term = 0.0;
    if (ctx.days_since_removal && ctx.distance != net::kUnreachable) {
        const double inv_k = 1.0 / (1.0 + static_cast<double>(*ctx.days_since_removal));
        const int d = std::max(1, std::min(ctx.distance, params.distance_cap));
        const double b = ctx.trust * (1.0 - ctx.trust);
        removal_term = params.psi * inv_k * (1.0 / d) * b;
    }
    double family_term = 0.0;
    if (ctx.family) {
        family_term = params.phi * (1.0 - ctx.trust);
    }
    return params.tau * (removal_term + family_term);
}

void trust_step(net::NetworkState& state, const DynamicsParams& params, Rng& rng)
{
    const std::optional<int> k = state.days_since_removal();
    std::vector<double> deltas(state.edges.size());
    for (std::size_t e = 0; e < state.edges.size(); ++e) {
        const net::TrustEdge& edge = state.edges[e];
        EdgeContext ctx;
        ctx.trust = edge.trust;
        ctx.days_since_removal = k;
        ctx.family = edge.family();
        if (k && !state.distance_snapshot.empty()) {
            ctx.distance = std::min(state.distance_snapshot[edge.i], state.distance_snapshot[edge.j]);
        }
        double noise = 0.0;
        if (params.noise_scale > 0.0) {
            noise = rng.normal(0.0, params.noise_scale);
        }
        deltas[e] = trust_drift(ctx, params) + params.tau * noise;
    }
    for (std::size_t e = 0; e < state.edges.size(); ++e) {
        state.edges[e].trust = std::clamp(state.edges[e].trust + deltas[e], 0.0, 1.0);
    }
}

std::vector<net::TrustEdge> prune_edges(net::NetworkState& state, const DynamicsParams& params)
{
    std::vector<net::TrustEdge> removed;
    auto keep = std::remove_if(state.edges.begin(), state.edges.end(), [&](const net::TrustEdge& edge) {
        if (edge.trust < params.edge_trust_floor) {
            removed.push_back(edge);
            return true;
        }
        return false;
    });
    state.edges.erase(keep, state.edges.end());
    return removed;
}

std::vector<int> prune_nodes(net::NetworkState& state, const DynamicsParams& params)
{
    std::vector<int> degree(state.agents.size(), 0);
    for (const auto& edge : state.edges) {
        ++degree[edge.i];
        ++degree[edge.j];
    }

    std::vector<int> removed;
    for (std::size_t a = 0; a < state.agents.size(); ++a) {
        net::Agent& agent = state.agents[a];
        if (!agent.present) {
            continue;
        }
        if (degree[a] > 0) {
            agent.disconnected_steps = 0;
            continue;
        }
        if (++agent.disconnected_steps >= params.disconnect_limit) {
            agent.present = false;
            removed.push_back(static_cast<int>(a));
        }
    }
    return removed;
}

} // namespace ccrm::dyn
