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
#ifndef CCRM_DYNAMICS_H
#define CCRM_DYNAMICS_H

#include "core/network.hpp"
#include "core/rng.hpp"

#include <optional>
#include <vector>

namespace ccrm::dyn {

/**
 * Daily trust evolution. One step integrates
 *
 *   T <- clamp(T + tau * (psi * 1/(K+1) * 1/D * b(T) + F * phi * c(T) + eps), 0, 1)
 *
 * with b(T) = T(1-T), c(T) = 1-T and eps a Gaussian increment of standard
 * deviation noise_scale (Euler-Maruyama with dt = one day). K is days since
 * the removal and D the frozen hop distance of the edge's nearer endpoint to
 * the removed node, capped at distance_cap; both factors are zero before the
 * removal or where no path existed.
 */
struct DynamicsParams {
    double tau = 0.01;         // step scale of the whole drift
    double psi = 3.0;          // post-removal update strength
    double phi = 1.0;          // family-tie update strength
    double noise_scale = 0.005; // stddev of the per-step Wiener increment
    double edge_trust_floor = 0.1; // edges strictly below are severed
    int disconnect_limit = 7;      // isolated days before an agent drops out
    int distance_cap = 5;
};

/// Inputs of one edge update, decoupled from state for direct testing.
struct EdgeContext {
    double trust = 0.0;
    std::optional<int> days_since_removal; // K; nullopt = removal not happened
    int distance = net::kUnreachable;      // D of nearer endpoint, frozen at removal
    bool family = false;
};

/// Deterministic drift part of the update (noise excluded), before clamping.
double trust_drift(const EdgeContext& ctx, const DynamicsParams& params);

/**
 * Advance every edge by one day. Deltas are computed from the pre-step
 * snapshot, then applied, so the edge order carries no information.
 */
void trust_step(net::NetworkState& state, const DynamicsParams& params, Rng& rng);

/// Sever edges with trust strictly below the floor; returns removed edges.
std::vector<net::TrustEdge> prune_edges(net::NetworkState& state, const DynamicsParams& params);

/**
 * Track isolation and drop agents that stayed disconnected for the limit.
 * Returns indices of removed agents.
 */
std::vector<int> prune_nodes(net::NetworkState& state, const DynamicsParams& params);

} // namespace ccrm::dyn

#endif // CCRM_DYNAMICS_H
