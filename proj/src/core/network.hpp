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
#ifndef CCRM_NETWORK_H
#define CCRM_NETWORK_H

#include "core/rng.hpp"
#include "core/roles.hpp"

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccrm::scen {
struct Scenario;
}

namespace ccrm::net {

/// Distance value for disconnected agent pairs.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct Capitals {
    double criminal = 0.0;
    double violence = 0.0;
    double financial = 0.0;

    double sum() const
    {
        return criminal + violence + financial;
    }

    bool in_unit_range() const
    {
        return criminal >= 0.0 && criminal <= 1.0 && violence >= 0.0 && violence <= 1.0 &&
               financial >= 0.0 && financial <= 1.0;
    }

    /// True when every component reaches the scaled per-capital minimum.
    bool meets(const Capitals& minimum, double scale) const
    {
        return criminal >= minimum.criminal * scale && violence >= minimum.violence * scale &&
               financial >= minimum.financial * scale;
    }
};

/// Tag of a tie (and of an agent) relative to the original kingpin.
enum class SocialRole {
    family,
    friend_tie,
    neutral,
};

enum class Mindset {
    neutral,
    chaotic,
    uncertain,
};

enum class Activity {
    normal,
    searching,
};

struct Agent {
    std::string id;
    BusinessRole business_role = BusinessRole::organizer;
    SocialRole social_role = SocialRole::neutral;
    Capitals capitals;
    Mindset mindset = Mindset::neutral;
    Activity activity = Activity::normal;
    bool orphan = false;
    int disconnected_steps = 0;
    bool present = true;
};

/// One undirected tie; trust is a single symmetric value per pair.
struct TrustEdge {
    int i = -1;
    int j = -1;
    double trust = 0.0;
    SocialRole social_tag = SocialRole::neutral;

    bool family() const
    {
        return social_tag == SocialRole::family;
    }

    bool touches(int agent) const
    {
        return i == agent || j == agent;
    }
};

/// Phase of the disruption-and-recovery cycle.
enum class Stage {
    stable,
    intervention,
    who_done_it,
    cooldown,
};

std::string_view stage_name(Stage stage);
std::string_view social_name(SocialRole role);
std::string_view mindset_name(Mindset mindset);
std::string_view activity_name(Activity activity);
SocialRole parse_social(std::string_view name);

/// Initial trust range per social tag (family, friend, neutral).
struct TrustRange {
    double lo;
    double hi;
};
TrustRange trust_range(SocialRole tag);

struct NetworkState {
    std::vector<Agent> agents;
    std::vector<TrustEdge> edges; // kept sorted by (i, j)
    Stage stage = Stage::stable;
    int step = 0;

    // Disruption bookkeeping. removal_step unset means K = infinity.
    std::optional<int> removal_step;
    std::optional<int> removed_agent;
    BusinessRole removed_role = BusinessRole::kingpin;
    int removed_degree = 0;
    std::vector<int> former_neighbors;
    // Hop distances to the removed node, frozen at intervention time.
    std::vector<int> distance_snapshot;

    int index_of(std::string_view id) const;
    int alive_count() const;
    int degree(int agent) const;
    double mean_incident_trust(int agent) const;

    /// Days since removal, or nullopt while the kingpin still stands.
    std::optional<int> days_since_removal() const
    {
        if (!removal_step) {
            return std::nullopt;
        }
        return step - *removal_step;
    }

    void insert_edge(TrustEdge edge);
    bool has_edge(int a, int b) const;
};

/// Uniform capitals within the role's range; draw order is criminal, violence, financial.
Capitals sample_capitals(BusinessRole role, Rng& rng);

/**
 * Instantiate the initial network from a validated scenario. Unspecified
 * capitals and trusts are sampled from the role / social-tag ranges.
 * Deterministic for a given scenario and seed.
 */
NetworkState build_network(const scen::Scenario& scenario, Rng& rng);

/// Shortest-path hop count over present agents, kUnreachable if disconnected.
int distance(const NetworkState& state, int from, int to);

/// BFS distances from one agent to all agents (kUnreachable where disconnected).
std::vector<int> distances_from(const NetworkState& state, int from);

/// Sum of the three capitals plus mean incident trust (0 for isolated agents).
double total_attribute_score(const NetworkState& state, int agent);

} // namespace ccrm::net

#endif // CCRM_NETWORK_H
