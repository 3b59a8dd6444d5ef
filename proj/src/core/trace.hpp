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
#ifndef CCRM_TRACE_H
#define CCRM_TRACE_H

#include "core/network.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccrm::sim {

struct AgentSnap {
    int agent = -1;
    net::BusinessRole role = net::BusinessRole::organizer;
    net::Capitals capitals;
    net::Mindset mindset = net::Mindset::neutral;
    net::Activity activity = net::Activity::normal;
    bool orphan = false;
};

struct EdgeSnap {
    int i = -1;
    int j = -1;
    double trust = 0.0;
    net::SocialRole tag = net::SocialRole::neutral;
};

/// State at the end of one simulated day. Index 0 holds the initial network.
struct StepSnap {
    int step = 0;
    net::Stage stage = net::Stage::stable;
    std::vector<AgentSnap> agents; // present agents only
    std::vector<EdgeSnap> edges;

    const AgentSnap* find_agent(int agent) const;
    const EdgeSnap* find_edge(int a, int b) const;
};

enum class EventType {
    intervention,
    conclave,
    candidacy,
    selection,
    rejection,
    instatement,
    fitness_failure,
    disintegration,
    edge_removed,
    node_removed,
};

std::string_view event_name(EventType type);

struct TraceEvent {
    int step = 0;
    EventType type = EventType::intervention;
    int subject = -1; // primary agent (target, chosen, removed node, edge endpoint i)
    int other = -1;   // edge endpoint j
    double value = 0.0;
    std::vector<int> group;          // conclave members, candidate pool
    std::vector<double> group_values; // candidate scores
};

/**
 * Full record of one run: per-day snapshots, discrete events, and the
 * resolved anchor steps that statements are evaluated against.
 */
struct SimulationTrace {
    std::vector<std::string> agent_ids; // index -> scenario agent id
    std::vector<StepSnap> steps;
    std::vector<TraceEvent> events;
    int horizon = 0;

    std::optional<int> removal_step;
    std::optional<int> conclave_step;
    std::optional<int> instatement_step;
    int removed_agent = -1;

    int index_of(std::string_view id) const;
    const StepSnap& at(int step) const;
    int last_step() const
    {
        return static_cast<int>(steps.size()) - 1;
    }
};

} // namespace ccrm::sim

#endif // CCRM_TRACE_H
