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
#include "core/trace.hpp"

#include "core/errors.hpp"

namespace ccrm::sim {

const AgentSnap* StepSnap::find_agent(int agent) const
{
    for (const auto& snap : agents) {
        if (snap.agent == agent) {
            return &snap;
        }
    }
    return nullptr;
}

const EdgeSnap* StepSnap::find_edge(int a, int b) const
{
    if (a > b) {
        std::swap(a, b);
    }
    for (const auto& snap : edges) {
        if (snap.i == a && snap.j == b) {
            return &snap;
        }
    }
    return nullptr;
}

std::string_view event_name(EventType type)
{
    switch (type) {
    case EventType::intervention:
        return "intervention";
    case EventType::conclave:
        return "conclave";
    case EventType::candidacy:
        return "candidacy";
    case EventType::selection:
        return "selection";
    case EventType::rejection:
        return "rejection";
    case EventType::instatement:
        return "instatement";
    case EventType::fitness_failure:
        return "fitness";
    case EventType::disintegration:
        return "disintegration";
    case EventType::edge_removed:
        return "edge_removed";
    case EventType::node_removed:
        return "node_removed";
    }
    return "?";
}

int SimulationTrace::index_of(std::string_view id) const
{
    for (std::size_t k = 0; k < agent_ids.size(); ++k) {
        if (agent_ids[k] == id) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

const StepSnap& SimulationTrace::at(int step) const
{
    if (step < 0 || step >= static_cast<int>(steps.size())) {
        throw DataError("trace does not cover step " + std::to_string(step));
    }
    return steps[step];
}

} // namespace ccrm::sim
