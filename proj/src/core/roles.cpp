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
#include "core/roles.hpp"

#include "core/errors.hpp"

namespace ccrm::net {

namespace {

using G = RoleGroup;

constexpr std::array<RoleInfo, kRoleCount> kRoles{{
    {"customs-officer", G::expert_group, {0.60, 0.70}, {0.30, 0.50}, {0.05, 0.15}},
    {"gatekeeper", G::expert_group, {0.85, 0.95}, {0.20, 0.30}, {0.40, 0.60}},
    {"transporter", G::worker_group, {0.05, 0.15}, {0.30, 0.50}, {0.40, 0.60}},
    {"distributor", G::expert_group, {0.40, 0.50}, {0.40, 0.60}, {0.50, 0.60}},
    {"coordinator", G::organizer_group, {0.90, 1.00}, {0.40, 0.60}, {0.50, 0.80}},
    {"exporter", G::expert_group, {0.30, 0.40}, {0.40, 0.60}, {0.50, 0.60}},
    {"financer", G::organizer_group, {0.75, 0.85}, {0.30, 0.50}, {0.80, 1.00}},
    {"kingpin", G::organizer_group, {0.75, 0.85}, {0.40, 0.60}, {0.50, 0.70}},
    {"producer", G::expert_group, {0.85, 0.95}, {0.40, 0.60}, {0.50, 0.70}},
    {"organizer", G::organizer_group, {0.90, 1.00}, {0.40, 0.60}, {0.50, 0.80}},
    {"broker-of-retrievers", G::expert_group, {0.70, 0.80}, {0.40, 0.60}, {0.50, 0.60}},
    {"broker", G::expert_group, {0.70, 0.80}, {0.40, 0.60}, {0.40, 0.60}},
    {"cutter", G::worker_group, {0.05, 0.10}, {0.05, 0.15}, {0.05, 0.15}},
    {"driver", G::worker_group, {0.05, 0.15}, {0.05, 0.15}, {0.05, 0.15}},
    {"placer-inland", G::worker_group, {0.05, 0.10}, {0.50, 0.60}, {0.05, 0.15}},
    {"stasher", G::worker_group, {0.00, 0.05}, {0.50, 0.60}, {0.05, 0.15}},
    {"frontman", G::worker_group, {0.05, 0.10}, {0.50, 0.60}, {0.05, 0.15}},
    {"retriever", G::worker_group, {0.05, 0.10}, {0.50, 0.60}, {0.05, 0.15}},
    {"murderbroker", G::expert_group, {0.20, 0.40}, {0.70, 0.90}, {0.20, 0.40}},
    {"assassin", G::expert_group, {0.20, 0.40}, {0.80, 1.00}, {0.20, 0.40}},
}};

} // namespace

const RoleInfo& role_info(BusinessRole role)
{
    return kRoles[static_cast<std::size_t>(role)];
}

BusinessRole parse_role(std::string_view name)
{
    for (std::size_t i = 0; i < kRoleCount; ++i) {
        if (kRoles[i].name == name) {
            return static_cast<BusinessRole>(i);
        }
    }
    throw DataError("unknown business role: " + std::string(name));
}

std::string_view role_name(BusinessRole role)
{
    return role_info(role).name;
}

RoleGroup role_group(BusinessRole role)
{
    return role_info(role).group;
}

std::string_view group_name(RoleGroup group)
{
    switch (group) {
    case RoleGroup::organizer_group:
        return "organizer-group";
    case RoleGroup::expert_group:
        return "expert-group";
    case RoleGroup::worker_group:
        return "worker-group";
    }
    return "?";
}

bool is_intervention_role(BusinessRole role)
{
    return role == BusinessRole::kingpin || role == BusinessRole::murderbroker;
}

} // namespace ccrm::net
