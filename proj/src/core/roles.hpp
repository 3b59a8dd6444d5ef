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
#ifndef CCRM_ROLES_H
#define CCRM_ROLES_H

#include <array>
#include <string>
#include <string_view>

namespace ccrm::net {

/// The 21 business roles of a cocaine network, from corrupt officials to hitmen.
enum class BusinessRole {
    customs_officer,
    gatekeeper,
    transporter,
    distributor,
    coordinator,
    exporter,
    financer,
    kingpin,
    producer,
    organizer,
    broker_of_retrievers,
    broker,
    cutter,
    driver,
    placer_inland,
    stasher,
    frontman,
    retriever,
    murderbroker,
    assassin,
    count_ // sentinel
};

constexpr std::size_t kRoleCount = static_cast<std::size_t>(BusinessRole::count_);

/// Functional grouping of roles: leadership, scarce specialists, replaceable labor.
enum class RoleGroup {
    organizer_group,
    expert_group,
    worker_group,
};

struct CapitalRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Per-role capital ranges used when a scenario leaves capitals unspecified.
struct RoleInfo {
    std::string_view name;
    RoleGroup group;
    CapitalRange criminal;
    CapitalRange violence;
    CapitalRange financial;
};

const RoleInfo& role_info(BusinessRole role);

/// Throws ccrm::DataError for unknown role names.
BusinessRole parse_role(std::string_view name);

std::string_view role_name(BusinessRole role);
RoleGroup role_group(BusinessRole role);
std::string_view group_name(RoleGroup group);

/// Roles a police intervention may target.
bool is_intervention_role(BusinessRole role);

} // namespace ccrm::net

#endif // CCRM_ROLES_H
