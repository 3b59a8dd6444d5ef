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
#include "core/errors.hpp"
#include "core/frac.hpp"
#include "core/network.hpp"
#include "core/scenarios.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace ccrm;

namespace {

scen::Scenario tiny_scenario()
{
    scen::Scenario scenario;
    scenario.id = "T";
    scen::ScenarioAgent kingpin;
    kingpin.id = "K";
    kingpin.business_role = net::BusinessRole::kingpin;
    scen::ScenarioAgent aide;
    aide.id = "A";
    aide.business_role = net::BusinessRole::organizer;
    aide.social_role = net::SocialRole::family;
    scenario.agents = {kingpin, aide};
    scen::ScenarioEdge edge;
    edge.i = "K";
    edge.j = "A";
    edge.social_tag = net::SocialRole::family;
    scenario.edges = {edge};
    scenario.intervention = {"K", 0};
    scenario.horizon = 60;
    return scenario;
}

} // namespace

TEST_CASE("rng streams are deterministic and platform independent")
{
    Rng a(42);
    Rng b(42);
    for (int k = 0; k < 1000; ++k) {
        CHECK(a.next_u64() == b.next_u64());
    }
    Rng c(43);
    CHECK(Rng(42).next_u64() != c.next_u64());

    CHECK(Rng::derive(7, {1, 2}) == Rng::derive(7, {1, 2}));
    CHECK(Rng::derive(7, {1, 2}) != Rng::derive(7, {2, 1}));
}

TEST_CASE("uniform draws respect their interval")
{
    Rng rng(1);
    for (int k = 0; k < 1000; ++k) {
        const double value = rng.uniform(0.3, 0.9);
        CHECK(value >= 0.3);
        CHECK(value < 0.9);
    }
    CHECK(rng.uniform(0.25, 0.25) == 0.25); // zero-width interval is exact
}

TEST_CASE("fractions parse, add and print exactly")
{
    const Frac third = Frac::parse("1/3");
    CHECK(third.str() == "1/3");
    const Frac one = third + third + third;
    CHECK(one == Frac(1));
    CHECK(one.str() == "1");
    CHECK(Frac::parse("1/2").to_double() == doctest::Approx(0.5));
    CHECK_THROWS_AS(Frac::parse("x/y"), std::invalid_argument);
}

TEST_CASE("every role resolves to exactly one group and parses back")
{
    int organizers = 0;
    for (std::size_t k = 0; k < net::kRoleCount; ++k) {
        const auto role = static_cast<net::BusinessRole>(k);
        CHECK(net::parse_role(net::role_name(role)) == role);
        const net::RoleGroup group = net::role_group(role);
        CHECK((group == net::RoleGroup::organizer_group || group == net::RoleGroup::expert_group ||
               group == net::RoleGroup::worker_group));
        organizers += group == net::RoleGroup::organizer_group ? 1 : 0;
    }
    CHECK(organizers > 0);
    CHECK(net::role_group(net::BusinessRole::kingpin) == net::RoleGroup::organizer_group);
    CHECK(net::is_intervention_role(net::BusinessRole::murderbroker));
    CHECK_FALSE(net::is_intervention_role(net::BusinessRole::driver));
    CHECK_THROWS_AS(net::parse_role("bellhop"), DataError);
}

TEST_CASE("sampled capitals stay inside the role ranges")
{
    Rng rng(99);
    for (std::size_t k = 0; k < net::kRoleCount; ++k) {
        const auto role = static_cast<net::BusinessRole>(k);
        const net::RoleInfo& info = net::role_info(role);
        for (int draw = 0; draw < 1000; ++draw) {
            const net::Capitals caps = net::sample_capitals(role, rng);
            CHECK(caps.criminal >= info.criminal.lo);
            CHECK(caps.criminal <= info.criminal.hi);
            CHECK(caps.violence >= info.violence.lo);
            CHECK(caps.violence <= info.violence.hi);
            CHECK(caps.financial >= info.financial.lo);
            CHECK(caps.financial <= info.financial.hi);
        }
    }
}

TEST_CASE("kingpin and assassin capital ranges match the role table")
{
    Rng rng(3);
    for (int draw = 0; draw < 200; ++draw) {
        const net::Capitals kp = net::sample_capitals(net::BusinessRole::kingpin, rng);
        CHECK(kp.criminal >= 0.75);
        CHECK(kp.criminal <= 0.85);
        CHECK(kp.violence >= 0.4);
        CHECK(kp.violence <= 0.6);
        CHECK(kp.financial >= 0.5);
        CHECK(kp.financial <= 0.7);
        const net::Capitals hit = net::sample_capitals(net::BusinessRole::assassin, rng);
        CHECK(hit.violence >= 0.8);
        CHECK(hit.violence <= 1.0);
    }
    // a financer's wealth comes from the financer row
    const net::RoleInfo& financer = net::role_info(net::BusinessRole::financer);
    CHECK(financer.financial.lo == 0.8);
    CHECK(financer.financial.hi == 1.0);
}

TEST_CASE("build_network is deterministic and validates its input")
{
    const scen::Scenario scenario = tiny_scenario();
    Rng r1(42);
    Rng r2(42);
    const net::NetworkState s1 = net::build_network(scenario, r1);
    const net::NetworkState s2 = net::build_network(scenario, r2);
    REQUIRE(s1.edges.size() == 1);
    CHECK(s1.edges[0].trust == s2.edges[0].trust); // bitwise identical
    CHECK(s1.edges[0].trust > 0.5);
    CHECK(s1.edges[0].trust < 1.0);
    CHECK(s1.stage == net::Stage::stable);
    CHECK(s1.step == 0);
    CHECK_FALSE(s1.removal_step.has_value());

    scen::Scenario empty;
    empty.id = "E";
    Rng r3(1);
    CHECK_THROWS_WITH_AS(static_cast<void>(net::build_network(empty, r3)), doctest::Contains("empty network"),
                         DataError);

    scen::Scenario dangling = tiny_scenario();
    dangling.edges[0].j = "ghost";
    Rng r4(1);
    CHECK_THROWS_AS(static_cast<void>(net::build_network(dangling, r4)), DataError);

    scen::Scenario bad_caps = tiny_scenario();
    bad_caps.agents[0].capitals = net::Capitals{1.2, 0.5, 0.5};
    Rng r5(1);
    CHECK_THROWS_AS(static_cast<void>(net::build_network(bad_caps, r5)), DataError);
}

namespace {

net::NetworkState chain_state(int n)
{
    // path 0-1-2-...-n-1
    net::NetworkState state;
    for (int k = 0; k < n; ++k) {
        net::Agent agent;
        agent.id = std::string(1, static_cast<char>('a' + k));
        state.agents.push_back(agent);
    }
    for (int k = 0; k + 1 < n; ++k) {
        net::TrustEdge edge;
        edge.i = k;
        edge.j = k + 1;
        edge.trust = 0.5;
        state.insert_edge(edge);
    }
    return state;
}

} // namespace

TEST_CASE("distance is a hop count with an unreachable sentinel")
{
    net::NetworkState state = chain_state(3);
    CHECK(net::distance(state, 0, 0) == 0);
    CHECK(net::distance(state, 0, 1) == 1);
    CHECK(net::distance(state, 0, 2) == 2); // a-b-c with no a-c edge

    net::Agent loner;
    loner.id = "z";
    state.agents.push_back(loner);
    CHECK(net::distance(state, 0, 3) == net::kUnreachable);
    CHECK_THROWS_AS(net::distance(state, 0, 99), DataError);
}

TEST_CASE("distance is symmetric and obeys the triangle inequality")
{
    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        net::NetworkState state;
        const int n = 8;
        for (int k = 0; k < n; ++k) {
            net::Agent agent;
            agent.id = "a" + std::to_string(k);
            state.agents.push_back(agent);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng.uniform01() < 0.3) {
                    net::TrustEdge edge;
                    edge.i = i;
                    edge.j = j;
                    edge.trust = 0.5;
                    state.insert_edge(edge);
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const int dij = net::distance(state, i, j);
                CHECK(dij == net::distance(state, j, i));
                for (int k = 0; k < n; ++k) {
                    const int dik = net::distance(state, i, k);
                    const int dkj = net::distance(state, k, j);
                    if (dik != net::kUnreachable && dkj != net::kUnreachable) {
                        CHECK(dij <= dik + dkj);
                    }
                }
            }
        }
    }
}

TEST_CASE("total attribute score sums capitals and mean incident trust")
{
    net::NetworkState state = chain_state(2);
    state.agents[0].capitals = {0.5, 0.5, 0.4};
    state.edges[0].trust = 0.6;
    CHECK(net::total_attribute_score(state, 0) == doctest::Approx(2.0));

    net::NetworkState lonely;
    net::Agent agent;
    agent.id = "solo";
    lonely.agents.push_back(agent);
    CHECK(net::total_attribute_score(lonely, 0) == 0.0); // no edges: trust term is 0

    net::NetworkState pair = chain_state(2);
    pair.agents[0].capitals = {0.5, 0.5, 0.4};
    pair.agents[1].capitals = {0.6, 0.5, 0.4};
    pair.edges[0].trust = 0.6;
    CHECK(net::total_attribute_score(pair, 1) - net::total_attribute_score(pair, 0) ==
          doctest::Approx(0.1));
}

TEST_CASE("trust drift matches the hand-evaluated update")
{
    dyn::DynamicsParams params; // tau 0.01, psi 3, phi 1

    dyn::EdgeContext quiet;
    quiet.trust = 0.7;
    quiet.family = false; // K = infinity, non-family: both terms vanish
    CHECK(dyn::trust_drift(quiet, params) == 0.0);

    dyn::EdgeContext hot;
    hot.trust = 0.5;
    hot.days_since_removal = 0;
    hot.distance = 1;
    hot.family = true;
    // 0.01 * (3 * 1 * 1 * 0.25 + 1 * 0.5) = 0.0125
    CHECK(dyn::trust_drift(hot, params) == doctest::Approx(0.0125).epsilon(1e-12));
}

TEST_CASE("drift is non-increasing in K and in D")
{
    dyn::DynamicsParams params;
    for (double trust : {0.1, 0.3, 0.5, 0.8}) {
        double previous = std::numeric_limits<double>::infinity();
        for (int k : {0, 1, 5, 10, 100}) {
            dyn::EdgeContext ctx;
            ctx.trust = trust;
            ctx.days_since_removal = k;
            ctx.distance = 2;
            const double drift = dyn::trust_drift(ctx, params);
            CHECK(drift <= previous + 1e-15);
            previous = drift;
        }
        previous = std::numeric_limits<double>::infinity();
        for (int d : {1, 2, 3, 4, 5}) {
            dyn::EdgeContext ctx;
            ctx.trust = trust;
            ctx.days_since_removal = 0;
            ctx.distance = d;
            const double drift = dyn::trust_drift(ctx, params);
            CHECK(drift <= previous + 1e-15);
            previous = drift;
        }
    }
}

TEST_CASE("distances beyond the cap act like distance five")
{
    dyn::DynamicsParams params;
    dyn::EdgeContext at_cap;
    at_cap.trust = 0.5;
    at_cap.days_since_removal = 0;
    at_cap.distance = 5;
    dyn::EdgeContext beyond;
    beyond = at_cap;
    beyond.distance = 17;
    CHECK(dyn::trust_drift(at_cap, params) == dyn::trust_drift(beyond, params));

    dyn::EdgeContext unreachable = at_cap;
    unreachable.distance = net::kUnreachable;
    CHECK(dyn::trust_drift(unreachable, params) == 0.0);
}

TEST_CASE("trust stays in [0,1] through a long noisy run")
{
    net::NetworkState state = chain_state(6);
    state.removal_step = 0;
    state.distance_snapshot.assign(6, 1);
    for (auto& edge : state.edges) {
        edge.social_tag = net::SocialRole::family;
        edge.trust = 0.95;
    }
    dyn::DynamicsParams params;
    params.noise_scale = 0.5; // exaggerated noise to stress the clamp
    Rng rng(11);
    for (int step = 0; step < 10000; ++step) {
        state.step = step;
        dyn::trust_step(state, params, rng);
        for (const auto& edge : state.edges) {
            CHECK(edge.trust >= 0.0);
            CHECK(edge.trust <= 1.0);
        }
    }
}

TEST_CASE("without removal and noise only family edges move, upward")
{
    net::NetworkState state = chain_state(4);
    state.edges[0].social_tag = net::SocialRole::family;
    state.edges[0].trust = 0.4;
    state.edges[1].trust = 0.35;
    state.edges[2].trust = 0.9;
    dyn::DynamicsParams params;
    params.noise_scale = 0.0;
    Rng rng(5);
    double family_previous = 0.4;
    for (int step = 0; step < 200; ++step) {
        dyn::trust_step(state, params, rng);
        CHECK(state.edges[0].trust > family_previous);
        family_previous = state.edges[0].trust;
        CHECK(state.edges[1].trust == 0.35);
        CHECK(state.edges[2].trust == 0.9);
    }
    CHECK(family_previous <= 1.0);
}

TEST_CASE("trust trajectories are bit-reproducible under a fixed seed")
{
    auto run = [](std::uint64_t seed) {
        net::NetworkState state = chain_state(5);
        state.removal_step = 0;
        state.distance_snapshot.assign(5, 2);
        dyn::DynamicsParams params;
        Rng rng(seed);
        std::vector<double> trusts;
        for (int step = 0; step < 500; ++step) {
            state.step = step;
            dyn::trust_step(state, params, rng);
        }
        for (const auto& edge : state.edges) {
            trusts.push_back(edge.trust);
        }
        return trusts;
    };
    CHECK(run(77) == run(77));
    CHECK(run(77) != run(78));
}

TEST_CASE("edges strictly below the floor are pruned")
{
    net::NetworkState state = chain_state(4);
    state.edges[0].trust = 0.09;
    state.edges[1].trust = 0.1;
    state.edges[2].trust = 0.5;
    dyn::DynamicsParams params;
    const auto removed = dyn::prune_edges(state, params);
    REQUIRE(removed.size() == 1);
    CHECK(removed[0].trust == 0.09);
    CHECK(state.edges.size() == 2);
    CHECK(state.edges[0].trust == 0.1); // boundary value survives

    net::NetworkState healthy = chain_state(4);
    for (auto& edge : healthy.edges) {
        edge.trust = 0.5;
    }
    CHECK(dyn::prune_edges(healthy, params).empty());
}

TEST_CASE("agents drop out after seven isolated days and the counter resets")
{
    dyn::DynamicsParams params;

    net::NetworkState state = chain_state(2);
    state.edges.clear(); // both agents isolated from day one
    std::vector<int> removed;
    for (int day = 1; day <= 7; ++day) {
        removed = dyn::prune_nodes(state, params);
        if (day < 7) {
            CHECK(removed.empty());
        }
    }
    CHECK(removed.size() == 2); // removed exactly at the seventh day

    net::NetworkState flap = chain_state(2);
    net::TrustEdge saved = flap.edges[0];
    flap.edges.clear();
    for (int day = 1; day <= 6; ++day) {
        CHECK(dyn::prune_nodes(flap, params).empty());
    }
    flap.insert_edge(saved); // reconnect on day 7
    CHECK(dyn::prune_nodes(flap, params).empty());
    CHECK(flap.agents[0].disconnected_steps == 0);

    net::NetworkState connected = chain_state(3);
    for (int day = 0; day < 500; ++day) {
        CHECK(dyn::prune_nodes(connected, params).empty());
    }
}
