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
#ifndef CCRM_REPLACEMENT_H
#define CCRM_REPLACEMENT_H

#include "core/dynamics.hpp"
#include "core/network.hpp"
#include "core/rng.hpp"
#include "core/trace.hpp"

#include <optional>
#include <vector>

namespace ccrm::scen {
struct Scenario;
}

namespace ccrm::rep {

/// Fixed rule constants of the replacement machinery plus its free knobs.
struct ReplacementParams {
    double beta = 0.5;  // minimum edge trust to recruit a search helper
    double gamma = 0.3; // minimum edge trust for a candidate suggestion

    // Final per-capital thresholds to assume the vacated role (kappa).
    net::Capitals kingpin_final{0.5, 0.5, 0.4};
    net::Capitals murderbroker_final{0.5, 0.85, 0.2};
    // Per-capital minimums to be considered a candidate at all.
    net::Capitals kingpin_candidate{0.2, 0.2, 0.2};
    net::Capitals murderbroker_candidate{0.2, 0.1, 0.2};
    // Calibrated scalar applied to all four threshold triples.
    double threshold_scale = 1.0;

    // Selection temperature; unset means one uniform draw from (0,1) per run.
    std::optional<double> zeta;

    int conclave_offset_min = 10; // steps after removal
    int conclave_offset_max = 30;
    int promotion_offset_min = 25;
    int promotion_offset_max = 45;
    int search_radius = 5;
    int conclave_distance = 1;
    double rewire_fraction = 0.7;
    net::SocialRole new_edge_tag = net::SocialRole::neutral;

    bool is_searcher_role(net::BusinessRole role) const
    {
        return role == net::BusinessRole::organizer || role == net::BusinessRole::coordinator;
    }

    bool is_candidate_role(net::BusinessRole role) const
    {
        return role == net::BusinessRole::organizer || role == net::BusinessRole::murderbroker ||
               role == net::BusinessRole::assassin || role == net::BusinessRole::coordinator;
    }

    const net::Capitals& final_thresholds(net::BusinessRole vacated) const
    {
        return vacated == net::BusinessRole::murderbroker ? murderbroker_final : kingpin_final;
    }

    const net::Capitals& candidate_minimums(net::BusinessRole vacated) const
    {
        return vacated == net::BusinessRole::murderbroker ? murderbroker_candidate : kingpin_candidate;
    }
};

/// Everything a single run needs besides the scenario and the seed.
struct ModelParams {
    dyn::DynamicsParams dynamics;
    ReplacementParams replacement;
};

struct Conclave {
    std::vector<int> members;
    int formed_at = -1;
};

struct Candidate {
    int agent = -1;
    double score = 0.0;
};

/**
 * Remove the target and its ties, mark the distance-1 neighbors as orphans,
 * and freeze the distance snapshot the later dynamics and search use.
 * Throws if the target is absent or not an eligible intervention role.
 */
void apply_intervention(net::NetworkState& state, int target);

/// Alive distance-1 orphans of the organizer group; does not mutate state.
std::vector<int> conclave_members(const net::NetworkState& state, const ReplacementParams& params);

/**
 * Candidates the current searchers can reach: eligible role, within the
 * frozen search radius, suggested over an edge of trust >= gamma by a
 * searcher, and meeting the scaled candidate minimums. Sorted by
 * (score desc, id asc). `rejected` lists agents vetted out earlier.
 */
std::vector<Candidate> enumerate_candidates(const net::NetworkState& state, const ReplacementParams& params,
                                            const std::vector<bool>& rejected);

/**
 * Softmax selection with temperature zeta over total attribute scores;
 * zeta = 0 degenerates to the argmax with lexicographic id tie-break.
 * `candidates` must be non-empty and sorted as produced above.
 */
int select_kingpin(const std::vector<Candidate>& candidates, double zeta, Rng& rng);

/**
 * Promote the chosen agent into the vacated role and rewire: the successor
 * ends up adjacent to max(round(rewire_fraction * former degree), alive
 * orphans) counterparts, all orphans first, the remainder drawn uniformly
 * from the removed node's other former neighbors and then the rest of the
 * network. New edges carry the configured tag with trust sampled from the
 * tag's range.
 */
void instate(net::NetworkState& state, int chosen, const ReplacementParams& params, Rng& rng);

/// True when the instated agent still meets the scaled final thresholds.
bool fitness_ok(const net::NetworkState& state, int agent, const ReplacementParams& params);

/**
 * Runs one scenario day by day: stage machine, trust dynamics, pruning,
 * per-day trace snapshot. One instance owns one run.
 */
class Simulation {
public:
    Simulation(const scen::Scenario& scenario, const ModelParams& params, std::uint64_t seed);

    /// Advance one day. No-op once the horizon is reached.
    void step();

    /// Run to the horizon and return the completed trace.
    sim::SimulationTrace run();

    /// Override an agent's capitals mid-run (what-if probing of fitness).
    void force_capitals(std::string_view id, const net::Capitals& capitals);

    const net::NetworkState& state() const
    {
        return state_;
    }

    const sim::SimulationTrace& trace() const
    {
        return trace_;
    }

    int horizon() const
    {
        return horizon_;
    }

    bool instated() const
    {
        return instated_agent_ >= 0;
    }

    bool disintegrated() const
    {
        return disintegrated_;
    }

private:
    void record_snapshot();
    void stage_events();
    void attempt_promotion();
    void run_fitness_check();

    net::NetworkState state_;
    ModelParams params_;
    Rng rng_;
    sim::SimulationTrace trace_;

    int horizon_ = 365;
    int intervention_step_ = 1;
    int intervention_target_ = -1;
    int conclave_step_ = -1;   // scheduled at intervention time
    int promotion_begin_ = -1; // clipped to conclave formation
    int promotion_end_ = -1;
    Conclave conclave_;
    std::vector<bool> rejected_;
    int instated_agent_ = -1;
    int instated_step_ = -1;
    net::BusinessRole pre_instatement_role_ = net::BusinessRole::organizer;
    bool disintegrated_ = false;
    double zeta_ = 0.0;
};

} // namespace ccrm::rep

#endif // CCRM_REPLACEMENT_H
