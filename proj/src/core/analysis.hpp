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
#ifndef CCRM_ANALYSIS_H
#define CCRM_ANALYSIS_H

#include "core/calibrate.hpp"
#include "core/scenarios.hpp"
#include "core/smoothing.hpp"
#include "core/statements.hpp"

#include <map>
#include <string>
#include <vector>

namespace ccrm::ana {

using cal::ObjectiveFn;
using cal::ParamSpace;
using cal::Theta;

/// Type-7 empirical quantile (linear interpolation between order statistics).
double quantile(std::vector<double> values, double q);

struct ValidationReport {
    std::vector<stmt::CaseScore> case_scores; // one mean-score entry per holdout scenario
    double validation_fraction = 0.0;         // mean achieved/max over holdout runs
    double training_fraction = 0.0;           // same over the training scenarios
    double difference = 0.0;                  // training - validation
    bool similar = false;                     // within the tolerance
};

/**
 * Score the hold-out scenarios at the calibrated optimum (no refitting) and
 * compare against the training score. Per-case achieved values are averaged
 * over `runs` seeded simulations.
 */
ValidationReport validate(const Theta& theta_star, const std::vector<scen::Scenario>& holdout,
                          const std::vector<scen::Scenario>& training, int runs, std::uint64_t seed,
                          double tolerance = 0.25);

struct GlobalSensitivity {
    int param = 0;
    double ci_width = 0.0;              // 2.5%..97.5% spread of objective values
    std::vector<double> sampled_values; // the underlying evaluations
};

/**
 * One-at-a-time global sensitivity: sample the parameter uniformly over its
 * box (others pinned at theta_star) and return the 95% inter-quantile width
 * of the objective values.
 */
GlobalSensitivity global_sensitivity(const ObjectiveFn& objective, const ParamSpace& space,
                                     const Theta& theta_star, int param, int samples,
                                     std::uint64_t seed);

struct LocalSensitivity {
    int param = 0;
    double delta_plus = 0.0;  // f(min) - f(min + 0.05 range)
    double delta_minus = 0.0; // f(min) - f(min - 0.05 range)
};

/// One-sided differences at theta_star with 5%-of-range steps, clipped to bounds.
LocalSensitivity local_sensitivity(const ObjectiveFn& objective, const ParamSpace& space,
                                   const Theta& theta_star, int param, std::uint64_t seed);

struct SensitivityReport {
    std::vector<GlobalSensitivity> global_by_param;
    std::vector<LocalSensitivity> local_by_param;
    std::vector<int> global_ranking; // parameter indices, most sensitive first
    std::vector<int> local_ranking;
};

SensitivityReport sensitivity_report(const ObjectiveFn& objective, const ParamSpace& space,
                                     const Theta& theta_star, int samples, std::uint64_t seed);

struct UqSample {
    Theta theta{};
    double objective = 0.0;
    double weight = 0.0; // normalized
    std::string replacement_id; // "" when no replacement was instated
    int time_to_replacement = -1;
    double final_mean_trust = 0.0;
};

struct UqResult {
    std::vector<UqSample> samples;
    std::map<std::string, double> replacement_frequency; // weighted, "none" for failures
    double mean_time_to_replacement = 0.0;               // weighted, over successful runs
    double mean_final_trust = 0.0;                       // weighted
};

/**
 * Forward uncertainty propagation: sample parameter sets uniformly in the
 * box (optionally freezing low-sensitivity coordinates at theta_star),
 * weight each by 1/(1 + objective), and run the first scenario once per
 * sample to collect outcome distributions.
 */
UqResult forward_uq(const ObjectiveFn& objective, const ParamSpace& space, const Theta& theta_star,
                    const std::vector<scen::Scenario>& scenarios, int samples, int runs_ignored,
                    std::uint64_t seed, const std::vector<int>& frozen = {});

struct BaselineResult {
    std::vector<double> random_scores;
    double theta_star_score = 0.0;
    double p_value = 0.0; // fraction of random models at least as good
    bool significant = false;
};

/// Null-hypothesis score distribution of uniformly random parameter sets.
BaselineResult null_baseline(const ObjectiveFn& objective, const ParamSpace& space,
                             const Theta& theta_star, int random_models, std::uint64_t seed);

struct ProfilePoints {
    int param = 0;
    std::vector<double> centers;
    std::vector<double> means;
    std::vector<double> sems;
    std::vector<double> smoothed;
    std::vector<int> counts;
};

/**
 * Bin logged evaluations along one parameter, keep bins with at least two
 * entries, smooth the bin means with sigma = range/15 under reflective
 * boundaries, and interpolate with a first-order spline.
 */
ProfilePoints profile_1d(const std::vector<cal::EvalRecord>& log, const ParamSpace& space, int param,
                         int bins);

smooth::LinearSpline profile_spline(const ProfilePoints& points);

} // namespace ccrm::ana

#endif // CCRM_ANALYSIS_H
