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
#include "core/analysis.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ccrm::ana {

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) {
        throw UsageError("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - std::floor(h)) * (values[hi] - values[lo]);
}

namespace {

struct MeanScore {
    double achieved = 0.0;
    double max = 0.0;
};

MeanScore mean_case_score(const scen::Scenario& scenario, const std::vector<stmt::Statement>& statements,
                          const Theta& theta, int runs, std::uint64_t seed, stmt::CaseScore* mean_out)
{
    const rep::ModelParams params = cal::apply_theta(theta);
    MeanScore mean;
    stmt::CaseScore aggregate;
    aggregate.case_id = scenario.id;
    for (int run = 0; run < runs; ++run) {
        rep::Simulation simulation(scenario, params,
                                   Rng::derive(seed, {static_cast<std::uint64_t>(run), 0x7a11d8ULL}));
        const sim::SimulationTrace trace = simulation.run();
        const stmt::CaseScore score = stmt::score_case(scenario.id, statements, trace);
        mean.achieved += score.achieved;
        mean.max = score.max.to_double();
        if (aggregate.per_statement.empty()) {
            aggregate = score;
        }
        else {
            for (std::size_t k = 0; k < score.per_statement.size(); ++k) {
                aggregate.per_statement[k].achieved += score.per_statement[k].achieved;
            }
            aggregate.achieved += score.achieved;
        }
    }
    mean.achieved /= runs;
    if (mean_out) {
        aggregate.achieved /= runs;
        for (auto& entry : aggregate.per_statement) {
            entry.achieved /= runs;
        }
        aggregate.failed_count = 0;
        for (const auto& entry : aggregate.per_statement) {
            if (entry.achieved < entry.max.to_double() - 1e-9) {
                ++aggregate.failed_count;
            }
        }
        *mean_out = aggregate;
    }
    return mean;
}

} // namespace

ValidationReport validate(const Theta& theta_star, const std::vector<scen::Scenario>& holdout,
                          const std::vector<scen::Scenario>& training, int runs, std::uint64_t seed,
                          double tolerance)
{
    if (holdout.empty()) {
        throw UsageError("validation needs at least one hold-out scenario");
    }
    ValidationReport report;
    double achieved = 0.0;
    double max = 0.0;
    for (std::size_t k = 0; k < holdout.size(); ++k) {
        const scen::Scenario& scenario = holdout[k];
        if (scenario.validation.empty()) {
            throw DataError("scenario '" + scenario.id + "' carries no validation statements");
        }
        stmt::CaseScore mean_score;
        const MeanScore score = mean_case_score(scenario, scenario.validation, theta_star, runs,
                                                Rng::derive(seed, {0x0dULL, k}), &mean_score);
        report.case_scores.push_back(std::move(mean_score));
        achieved += score.achieved;
        max += score.max;
    }
    report.validation_fraction = max == 0.0 ? 0.0 : achieved / max;

    double train_achieved = 0.0;
    double train_max = 0.0;
    for (std::size_t k = 0; k < training.size(); ++k) {
        const scen::Scenario& scenario = training[k];
        const MeanScore score = mean_case_score(scenario, scenario.training, theta_star, runs,
                                                Rng::derive(seed, {0x7eULL, k}), nullptr);
        train_achieved += score.achieved;
        train_max += score.max;
    }
    report.training_fraction = train_max == 0.0 ? 0.0 : train_achieved / train_max;
    report.difference = report.training_fraction - report.validation_fraction;
    report.similar = std::abs(report.difference) <= tolerance;
    return report;
}

GlobalSensitivity global_sensitivity(const ObjectiveFn& objective, const ParamSpace& space,
                                     const Theta& theta_star, int param, int samples,
                                     std::uint64_t seed)
{
    if (samples < 20) {
        throw UsageError("global sensitivity needs at least 20 samples");
    }
    if (space.width(param) <= 0.0) {
        throw UsageError("parameter range has zero width");
    }
    Rng rng(Rng::derive(seed, {0x910, static_cast<std::uint64_t>(param)}));
    GlobalSensitivity result;
    result.param = param;
    result.sampled_values.reserve(samples);
    // Common random numbers across the sweep: the spread then reflects the
    // parameter's influence rather than run-to-run noise.
    const std::uint64_t eval_seed = Rng::derive(seed, {0xc29, static_cast<std::uint64_t>(param)});
    for (int k = 0; k < samples; ++k) {
        Theta theta = theta_star;
        theta[param] = rng.uniform(space.lower[param], space.upper[param]);
        result.sampled_values.push_back(objective(theta, eval_seed));
    }
    result.ci_width = quantile(result.sampled_values, 0.975) - quantile(result.sampled_values, 0.025);
    return result;
}

LocalSensitivity local_sensitivity(const ObjectiveFn& objective, const ParamSpace& space,
                                   const Theta& theta_star, int param, std::uint64_t seed)
{
    LocalSensitivity result;
    result.param = param;
    const double step = 0.05 * space.width(param);
    // One shared stream for all three points (common random numbers), so the
    // differences isolate the parameter effect.
    const std::uint64_t eval_seed = Rng::derive(seed, {0x10ca1, static_cast<std::uint64_t>(param)});
    const double center = objective(theta_star, eval_seed);

    Theta plus = theta_star;
    plus[param] = std::min(plus[param] + step, space.upper[param]);
    Theta minus = theta_star;
    minus[param] = std::max(minus[param] - step, space.lower[param]);

    result.delta_plus = center - objective(plus, eval_seed);
    result.delta_minus = center - objective(minus, eval_seed);
    return result;
}

SensitivityReport sensitivity_report(const ObjectiveFn& objective, const ParamSpace& space,
                                     const Theta& theta_star, int samples, std::uint64_t seed)
{
    SensitivityReport report;
    for (int param = 0; param < cal::kDim; ++param) {
        report.global_by_param.push_back(
            global_sensitivity(objective, space, theta_star, param, samples, seed));
        report.local_by_param.push_back(local_sensitivity(objective, space, theta_star, param, seed));
    }

    report.global_ranking.resize(cal::kDim);
    std::iota(report.global_ranking.begin(), report.global_ranking.end(), 0);
    std::sort(report.global_ranking.begin(), report.global_ranking.end(), [&](int a, int b) {
        return report.global_by_param[a].ci_width > report.global_by_param[b].ci_width;
    });

    report.local_ranking.resize(cal::kDim);
    std::iota(report.local_ranking.begin(), report.local_ranking.end(), 0);
    auto magnitude = [&](int param) {
        const LocalSensitivity& local = report.local_by_param[param];
        return std::max(std::abs(local.delta_plus), std::abs(local.delta_minus));
    };
    std::sort(report.local_ranking.begin(), report.local_ranking.end(), [&](int a, int b) {
        return magnitude(a) > magnitude(b);
    });
    return report;
}

UqResult forward_uq(const ObjectiveFn& objective, const ParamSpace& space, const Theta& theta_star,
                    const std::vector<scen::Scenario>& scenarios, int samples, int /*runs*/,
                    std::uint64_t seed, const std::vector<int>& frozen)
{
    if (samples < 2) {
        throw UsageError("forward UQ needs at least two parameter samples");
    }
    if (scenarios.empty()) {
        throw UsageError("forward UQ needs a scenario");
    }

    Rng rng(Rng::derive(seed, {0x04f11d}));
    UqResult result;
    result.samples.reserve(samples);

    double weight_sum = 0.0;
    for (int k = 0; k < samples; ++k) {
        UqSample sample;
        for (int d = 0; d < cal::kDim; ++d) {
            sample.theta[d] = rng.uniform(space.lower[d], space.upper[d]);
        }
        for (int d : frozen) {
            sample.theta[d] = theta_star[d];
        }
        sample.objective =
            objective(sample.theta, Rng::derive(seed, {0x0bULL, static_cast<std::uint64_t>(k)}));
        sample.weight = 1.0 / (1.0 + sample.objective);
        weight_sum += sample.weight;

        const scen::Scenario& scenario = scenarios.front();
        rep::Simulation simulation(scenario, cal::apply_theta(sample.theta),
                                   Rng::derive(seed, {0x0cULL, static_cast<std::uint64_t>(k)}));
        const sim::SimulationTrace trace = simulation.run();
        if (trace.instatement_step && trace.removal_step) {
            sample.time_to_replacement = *trace.instatement_step - *trace.removal_step;
            for (const sim::TraceEvent& event : trace.events) {
                if (event.type == sim::EventType::instatement) {
                    sample.replacement_id = trace.agent_ids[event.subject];
                }
            }
        }
        const sim::StepSnap& last = trace.steps.back();
        double trust = 0.0;
        for (const sim::EdgeSnap& edge : last.edges) {
            trust += edge.trust;
        }
        sample.final_mean_trust = last.edges.empty() ? 0.0 : trust / last.edges.size();
        result.samples.push_back(std::move(sample));
    }

    double time_weight = 0.0;
    for (UqSample& sample : result.samples) {
        sample.weight /= weight_sum;
        const std::string key = sample.replacement_id.empty() ? "none" : sample.replacement_id;
        result.replacement_frequency[key] += sample.weight;
        result.mean_final_trust += sample.weight * sample.final_mean_trust;
        if (sample.time_to_replacement >= 0) {
            result.mean_time_to_replacement += sample.weight * sample.time_to_replacement;
            time_weight += sample.weight;
        }
    }
    if (time_weight > 0.0) {
        result.mean_time_to_replacement /= time_weight;
    }
    return result;
}

BaselineResult null_baseline(const ObjectiveFn& objective, const ParamSpace& space,
                             const Theta& theta_star, int random_models, std::uint64_t seed)
{
    if (random_models < 1) {
        throw UsageError("baseline needs at least one random model");
    }
    Rng rng(Rng::derive(seed, {0xba5e}));
    BaselineResult result;
    result.random_scores.reserve(random_models);
    result.theta_star_score = objective(theta_star, Rng::derive(seed, {0x57a2}));

    int at_least_as_good = 0;
    for (int k = 0; k < random_models; ++k) {
        Theta theta;
        for (int d = 0; d < cal::kDim; ++d) {
            theta[d] = rng.uniform(space.lower[d], space.upper[d]);
        }
        const double score =
            objective(theta, Rng::derive(seed, {0xadULL, static_cast<std::uint64_t>(k)}));
        result.random_scores.push_back(score);
        if (score <= result.theta_star_score) {
            ++at_least_as_good;
        }
    }
    result.p_value = static_cast<double>(at_least_as_good) / random_models;
    result.significant = result.p_value < 0.05;
    return result;
}

ProfilePoints profile_1d(const std::vector<cal::EvalRecord>& log, const ParamSpace& space, int param,
                         int bins)
{
    if (log.empty()) {
        throw UsageError("profile needs a non-empty evaluation log");
    }
    if (bins < 2) {
        throw UsageError("profile needs at least two bins");
    }

    const double lo = space.lower[param];
    const double width = space.width(param);
    std::vector<std::vector<double>> buckets(bins);
    for (const cal::EvalRecord& record : log) {
        const double position = (record.theta[param] - lo) / width;
        int bin = static_cast<int>(position * bins);
        bin = std::clamp(bin, 0, bins - 1);
        buckets[static_cast<std::size_t>(bin)].push_back(record.value);
    }

    ProfilePoints points;
    points.param = param;
    for (int bin = 0; bin < bins; ++bin) {
        const auto& bucket = buckets[static_cast<std::size_t>(bin)];
        if (bucket.size() < 2) {
            continue; // SEM undefined
        }
        const double mean = std::accumulate(bucket.begin(), bucket.end(), 0.0) / bucket.size();
        double variance = 0.0;
        for (double value : bucket) {
            variance += (value - mean) * (value - mean);
        }
        variance /= static_cast<double>(bucket.size() - 1);
        points.centers.push_back(lo + (bin + 0.5) * width / bins);
        points.means.push_back(mean);
        points.sems.push_back(std::sqrt(variance / static_cast<double>(bucket.size())));
        points.counts.push_back(static_cast<int>(bucket.size()));
    }
    if (points.centers.empty()) {
        throw DataError("no parameter bin holds two or more evaluations");
    }

    // sigma is range/15 in parameter units; the series is spaced range/bins.
    const double sigma_bins = static_cast<double>(bins) / 15.0;
    points.smoothed = smooth::gaussian_smooth_1d(points.means, sigma_bins);
    return points;
}

smooth::LinearSpline profile_spline(const ProfilePoints& points)
{
    return smooth::LinearSpline(points.centers, points.smoothed);
}

} // namespace ccrm::ana
