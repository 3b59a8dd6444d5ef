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
#include "core/calibrate.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ccrm::cal {

Theta ParamSpace::clamp(Theta theta) const
{
    for (int k = 0; k < kDim; ++k) {
        theta[k] = std::clamp(theta[k], lower[k], upper[k]);
    }
    return theta;
}

Theta ParamSpace::midpoint() const
{
    Theta theta;
    for (int k = 0; k < kDim; ++k) {
        theta[k] = 0.5 * (lower[k] + upper[k]);
    }
    return theta;
}

Theta ParamSpace::from_unit(const Theta& unit) const
{
    Theta theta;
    for (int k = 0; k < kDim; ++k) {
        theta[k] = lower[k] + unit[k] * width(k);
    }
    return theta;
}

Theta ParamSpace::to_unit(const Theta& theta) const
{
    Theta unit;
    for (int k = 0; k < kDim; ++k) {
        unit[k] = width(k) == 0.0 ? 0.0 : (theta[k] - lower[k]) / width(k);
    }
    return unit;
}

const std::array<std::string, kDim>& param_names()
{
    static const std::array<std::string, kDim> names = {"beta", "kappa", "gamma", "tau",
                                                        "psi",  "phi",   "zeta"};
    return names;
}

int param_index(const std::string& name)
{
    const auto& names = param_names();
    for (int k = 0; k < kDim; ++k) {
        if (names[k] == name) {
            return k;
        }
    }
    throw UsageError("unknown parameter '" + name + "'");
}

rep::ModelParams apply_theta(const Theta& theta, rep::ModelParams base)
{
    base.replacement.beta = theta[0];
    base.replacement.threshold_scale = theta[1];
    base.replacement.gamma = theta[2];
    base.dynamics.tau = theta[3];
    base.dynamics.psi = theta[4];
    base.dynamics.phi = theta[5];
    base.replacement.zeta = theta[6];
    return base;
}

Theta default_theta()
{
    // Table defaults; zeta fixed at the middle of its unit range.
    return Theta{0.5, 1.0, 0.3, 0.01, 3.0, 1.0, 0.5};
}

TrainingObjective::TrainingObjective(std::vector<scen::Scenario> scenarios, int runs, int jobs)
    : scenarios_(std::move(scenarios))
    , runs_(runs)
    , jobs_(std::max(1, jobs))
{
    if (scenarios_.empty()) {
        throw UsageError("objective needs at least one scenario");
    }
    if (runs_ < 1) {
        throw UsageError("objective needs at least one run per scenario");
    }
    for (const scen::Scenario& scenario : scenarios_) {
        if (scenario.training.empty()) {
            throw DataError("scenario '" + scenario.id + "' carries no training statements");
        }
    }
}

double TrainingObjective::operator()(const Theta& theta, std::uint64_t seed) const
{
    const rep::ModelParams params = apply_theta(theta);
    const std::size_t total = scenarios_.size() * static_cast<std::size_t>(runs_);
    std::vector<double> failed(total, 0.0);

    auto work = [&](std::size_t task) {
        const std::size_t scenario_index = task / static_cast<std::size_t>(runs_);
        const std::size_t run_index = task % static_cast<std::size_t>(runs_);
        const scen::Scenario& scenario = scenarios_[scenario_index];
        rep::Simulation simulation(scenario, params,
                                   Rng::derive(seed, {scenario_index, run_index}));
        const sim::SimulationTrace trace = simulation.run();
        const stmt::CaseScore score = stmt::score_case(scenario.id, scenario.training, trace);
        failed[task] = static_cast<double>(score.failed_count);
    };

    if (jobs_ == 1 || total == 1) {
        for (std::size_t task = 0; task < total; ++task) {
            work(task);
        }
    }
    else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int threads = std::min<std::size_t>(jobs_, total);
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t task = next.fetch_add(1);
                    if (task >= total) {
                        return;
                    }
                    work(task);
                }
            });
        }
        for (std::thread& thread : pool) {
            thread.join();
        }
    }

    // Fixed-order reduction keeps the result independent of scheduling.
    double sum = 0.0;
    for (double value : failed) {
        sum += value;
    }
    return sum / static_cast<double>(total);
}

SpsaResult spsa_optimize(const ObjectiveFn& objective, const ParamSpace& space, const SpsaConfig& config,
                         std::optional<Theta> start)
{
    if (config.iterations < 1) {
        throw UsageError("SPSA needs at least one iteration");
    }
    for (int k = 0; k < kDim; ++k) {
        if (!std::isfinite(space.lower[k]) || !std::isfinite(space.upper[k]) ||
            space.lower[k] >= space.upper[k]) {
            throw UsageError("SPSA bounds must be finite with lower < upper");
        }
    }

    Rng rng(Rng::derive(config.seed, {0xca11, 0x5b5a}));
    SpsaResult result;
    result.log.reserve(2 * static_cast<std::size_t>(config.iterations) +
                       static_cast<std::size_t>(config.reeval_candidates));
    result.iterates.reserve(config.iterations);
    result.iterate_value.reserve(config.iterations);

    // Work in unit-box coordinates so the gains are 10% of each box width.
    Theta unit = space.to_unit(start ? space.clamp(*start) : space.midpoint());

    auto clamp_unit = [](Theta u) {
        for (double& value : u) {
            value = std::clamp(value, 0.0, 1.0);
        }
        return u;
    };

    auto evaluate = [&](const Theta& u, int iteration, std::uint64_t tag) {
        const Theta theta = space.from_unit(u);
        const double value = objective(theta, Rng::derive(config.seed, {tag}));
        if (!std::isfinite(value)) {
            throw DataError("objective returned a non-finite value");
        }
        result.log.push_back({iteration, theta, value, config.runs});
        return value;
    };

    for (int k = 0; k < config.iterations; ++k) {
        const double ak = config.a_scale / std::pow(config.stability + k + 1.0, config.alpha);
        const double ck = config.c_scale / std::pow(k + 1.0, config.gamma);

        Theta delta;
        for (int d = 0; d < kDim; ++d) {
            delta[d] = rng.rademacher();
        }
        Theta plus = unit;
        Theta minus = unit;
        for (int d = 0; d < kDim; ++d) {
            plus[d] += ck * delta[d];
            minus[d] -= ck * delta[d];
        }
        plus = clamp_unit(plus);
        minus = clamp_unit(minus);

        const double f_plus = evaluate(plus, k, 2 * static_cast<std::uint64_t>(k));
        const double f_minus = evaluate(minus, k, 2 * static_cast<std::uint64_t>(k) + 1);

        const double difference = (f_plus - f_minus) / (2.0 * ck);
        for (int d = 0; d < kDim; ++d) {
            unit[d] -= ak * difference / delta[d];
        }
        unit = clamp_unit(unit);

        result.iterates.push_back(space.from_unit(unit));
        result.iterate_value.push_back(0.5 * (f_plus + f_minus));
    }

    // Re-evaluate the best-looking iterates with more averaging and return
    // the winner; single noisy estimates are not trusted.
    std::vector<std::size_t> order(result.iterates.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return result.iterate_value[a] < result.iterate_value[b];
    });

    const int candidates = std::min<int>(config.reeval_candidates, static_cast<int>(order.size()));
    Theta best = result.iterates[order.front()];
    double best_value = std::numeric_limits<double>::infinity();
    for (int c = 0; c < candidates; ++c) {
        const Theta candidate = result.iterates[order[static_cast<std::size_t>(c)]];
        double sum = 0.0;
        for (int repeat = 0; repeat < config.reeval_factor; ++repeat) {
            sum += objective(candidate,
                             Rng::derive(config.seed, {0xbe57ULL, static_cast<std::uint64_t>(c),
                                                       static_cast<std::uint64_t>(repeat)}));
        }
        const double value = sum / config.reeval_factor;
        result.log.push_back({-1, candidate, value, config.runs * config.reeval_factor});
        if (value < best_value) {
            best_value = value;
            best = candidate;
        }
    }

    result.optimum = best;
    result.optimum_value = best_value;
    return result;
}

LandscapeSlice landscape_slice(const ObjectiveFn& objective, const ParamSpace& space, const Theta& theta_star,
                               const LandscapeConfig& config)
{
    if (config.grid < 3) {
        throw UsageError("landscape grid must be at least 3x3");
    }

    Rng rng(Rng::derive(config.seed, {0x51cE}));
    // Two orthonormal directions in unit-box coordinates.
    Theta u{};
    Theta v{};
    double norm_u = 0.0;
    for (int d = 0; d < kDim; ++d) {
        u[d] = rng.normal();
        norm_u += u[d] * u[d];
    }
    norm_u = std::sqrt(norm_u);
    for (int d = 0; d < kDim; ++d) {
        u[d] /= norm_u;
    }
    double dot = 0.0;
    for (int d = 0; d < kDim; ++d) {
        v[d] = rng.normal();
    }
    for (int d = 0; d < kDim; ++d) {
        dot += v[d] * u[d];
    }
    double norm_v = 0.0;
    for (int d = 0; d < kDim; ++d) {
        v[d] -= dot * u[d];
        norm_v += v[d] * v[d];
    }
    norm_v = std::sqrt(norm_v);
    for (int d = 0; d < kDim; ++d) {
        v[d] /= norm_v;
    }

    const Theta center = space.to_unit(space.clamp(theta_star));
    LandscapeSlice slice;
    const int n = config.grid;
    slice.raw.rows = static_cast<std::size_t>(n);
    slice.raw.cols = static_cast<std::size_t>(n);
    slice.raw.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    slice.xs.resize(n);
    slice.ys.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        slice.xs[i] = -config.span + 2.0 * config.span * t;
        slice.ys[i] = slice.xs[i];
    }

    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            Theta point = center;
            for (int d = 0; d < kDim; ++d) {
                point[d] += slice.xs[col] * u[d] + slice.ys[row] * v[d];
                point[d] = std::clamp(point[d], 0.0, 1.0);
            }
            const double value =
                objective(space.from_unit(point),
                          Rng::derive(config.seed, {static_cast<std::uint64_t>(row),
                                                    static_cast<std::uint64_t>(col), 0x9217ULL}));
            slice.raw.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) = value;
        }
    }

    const double cell = slice.xs.size() > 1 ? slice.xs[1] - slice.xs[0] : 1.0;
    const double sigma_cells = config.sigma / cell;
    slice.smoothed = smooth::gaussian_smooth_2d(slice.raw, sigma_cells, sigma_cells);
    return slice;
}

} // namespace ccrm::cal
