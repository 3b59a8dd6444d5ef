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
#ifndef CCRM_CALIBRATE_H
#define CCRM_CALIBRATE_H

#include "core/replacement.hpp"
#include "core/scenarios.hpp"
#include "core/smoothing.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ccrm::cal {

inline constexpr int kDim = 7;

/// Free parameter vector, ordered beta, kappa, gamma, tau, psi, phi, zeta.
using Theta = std::array<double, kDim>;

/// Box bounds of the calibration space.
struct ParamSpace {
    Theta lower{0.0, 0.0, 0.0, 0.001, 0.0, 0.0, 0.0};
    Theta upper{1.0, 1.5, 1.0, 0.1, 10.0, 10.0, 1.0};

    double width(int index) const
    {
        return upper[index] - lower[index];
    }
    Theta clamp(Theta theta) const;
    Theta midpoint() const;
    Theta from_unit(const Theta& unit) const;
    Theta to_unit(const Theta& theta) const;
};

const std::array<std::string, kDim>& param_names();
int param_index(const std::string& name);

/// Model defaults with the calibrated coordinates overridden by theta.
rep::ModelParams apply_theta(const Theta& theta, rep::ModelParams base = {});
Theta default_theta();

/**
 * An objective evaluation: mean failed statements at theta, averaged over
 * seeds derived from `seed`. Implementations must be deterministic in
 * (theta, seed).
 */
using ObjectiveFn = std::function<double(const Theta& theta, std::uint64_t seed)>;

/**
 * The training objective: for every scenario run `runs` seeded simulations,
 * score the training statements, and average the per-run failed-statement
 * counts over runs and scenarios. Lower is better, zero is perfect.
 * Evaluations are independent of `jobs`.
 */
class TrainingObjective {
public:
    TrainingObjective(std::vector<scen::Scenario> scenarios, int runs, int jobs = 1);

    double operator()(const Theta& theta, std::uint64_t seed) const;

    int runs() const
    {
        return runs_;
    }

private:
    std::vector<scen::Scenario> scenarios_;
    int runs_;
    int jobs_;
};

struct SpsaConfig {
    int iterations = 3000;
    int runs = 48; // averaging of each objective call (informational; the fn owns it)
    double a_scale = 0.1; // step gain, fraction of each box width
    double c_scale = 0.1; // perturbation size, fraction of each box width
    double alpha = 0.602;
    double gamma = 0.101;
    double stability = 300.0; // the A offset in a_k
    std::uint64_t seed = 0;
    int reeval_candidates = 10; // best iterates re-checked at the end
    int reeval_factor = 4;      // extra averaging for the re-check
};

struct EvalRecord {
    int iteration = 0; // -1 for final re-evaluations
    Theta theta{};
    double value = 0.0;
    int runs = 0;
};

struct SpsaResult {
    Theta optimum{};
    double optimum_value = 0.0;
    std::vector<EvalRecord> log;       // two entries per iteration plus re-evaluations
    std::vector<Theta> iterates;       // theta_k after each update
    std::vector<double> iterate_value; // (f+ + f-)/2 estimate per iteration
};

/**
 * Standard SPSA with Rademacher perturbations and per-coordinate gains of
 * a_scale/c_scale times the box width, projected onto the box after every
 * update. Returns the best-seen iterate under a final re-evaluation pass.
 */
SpsaResult spsa_optimize(const ObjectiveFn& objective, const ParamSpace& space, const SpsaConfig& config,
                         std::optional<Theta> start = std::nullopt);

struct LandscapeConfig {
    int grid = 33;      // points per axis, at least 3
    double span = 0.5;  // half-extent of the slice in unit-box coordinates
    double sigma = 0.1; // Gaussian smoothing in (x, y) units; cov ((0.01,0),(0,0.01))
    std::uint64_t seed = 0;
};

struct LandscapeSlice {
    std::vector<double> xs; // abstract slice coordinates, minimum at (0,0)
    std::vector<double> ys;
    smooth::Grid raw;      // rows indexed by y, columns by x
    smooth::Grid smoothed;
};

/**
 * Objective on a two-dimensional random orthonormal slice through
 * theta_star, evaluated on a grid and Gaussian-smoothed.
 */
LandscapeSlice landscape_slice(const ObjectiveFn& objective, const ParamSpace& space, const Theta& theta_star,
                               const LandscapeConfig& config);

} // namespace ccrm::cal

#endif // CCRM_CALIBRATE_H
