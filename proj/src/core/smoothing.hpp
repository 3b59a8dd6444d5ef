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
#ifndef CCRM_SMOOTHING_H
#define CCRM_SMOOTHING_H

#include <cstddef>
#include <vector>

namespace ccrm::smooth {

/**
 * Discrete Gaussian kernel of the given sigma (in sample units), truncated
 * at ceil(4 sigma) and normalized to sum 1. sigma <= 0 yields the identity
 * kernel.
 */
std::vector<double> gaussian_kernel(double sigma);

/**
 * Convolve with a Gaussian under symmetric (reflective) boundary handling:
 * index -1 maps to 0, index n to n-1, and so on. Constants stay constant.
 */
std::vector<double> gaussian_smooth_1d(const std::vector<double>& values, double sigma);

/// Row-major n_rows x n_cols grid.
struct Grid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double& at(std::size_t r, std::size_t c)
    {
        return values[r * cols + c];
    }
    double at(std::size_t r, std::size_t c) const
    {
        return values[r * cols + c];
    }
};

/**
 * Separable 2-D Gaussian smoothing with per-axis sigmas (diagonal
 * covariance), reflective boundaries on both axes.
 */
Grid gaussian_smooth_2d(const Grid& grid, double sigma_row, double sigma_col);

/// Reflect an out-of-range index back into [0, n).
std::size_t reflect_index(long long index, std::size_t n);

/**
 * First-order interpolating spline: linear between knots, constant beyond
 * the end knots. Knot positions must be strictly increasing.
 */
class LinearSpline {
public:
    LinearSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double at) const;

    const std::vector<double>& knots_x() const
    {
        return x_;
    }
    const std::vector<double>& knots_y() const
    {
        return y_;
    }

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

} // namespace ccrm::smooth

#endif // CCRM_SMOOTHING_H
