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
#include "core/smoothing.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ccrm::smooth {

std::vector<double> gaussian_kernel(double sigma)
{
    if (sigma <= 0.0) {
        return {1.0};
    }
    const long long radius = static_cast<long long>(std::ceil(4.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (long long d = -radius; d <= radius; ++d) {
        const double w = std::exp(-static_cast<double>(d * d) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(d + radius)] = w;
        sum += w;
    }
    for (double& w : kernel) {
        w /= sum;
    }
    return kernel;
}

std::size_t reflect_index(long long index, std::size_t n)
{
    const long long size = static_cast<long long>(n);
    if (size == 1) {
        return 0;
    }
    // Symmetric reflection with edge repeat: ... 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
    const long long period = 2 * size;
    long long m = index % period;
    if (m < 0) {
        m += period;
    }
    if (m >= size) {
        m = period - 1 - m;
    }
    return static_cast<std::size_t>(m);
}

std::vector<double> gaussian_smooth_1d(const std::vector<double>& values, double sigma)
{
    if (values.empty()) {
        throw UsageError("cannot smooth an empty series");
    }
    const std::vector<double> kernel = gaussian_kernel(sigma);
    const long long radius = static_cast<long long>(kernel.size() / 2);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double acc = 0.0;
        for (long long d = -radius; d <= radius; ++d) {
            acc += kernel[static_cast<std::size_t>(d + radius)] *
                   values[reflect_index(static_cast<long long>(i) + d, values.size())];
        }
        out[i] = acc;
    }
    return out;
}

Grid gaussian_smooth_2d(const Grid& grid, double sigma_row, double sigma_col)
{
    if (grid.rows == 0 || grid.cols == 0 || grid.values.size() != grid.rows * grid.cols) {
        throw UsageError("malformed grid");
    }

    // The Gaussian with diagonal covariance separates into two passes.
    Grid pass = grid;
    {
        const std::vector<double> kernel = gaussian_kernel(sigma_col);
        const long long radius = static_cast<long long>(kernel.size() / 2);
        for (std::size_t r = 0; r < grid.rows; ++r) {
            for (std::size_t c = 0; c < grid.cols; ++c) {
                double acc = 0.0;
                for (long long d = -radius; d <= radius; ++d) {
                    acc += kernel[static_cast<std::size_t>(d + radius)] *
                           grid.at(r, reflect_index(static_cast<long long>(c) + d, grid.cols));
                }
                pass.at(r, c) = acc;
            }
        }
    }
    Grid out = pass;
    {
        const std::vector<double> kernel = gaussian_kernel(sigma_row);
        const long long radius = static_cast<long long>(kernel.size() / 2);
        for (std::size_t r = 0; r < grid.rows; ++r) {
            for (std::size_t c = 0; c < grid.cols; ++c) {
                double acc = 0.0;
                for (long long d = -radius; d <= radius; ++d) {
                    acc += kernel[static_cast<std::size_t>(d + radius)] *
                           pass.at(reflect_index(static_cast<long long>(r) + d, grid.rows), c);
                }
                out.at(r, c) = acc;
            }
        }
    }
    return out;
}

LinearSpline::LinearSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x))
    , y_(std::move(y))
{
    if (x_.empty() || x_.size() != y_.size()) {
        throw UsageError("spline needs matching, non-empty knot vectors");
    }
    for (std::size_t k = 1; k < x_.size(); ++k) {
        if (x_[k] <= x_[k - 1]) {
            throw UsageError("spline knots must be strictly increasing");
        }
    }
}

double LinearSpline::operator()(double at) const
{
    if (at <= x_.front()) {
        return y_.front();
    }
    if (at >= x_.back()) {
        return y_.back();
    }
    const auto upper = std::upper_bound(x_.begin(), x_.end(), at);
    const std::size_t hi = static_cast<std::size_t>(upper - x_.begin());
    const std::size_t lo = hi - 1;
    const double t = (at - x_[lo]) / (x_[hi] - x_[lo]);
    return y_[lo] + t * (y_[hi] - y_[lo]);
}

} // namespace ccrm::smooth
