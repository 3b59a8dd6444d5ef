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
#ifndef CCRM_FRAC_H
#define CCRM_FRAC_H

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ccrm {

/**
 * Exact small rational, used for statement point values so that case totals
 * like 1/3 + 1/3 + 1/3 sum to whole points without rounding.
 */
struct Frac {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Frac() = default;
    constexpr Frac(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {}

    static Frac normalized(std::int64_t n, std::int64_t d)
    {
        if (d == 0) {
            throw std::invalid_argument("fraction with zero denominator");
        }
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        return Frac{n, d};
    }

    /// Parse "1", "1/2", "1/3", ...
    static Frac parse(const std::string& text)
    {
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                return normalized(std::stoll(text), 1);
            }
            return normalized(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
        }
        catch (const std::exception&) {
            throw std::invalid_argument("malformed fraction: " + text);
        }
    }

    std::string str() const
    {
        if (den == 1) {
            return std::to_string(num);
        }
        return std::to_string(num) + "/" + std::to_string(den);
    }

    double to_double() const
    {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    Frac operator+(const Frac& other) const
    {
        return normalized(num * other.den + other.num * den, den * other.den);
    }

    bool operator==(const Frac& other) const
    {
        const Frac a = normalized(num, den);
        const Frac b = normalized(other.num, other.den);
        return a.num == b.num && a.den == b.den;
    }
};

} // namespace ccrm

#endif // CCRM_FRAC_H
