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
#ifndef CCRM_RNG_H
#define CCRM_RNG_H

#include <array>
#include <cmath>
#include <cstdint>

namespace ccrm {

/**
 * Deterministic random stream (xoshiro256++ with splitmix64 seeding).
 *
 * All distributions are implemented in-house so that a given seed produces
 * the same sequence on every platform and standard library. Every stochastic
 * component of the toolkit owns one stream; parallel work derives child
 * streams up front via Rng::derive so results do not depend on scheduling.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed)
    {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            word = splitmix64(x);
        }
    }

    std::uint64_t next_u64()
    {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t      = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform01()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi]; a zero-width interval returns lo exactly.
    double uniform(double lo, double hi)
    {
        if (lo == hi) {
            return lo;
        }
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n)
    {
        // Rejection sampling to avoid modulo bias.
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) {
                return x % n;
            }
        }
    }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi)
    {
        return lo + static_cast<int>(uniform_index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Standard normal via Box-Muller; always consumes two uniforms.
    double normal()
    {
        double u1 = uniform01();
        const double u2 = uniform01();
        if (u1 <= 0.0) {
            u1 = 0x1.0p-53;
        }
        const double r = std::sqrt(-2.0 * std::log(u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev)
    {
        return mean + stddev * normal();
    }

    /// Rademacher variable: +1 or -1 with equal probability.
    double rademacher()
    {
        return (next_u64() & 1u) ? 1.0 : -1.0;
    }

    /**
     * Derive an independent seed from a master seed and a list of stream
     * tags (scenario index, run index, ...). Used to hand out per-task
     * streams ahead of any parallel execution.
     */
    static std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags)
    {
        std::uint64_t x = seed ^ 0x9e3779b97f4a7c15ULL;
        for (std::uint64_t tag : tags) {
            x = splitmix64(x);
            x ^= splitmix64(tag + 0x632be59bd9b4e019ULL);
        }
        return splitmix64(x);
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t splitmix64(std::uint64_t&& x)
    {
        std::uint64_t y = x;
        return splitmix64(y);
    }

    static std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace ccrm

#endif // CCRM_RNG_H
