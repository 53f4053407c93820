/*
 * Copyright (C) 2026 The ridewar authors
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
#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace ridewar {

/// Independent random streams. Each has its own key space, so draws in one
/// stream never shift the sequence of another.
enum class StreamId : std::uint64_t {
    demand = 1,
    matching = 2,
    choice = 3,
    social = 4,
    awareness = 5,
};

constexpr std::string_view to_string(StreamId s)
{
    switch (s) {
    case StreamId::demand: return "demand";
    case StreamId::matching: return "matching";
    case StreamId::choice: return "choice";
    case StreamId::social: return "social";
    case StreamId::awareness: return "awareness";
    }
    return "?";
}

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator, but callers
/// should prefer uniform()/bernoulli()/below() whose output is identical on
/// every standard library (std:: distributions are implementation-defined).
class Rng {
public:
    using result_type = std::uint64_t;

    constexpr explicit Rng(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix64(state_);
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    constexpr bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n). Uses Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n)
    {
        __extension__ using u128 = unsigned __int128;
        if (n == 0) return 0;
        u128 m = static_cast<u128>((*this)()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<u128>((*this)()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

/// Derives per-(stream, day, key) generators from the scenario seed. The key
/// is usually an agent id, which makes each agent's draws independent of the
/// order agents are visited in.
class RngStreams {
public:
    constexpr explicit RngStreams(std::uint64_t seed) : seed_(seed) {}

    constexpr std::uint64_t seed() const { return seed_; }

    constexpr Rng stream(StreamId id, std::uint64_t day, std::uint64_t key = 0) const
    {
        std::uint64_t h = detail::mix64(seed_ ^ 0x6a09e667f3bcc908ULL);
        h = detail::mix64(h ^ (static_cast<std::uint64_t>(id) * 0x9e3779b97f4a7c15ULL));
        h = detail::mix64(h ^ (day + 0x3c6ef372fe94f82bULL));
        h = detail::mix64(h ^ (key * 0xd1b54a32d192ed03ULL + 0xa54ff53a5f1d36f1ULL));
        return Rng(h);
    }

private:
    std::uint64_t seed_;
};

} // namespace ridewar
