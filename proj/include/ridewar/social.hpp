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

#include "ridewar/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

/// Marketing exposure and word-of-mouth pairing. Every draw is keyed by
/// (day, agent), so visiting agents in a different order changes nothing.
namespace ridewar::social {

/// Key layout inside the social stream.
inline constexpr std::uint64_t marketing_key(std::uint64_t agent) { return agent * 4 + 0; }
inline constexpr std::uint64_t wom_key(std::uint64_t agent) { return agent * 4 + 1; }
inline constexpr std::uint64_t topic_key(std::uint64_t agent) { return agent * 4 + 2; }

/// The platform a peer talks about: the aware platform with the highest
/// perceived utility, ties broken uniformly at random. Returns
/// perceived.size() if the peer knows no platform.
inline std::size_t favourite_platform(std::span<const double> perceived, std::span<const std::uint8_t> aware, Rng& rng)
{
    std::size_t best = perceived.size();
    std::uint64_t ties = 0;
    for (std::size_t k = 0; k < perceived.size(); ++k) {
        if (!aware[k]) continue;
        if (best == perceived.size() || perceived[k] > perceived[best]) {
            best = k;
            ties = 1;
        } else if (perceived[k] == perceived[best] && rng.below(++ties) == 0) {
            best = k;
        }
    }
    return best;
}

/// exposures[agent * n_platforms + k] == 1 iff the agent saw platform k's
/// campaign today. `intensity[k]` is 0 for platforms without a running
/// campaign. Agent ids are global (travelers first, then drivers).
inline std::vector<std::uint8_t> draw_marketing_exposures(int first_agent, int n_agents,
                                                          std::span<const double> intensity,
                                                          const RngStreams& streams, int day)
{
    const std::size_t np = intensity.size();
    std::vector<std::uint8_t> exposed(static_cast<std::size_t>(n_agents) * np, 0);
    bool any = false;
    for (double p : intensity) any = any || p > 0.0;
    if (!any) return exposed;
    for (int a = 0; a < n_agents; ++a) {
        const auto id = static_cast<std::uint64_t>(first_agent + a);
        Rng rng = streams.stream(StreamId::social, static_cast<std::uint64_t>(day), marketing_key(id));
        for (std::size_t k = 0; k < np; ++k) {
            const double u = rng.uniform();
            exposed[static_cast<std::size_t>(a) * np + k] = intensity[k] > 0.0 && u < intensity[k];
        }
    }
    return exposed;
}

struct Interaction {
    int agent_i = 0; // initiator, receives the signal
    int agent_j = 0; // partner, shares an opinion
    int day = 0;
};

/// Random daily mixing: every aware agent initiates with probability
/// `wom_intensity` and talks to a uniformly drawn other aware agent of the
/// same class. `aware` lists global agent ids in ascending order.
inline std::vector<Interaction> draw_wom_pairs(std::span<const int> aware, double wom_intensity,
                                               const RngStreams& streams, int day)
{
    std::vector<Interaction> out;
    if (aware.size() < 2 || wom_intensity <= 0.0) return out;
    const std::uint64_t others = aware.size() - 1;
    for (std::size_t pos = 0; pos < aware.size(); ++pos) {
        const int i = aware[pos];
        Rng rng = streams.stream(StreamId::social, static_cast<std::uint64_t>(day),
                                 wom_key(static_cast<std::uint64_t>(i)));
        if (!rng.bernoulli(wom_intensity)) continue;
        auto pick = static_cast<std::size_t>(rng.below(others));
        if (pick >= pos) ++pick;
        out.push_back({i, aware[pick], day});
    }
    return out;
}

} // namespace ridewar::social
