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

#include "ridewar/domain.hpp"
#include "ridewar/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

/// Two-level nested logit over {ride-sourcing nest of platforms, outside
/// option}. The outside option is a degenerate nest whose logsum is its fixed
/// utility. Platforms the agent has not been notified about are excluded
/// from both numerators and denominators.
namespace ridewar::choice {

struct ComponentUtilities {
    double experience = 0.5;
    double marketing = 0.5;
    double wom = 0.5;
};

struct Weights {
    double experience = 0.7;
    double marketing = 0.1;
    double wom = 0.2;

    static Weights from(const ChoiceParams& p) { return {p.beta_experience, p.beta_marketing, p.beta_wom}; }
};

inline double compose_perceived_utility(const ComponentUtilities& c, const Weights& w, double asc)
{
    return w.experience * c.experience + w.marketing * c.marketing + w.wom * c.wom + asc;
}

/// One agent's choice situation. `aware` gates each platform alternative.
struct ChoiceSet {
    std::span<const double> platform_utility;
    std::span<const std::uint8_t> aware; // 1 = notified
    double outside_utility = 0.5;
};

/// Softmax of u / theta_n over the given (aware) utilities.
inline std::vector<double> within_nest_probability(std::span<const double> utilities, double theta_n)
{
    std::vector<double> p(utilities.size());
    if (utilities.empty()) return p;
    const double top = *std::max_element(utilities.begin(), utilities.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < utilities.size(); ++k) {
        p[k] = std::exp((utilities[k] - top) / theta_n);
        sum += p[k];
    }
    for (auto& x : p) x /= sum;
    return p;
}

/// theta_n * log(sum exp(u / theta_n)), stabilised by max-subtraction.
inline double nest_logsum(std::span<const double> utilities, double theta_n)
{
    assert(!utilities.empty());
    const double top = *std::max_element(utilities.begin(), utilities.end());
    double sum = 0.0;
    for (double u : utilities) sum += std::exp((u - top) / theta_n);
    return top + theta_n * std::log(sum);
}

/// Softmax of W / theta over nest logsums.
inline std::vector<double> nest_probability(std::span<const double> logsums, double theta)
{
    return within_nest_probability(logsums, theta);
}

/// Full probability vector: entries 0..N-1 are the platforms, entry N is the
/// outside option. Unaware platforms get exactly 0.
inline std::vector<double> choice_probabilities(const ChoiceSet& set, double theta, double theta_n)
{
    const std::size_t n = set.platform_utility.size();
    std::vector<double> probs(n + 1, 0.0);
    std::vector<double> aware_u;
    aware_u.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        if (set.aware[k]) aware_u.push_back(set.platform_utility[k]);
    if (aware_u.empty()) {
        probs[n] = 1.0;
        return probs;
    }
    const double w_rs = nest_logsum(aware_u, theta_n);
    const double nests[2] = {w_rs, set.outside_utility};
    const auto p_nest = nest_probability(nests, theta);
    const auto p_within = within_nest_probability(aware_u, theta_n);
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (set.aware[k]) probs[k] = p_within[j++] * p_nest[0];
    probs[n] = p_nest[1];
    return probs;
}

/// Samples an alternative index (N means the outside option) from the
/// nested-logit probabilities using a single uniform draw. Allocation-free.
inline std::size_t choose(const ChoiceSet& set, double theta, double theta_n, Rng& rng)
{
    const std::size_t n = set.platform_utility.size();
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
        if (set.aware[k]) top = std::max(top, set.platform_utility[k]);
    const double draw = rng.uniform();
    if (top == -std::numeric_limits<double>::infinity()) return n;

    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (set.aware[k]) sum += std::exp((set.platform_utility[k] - top) / theta_n);
    const double w_rs = top + theta_n * std::log(sum);
    // P(rs nest) = 1 / (1 + exp((W_out - W_rs) / theta))
    const double p_rs = 1.0 / (1.0 + std::exp((set.outside_utility - w_rs) / theta));
    if (draw >= p_rs) return n;

    double target = draw / p_rs * sum;
    std::size_t last = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (!set.aware[k]) continue;
        last = k;
        target -= std::exp((set.platform_utility[k] - top) / theta_n);
        if (target < 0.0) return k;
    }
    return last;
}

} // namespace ridewar::choice
