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

#include "ridewar/choice.hpp"
#include "ridewar/domain.hpp"
#include "ridewar/learning.hpp"
#include "ridewar/marketday.hpp"
#include "ridewar/metrics.hpp"
#include "ridewar/rng.hpp"
#include "ridewar/social.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ridewar {

enum class AgentClass { traveler, driver };

struct PlatformBelief {
    learning::ComponentState experience{0.5, learning::ComponentKind::experience};
    learning::ComponentState marketing{0.5, learning::ComponentKind::marketing};
    learning::ComponentState wom{0.5, learning::ComponentKind::wom};
};

struct AgentState {
    int id = 0; // global: travelers 0..T-1, drivers T..T+D-1
    AgentClass agent_class = AgentClass::traveler;
    std::vector<std::uint8_t> aware;       // per platform
    std::vector<PlatformBelief> beliefs;   // per platform
    std::vector<double> perceived;         // composed utility per platform, as of the end of the previous day
    double outside_utility = 0.5;
    std::optional<market::OdPair> home_trip; // travelers with fixed trip geometry
    int last_choice = -1;                  // platform index, n_platforms = outside, -1 = none yet

    bool aware_of_any() const { return std::find(aware.begin(), aware.end(), 1) != aware.end(); }
};

struct SimulationState {
    int day = 0;
    RngStreams streams{0};
    std::vector<AgentState> agents;
    std::vector<DayMetrics> history;

    int n_travelers = 0;
    int n_drivers = 0;
};

inline void recompose(AgentState& a, const ChoiceParams& cp)
{
    const auto w = choice::Weights::from(cp);
    for (std::size_t k = 0; k < a.beliefs.size(); ++k) {
        const auto& b = a.beliefs[k];
        a.perceived[k] = choice::compose_perceived_utility(
            {b.experience.utility, b.marketing.utility, b.wom.utility}, w, cp.asc);
    }
}

/// Everyone starts unnotified with neutral components.
inline SimulationState init_state(const ValidatedConfig& vcfg)
{
    const auto& cfg = vcfg.config();
    const std::size_t np = cfg.n_platforms();
    SimulationState st;
    st.streams = RngStreams(cfg.seed);
    st.n_travelers = cfg.n_travelers;
    st.n_drivers = cfg.n_drivers;
    st.agents.resize(static_cast<std::size_t>(cfg.n_travelers + cfg.n_drivers));

    const double u0 = cfg.learning_params.u_init;
    for (int id = 0; id < cfg.n_travelers + cfg.n_drivers; ++id) {
        auto& a = st.agents[static_cast<std::size_t>(id)];
        a.id = id;
        a.agent_class = id < cfg.n_travelers ? AgentClass::traveler : AgentClass::driver;
        a.aware.assign(np, 0);
        PlatformBelief b;
        b.experience.utility = b.marketing.utility = b.wom.utility = u0;
        a.beliefs.assign(np, b);
        a.perceived.assign(np, 0.0);
        a.outside_utility = a.agent_class == AgentClass::traveler ? cfg.choice_params.outside_option_utility
                                                                   : cfg.choice_params.driver_outside_option_utility;
        if (a.agent_class == AgentClass::traveler && cfg.fixed_trip_geometry) {
            // Day index far outside any horizon reserves a key space for the commute draw.
            Rng rng = st.streams.stream(StreamId::demand, ~std::uint64_t{0}, static_cast<std::uint64_t>(id));
            a.home_trip = market::draw_od(cfg, rng);
        }
        recompose(a, cfg.choice_params);
    }
    return st;
}

struct DayResult {
    DayMetrics metrics;
    market::DayOutcome outcome;
};

/// Advances one day:
///  1. awareness draws (baseline diffusion + campaign exposure)
///  2. choices from yesterday's perceived utilities
///  3. within-day market
///  4. experience updates for participants
///  5. marketing updates for exposed agents
///  6. word-of-mouth updates for initiators
///  7. recomposition of perceived utilities
///  8. metrics
inline DayResult step_day(SimulationState& st, const ValidatedConfig& vcfg)
{
    const auto& cfg = vcfg.config();
    if (st.day >= cfg.horizon_days)
        throw std::out_of_range("step_day: day " + std::to_string(st.day) + " is past the horizon");

    const int day = st.day;
    const auto uday = static_cast<std::uint64_t>(day);
    const std::size_t np = cfg.n_platforms();
    const int n_agents = st.n_travelers + st.n_drivers;

    std::vector<Strategy> strategies;
    std::vector<double> campaign(np, 0.0);
    strategies.reserve(np);
    for (std::size_t k = 0; k < np; ++k) {
        strategies.push_back(strategy_for_day(cfg.schedules[k], day));
        if (strategies[k].campaign_active()) campaign[k] = strategies[k].marketing_intensity;
    }

    // 1. awareness
    for (auto& a : st.agents) {
        Rng rng = st.streams.stream(StreamId::awareness, uday, static_cast<std::uint64_t>(a.id));
        for (std::size_t k = 0; k < np; ++k) {
            const bool hit = rng.bernoulli(cfg.awareness_daily_prob);
            if (strategies[k].active && hit) a.aware[k] = 1;
        }
    }
    const auto exposed = social::draw_marketing_exposures(0, n_agents, campaign, st.streams, day);
    for (auto& a : st.agents)
        for (std::size_t k = 0; k < np; ++k)
            if (exposed[static_cast<std::size_t>(a.id) * np + k]) a.aware[k] = 1;

    // 2. choices
    const double theta = cfg.choice_params.theta;
    const double theta_n = vcfg.theta_n();
    PopulationTally tally;
    tally.n_travelers = st.n_travelers;
    tally.n_drivers = st.n_drivers;
    tally.travelers_aware.assign(np, 0);
    tally.travelers_chose.assign(np, 0);
    tally.drivers_aware.assign(np, 0);
    tally.drivers_chose.assign(np, 0);

    std::vector<market::Participant> riders;
    std::vector<market::DriverShift> shifts;
    for (auto& a : st.agents) {
        Rng rng = st.streams.stream(StreamId::choice, uday, static_cast<std::uint64_t>(a.id));
        const choice::ChoiceSet set{a.perceived, a.aware, a.outside_utility};
        const auto pick = choice::choose(set, theta, theta_n, rng);
        a.last_choice = static_cast<int>(pick);
        const bool traveler = a.agent_class == AgentClass::traveler;
        for (std::size_t k = 0; k < np; ++k)
            if (a.aware[k]) ++(traveler ? tally.travelers_aware : tally.drivers_aware)[k];
        if (pick == np) continue;
        ++(traveler ? tally.travelers_chose : tally.drivers_chose)[pick];
        if (traveler) {
            riders.push_back({a.id, static_cast<int>(pick), a.home_trip});
        } else {
            Rng pos = st.streams.stream(StreamId::matching, uday, static_cast<std::uint64_t>(a.id));
            market::DriverShift s;
            s.driver_id = a.id;
            s.platform = static_cast<int>(pick);
            s.position = {pos.uniform(0, cfg.city_side_km), pos.uniform(0, cfg.city_side_km)};
            shifts.push_back(s);
        }
    }

    // 3. market
    const auto requests = market::generate_demand(riders, cfg, st.streams, day);
    DayResult result;
    result.outcome = market::match_day(requests, std::move(shifts), strategies, cfg);

    // 4. experience
    const auto& lp = cfg.learning_params;
    for (const auto& trip : result.outcome.trips) {
        auto& a = st.agents[static_cast<std::size_t>(trip.traveler_id)];
        const auto signal =
            trip.served ? learning::traveler_experience_signal(market::pt_benchmark_cost(trip.trip_distance, cfg),
                                                               market::traveler_generalized_cost(trip, cfg))
                        : learning::unserved_traveler_signal();
        auto& c = a.beliefs[static_cast<std::size_t>(trip.platform)].experience;
        c = learning::update_component(c, signal, lp);
    }
    for (std::size_t i = 0; i < result.outcome.shifts.size(); ++i) {
        const auto& s = result.outcome.shifts[i];
        auto& a = st.agents[static_cast<std::size_t>(s.driver_id)];
        const auto signal =
            learning::driver_experience_signal(cfg.reservation_wage, result.outcome.driver_net_hourly[i]);
        auto& c = a.beliefs[static_cast<std::size_t>(s.platform)].experience;
        c = learning::update_component(c, signal, lp);
    }

    // 5. marketing
    for (auto& a : st.agents)
        for (std::size_t k = 0; k < np; ++k)
            if (exposed[static_cast<std::size_t>(a.id) * np + k]) {
                auto& c = a.beliefs[k].marketing;
                c = learning::update_component(c, learning::marketing_signal(c.utility, true, campaign[k]), lp);
            }

    // 6. word of mouth, using partners' perceived utilities from yesterday
    const double p_wom = cfg.social_params.wom_intensity;
    for (const AgentClass cls : {AgentClass::traveler, AgentClass::driver}) {
        std::vector<int> aware_ids;
        for (const auto& a : st.agents)
            if (a.agent_class == cls && a.aware_of_any()) aware_ids.push_back(a.id);
        for (const auto& pair : social::draw_wom_pairs(aware_ids, p_wom, st.streams, day)) {
            const auto& peer = st.agents[static_cast<std::size_t>(pair.agent_j)];
            Rng tie = st.streams.stream(StreamId::social, uday, social::topic_key(static_cast<std::uint64_t>(pair.agent_i)));
            const std::size_t topic = social::favourite_platform(peer.perceived, peer.aware, tie);
            auto& a = st.agents[static_cast<std::size_t>(pair.agent_i)];
            auto& c = a.beliefs[topic].wom;
            c = learning::update_component(c, learning::wom_signal(c.utility, peer.perceived[topic], p_wom, true), lp);
            if (cfg.social_params.wom_notifies) a.aware[topic] = 1;
        }
    }

    // 7. recompose
    for (auto& a : st.agents) recompose(a, cfg.choice_params);

    // 8. metrics
    result.metrics = summarize_day(day, result.outcome, tally);
    st.history.push_back(result.metrics);
    ++st.day;
    return result;
}

struct PlatformSummary {
    int travelers_aware = 0;
    int drivers_aware = 0;
    double mean_traveler_utility = 0.0;
    double mean_driver_utility = 0.0;
};

struct RunResult {
    std::uint64_t seed = 0;
    std::vector<DayMetrics> history;
    std::vector<PlatformSummary> final_platforms;

    std::vector<double> traveler_share(std::size_t platform) const
    {
        std::vector<double> s;
        s.reserve(history.size());
        for (const auto& d : history) s.push_back(d.platforms.at(platform).traveler_share);
        return s;
    }

    std::vector<double> total_rs_share() const
    {
        std::vector<double> s;
        s.reserve(history.size());
        for (const auto& d : history) s.push_back(d.total_rs_share());
        return s;
    }
};

inline RunResult run(const ValidatedConfig& vcfg)
{
    auto st = init_state(vcfg);
    while (st.day < vcfg->horizon_days) step_day(st, vcfg);

    RunResult r;
    r.seed = vcfg->seed;
    r.history = std::move(st.history);
    const std::size_t np = vcfg->n_platforms();
    r.final_platforms.resize(np);
    for (std::size_t k = 0; k < np; ++k) {
        auto& p = r.final_platforms[k];
        for (const auto& a : st.agents) {
            if (a.agent_class == AgentClass::traveler) {
                p.travelers_aware += a.aware[k];
                p.mean_traveler_utility += a.perceived[k];
            } else {
                p.drivers_aware += a.aware[k];
                p.mean_driver_utility += a.perceived[k];
            }
        }
        p.mean_traveler_utility /= st.n_travelers;
        p.mean_driver_utility /= st.n_drivers;
    }
    return r;
}

inline ValidatedConfig with_seed(const ValidatedConfig& vcfg, std::uint64_t seed)
{
    auto cfg = vcfg.config();
    cfg.seed = seed;
    return validate_config(std::move(cfg));
}

/// Runs `count` independent jobs on up to `threads` workers; job(i) writes
/// only to slot i, so results do not depend on the worker count.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> half_width;
};

struct Replications {
    std::vector<RunResult> runs;             // ascending seed order
    std::vector<SeriesStats> traveler_share; // per platform
    std::vector<SeriesStats> driver_share;   // per platform
    SeriesStats pt_share;
    SeriesStats rw_share;
    SeriesStats total_rs_share;
};

namespace detail {

template <typename Get>
SeriesStats aggregate(const std::vector<RunResult>& runs, Get get)
{
    SeriesStats s;
    if (runs.empty()) return s;
    const std::size_t days = runs.front().history.size();
    s.mean.resize(days);
    s.half_width.resize(days);
    std::vector<double> xs(runs.size());
    for (std::size_t d = 0; d < days; ++d) {
        for (std::size_t r = 0; r < runs.size(); ++r) xs[r] = get(runs[r].history[d]);
        const auto ci = mean_ci(xs);
        s.mean[d] = ci.mean;
        s.half_width[d] = ci.half_width;
    }
    return s;
}

} // namespace detail

/// Independent runs over `seeds`. Runs are reduced in ascending seed order,
/// so permuting the seed list or changing `threads` leaves the aggregate
/// bit-identical.
inline Replications run_replications(const ValidatedConfig& vcfg, std::vector<std::uint64_t> seeds,
                                     unsigned threads = 1)
{
    if (seeds.empty()) throw std::invalid_argument("run_replications: empty seed list");
    std::sort(seeds.begin(), seeds.end());
    Replications rep;
    rep.runs.resize(seeds.size());
    parallel_for(seeds.size(), threads, [&](std::size_t i) { rep.runs[i] = run(with_seed(vcfg, seeds[i])); });

    const std::size_t np = vcfg->n_platforms();
    for (std::size_t k = 0; k < np; ++k) {
        rep.traveler_share.push_back(
            detail::aggregate(rep.runs, [k](const DayMetrics& m) { return m.platforms[k].traveler_share; }));
        rep.driver_share.push_back(
            detail::aggregate(rep.runs, [k](const DayMetrics& m) { return m.platforms[k].driver_share; }));
    }
    rep.pt_share = detail::aggregate(rep.runs, [](const DayMetrics& m) { return m.pt_share; });
    rep.rw_share = detail::aggregate(rep.runs, [](const DayMetrics& m) { return m.rw_share; });
    rep.total_rs_share = detail::aggregate(rep.runs, [](const DayMetrics& m) { return m.total_rs_share(); });
    return rep;
}

} // namespace ridewar
