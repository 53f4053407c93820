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

#include "ridewar/marketday.hpp"
#include "ridewar/money.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ridewar {

struct PlatformDayMetrics {
    int travelers_aware = 0;
    int travelers_chose = 0;
    int trips_served = 0;
    int trips_unserved = 0;
    double traveler_share = 0.0;
    int drivers_aware = 0;
    int drivers_chose = 0;
    double driver_share = 0.0;
    std::optional<double> mean_wait_min;
    std::optional<double> mean_driver_net_hourly;
    Cents gross_revenue;
    Cents commission_income;
    Cents subsidy_spend;

    friend bool operator==(const PlatformDayMetrics&, const PlatformDayMetrics&) = default;
};

/// Shares are fractions of the whole population of each side.
struct DayMetrics {
    int day = 0;
    std::vector<PlatformDayMetrics> platforms;
    double pt_share = 1.0;
    double rw_share = 1.0;

    double total_rs_share() const
    {
        double s = 0.0;
        for (const auto& p : platforms) s += p.traveler_share;
        return s;
    }

    friend bool operator==(const DayMetrics&, const DayMetrics&) = default;
};

/// Awareness and choice counts per platform for one day.
struct PopulationTally {
    int n_travelers = 0;
    int n_drivers = 0;
    std::vector<int> travelers_aware;
    std::vector<int> travelers_chose;
    std::vector<int> drivers_aware;
    std::vector<int> drivers_chose;
};

inline DayMetrics summarize_day(int day, const market::DayOutcome& outcome, const PopulationTally& tally)
{
    const std::size_t np = tally.travelers_chose.size();
    DayMetrics m;
    m.day = day;
    m.platforms.resize(np);

    std::vector<double> wait_sum(np, 0.0);
    std::vector<double> income_sum(np, 0.0);
    std::vector<int> shifts(np, 0);
    for (const auto& t : outcome.trips)
        if (t.served) wait_sum[static_cast<std::size_t>(t.platform)] += t.wait_min;
    for (std::size_t i = 0; i < outcome.shifts.size(); ++i) {
        const auto k = static_cast<std::size_t>(outcome.shifts[i].platform);
        income_sum[k] += outcome.driver_net_hourly[i];
        ++shifts[k];
    }

    int travelers_rs = 0;
    int drivers_rs = 0;
    for (std::size_t k = 0; k < np; ++k) {
        auto& p = m.platforms[k];
        p.travelers_aware = tally.travelers_aware[k];
        p.travelers_chose = tally.travelers_chose[k];
        p.drivers_aware = tally.drivers_aware[k];
        p.drivers_chose = tally.drivers_chose[k];
        p.traveler_share = static_cast<double>(p.travelers_chose) / tally.n_travelers;
        p.driver_share = static_cast<double>(p.drivers_chose) / tally.n_drivers;
        if (k < outcome.platforms.size()) {
            const auto& ledger = outcome.platforms[k];
            p.trips_served = ledger.served;
            p.trips_unserved = ledger.unserved;
            p.gross_revenue = ledger.gross_revenue;
            p.commission_income = ledger.commission_income;
            p.subsidy_spend = ledger.subsidy_spend;
        }
        if (p.trips_served > 0) p.mean_wait_min = wait_sum[k] / p.trips_served;
        if (shifts[k] > 0) p.mean_driver_net_hourly = income_sum[k] / shifts[k];
        travelers_rs += p.travelers_chose;
        drivers_rs += p.drivers_chose;
    }
    m.pt_share = static_cast<double>(tally.n_travelers - travelers_rs) / tally.n_travelers;
    m.rw_share = static_cast<double>(tally.n_drivers - drivers_rs) / tally.n_drivers;
    return m;
}

/// Earliest day d >= window with population std-dev of series[d-window..d]
/// below tol, or nullopt.
inline std::optional<int> detect_stabilization(std::span<const double> series, int window, double tol)
{
    if (window < 1) throw std::invalid_argument("detect_stabilization: window must be >= 1");
    if (static_cast<std::size_t>(window) > series.size())
        throw std::invalid_argument("detect_stabilization: window longer than series");
    for (std::size_t d = static_cast<std::size_t>(window); d < series.size(); ++d) {
        const auto slice = series.subspan(d - static_cast<std::size_t>(window), static_cast<std::size_t>(window) + 1);
        double mean = 0.0;
        for (double x : slice) mean += x;
        mean /= static_cast<double>(slice.size());
        double var = 0.0;
        for (double x : slice) var += (x - mean) * (x - mean);
        var /= static_cast<double>(slice.size());
        if (std::sqrt(var) < tol) return static_cast<int>(d);
    }
    return std::nullopt;
}

/// Mean of the last `window` entries (all of them if shorter).
inline double trailing_mean(std::span<const double> series, std::size_t window)
{
    if (series.empty()) return 0.0;
    const std::size_t n = std::min(window, series.size());
    double s = 0.0;
    for (std::size_t i = series.size() - n; i < series.size(); ++i) s += series[i];
    return s / static_cast<double>(n);
}

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0; // 95% normal approximation, 0 for a single sample
};

inline MeanCi mean_ci(std::span<const double> xs)
{
    MeanCi r;
    if (xs.empty()) return r;
    for (double x : xs) r.mean += x;
    r.mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return r;
    double var = 0.0;
    for (double x : xs) var += (x - r.mean) * (x - r.mean);
    var /= static_cast<double>(xs.size() - 1);
    r.half_width = 1.96 * std::sqrt(var / static_cast<double>(xs.size()));
    return r;
}

} // namespace ridewar
