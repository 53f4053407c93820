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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ridewar {

/// Daily control levers of one platform.
struct Strategy {
    double fare_per_km = 1.2;           // EUR/km
    double min_fare = 2.0;              // EUR
    double commission_rate = 0.10;
    double discount_rate = 0.0;
    double marketing_intensity = 0.0;   // daily exposure probability of the campaign
    bool active = false;

    bool campaign_active() const { return active && marketing_intensity > 0.0; }

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Strategy in force on days [first_day, end_day).
struct ScheduleEntry {
    int first_day = 0;
    int end_day = 0;
    Strategy strategy;

    friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct StrategySchedule {
    std::string platform_id;
    std::vector<ScheduleEntry> entries;

    /// First day on which the platform operates, or -1 if it never does.
    int entry_day() const
    {
        for (const auto& e : entries)
            if (e.strategy.active) return e.first_day;
        return -1;
    }

    friend bool operator==(const StrategySchedule&, const StrategySchedule&) = default;
};

struct ChoiceParams {
    double theta = 0.15;                   // upper-level scale
    double rho = 0.4;                      // correlation inside the ride-sourcing nest
    double beta_experience = 0.7;
    double beta_marketing = 0.1;
    double beta_wom = 0.2;
    double asc = 0.0;                      // added to every platform alternative
    double outside_option_utility = 0.5;   // public transport, travelers
    double driver_outside_option_utility = 0.5; // reservation-wage work, drivers

    double theta_n() const { return theta * (1.0 - rho); }

    friend bool operator==(const ChoiceParams&, const ChoiceParams&) = default;
};

struct LearningParams {
    double alpha = 2.0;
    double shape_beta = 1.0;
    double u_init = 0.5;

    friend bool operator==(const LearningParams&, const LearningParams&) = default;
};

struct SocialParams {
    double wom_intensity = 0.1;
    std::string pairing = "random_mixing";
    bool wom_notifies = false;

    friend bool operator==(const SocialParams&, const SocialParams&) = default;
};

struct ScenarioConfig {
    int horizon_days = 365;
    int n_travelers = 2000;
    int n_drivers = 200;
    double city_side_km = 10.0;
    double vehicle_speed_kmh = 36.0;
    double pt_speed_kmh = 18.0;
    double pt_access_min = 10.0;
    double pt_fare = 3.0;
    double value_of_time = 10.63;       // EUR/h
    double reservation_wage = 10.63;    // EUR/h
    double operating_cost_per_km = 0.25;
    double shift_hours = 4.0;
    double max_wait_min = 30.0;
    double awareness_daily_prob = 0.05;
    // Each traveler keeps one origin/destination pair for the whole run
    // (drawn i.i.d. at initialisation); false redraws it every day.
    bool fixed_trip_geometry = true;
    std::uint64_t seed = 42;
    std::vector<StrategySchedule> schedules;
    ChoiceParams choice_params;
    LearningParams learning_params;
    SocialParams social_params;

    std::size_t n_platforms() const { return schedules.size(); }
    double shift_minutes() const { return shift_hours * 60.0; }

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Thrown by validate_config; carries every violated invariant.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues))
    {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v)
    {
        std::string s = "invalid config:";
        for (const auto& i : v) s += " " + i + ";";
        return s;
    }
    std::vector<std::string> issues_;
};

/// Proof that a ScenarioConfig passed validate_config. The engine only
/// accepts this type.
class ValidatedConfig {
public:
    const ScenarioConfig& config() const { return cfg_; }
    const ScenarioConfig* operator->() const { return &cfg_; }
    double theta_n() const { return theta_n_; }

private:
    friend ValidatedConfig validate_config(ScenarioConfig cfg);
    ValidatedConfig(ScenarioConfig cfg, double theta_n) : cfg_(std::move(cfg)), theta_n_(theta_n) {}

    ScenarioConfig cfg_;
    double theta_n_;
};

namespace detail {

inline bool is_fraction(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

inline void check_strategy(const Strategy& s, const std::string& where, std::vector<std::string>& out)
{
    if (!(std::isfinite(s.fare_per_km) && s.fare_per_km >= 0)) out.push_back(where + ": fare_per_km must be >= 0");
    if (!(std::isfinite(s.min_fare) && s.min_fare >= 0)) out.push_back(where + ": min_fare must be >= 0");
    if (!is_fraction(s.commission_rate)) out.push_back(where + ": commission_rate outside [0,1]");
    if (!is_fraction(s.discount_rate)) out.push_back(where + ": discount_rate outside [0,1]");
    if (!is_fraction(s.marketing_intensity)) out.push_back(where + ": marketing_intensity outside [0,1]");
}

} // namespace detail

/// Checks every invariant at once; throws ConfigError listing all of them.
inline ValidatedConfig validate_config(ScenarioConfig cfg)
{
    std::vector<std::string> issues;
    auto positive = [&](double v, const char* name) {
        if (!(std::isfinite(v) && v > 0)) issues.push_back(std::string(name) + " must be > 0");
    };
    auto non_negative = [&](double v, const char* name) {
        if (!(std::isfinite(v) && v >= 0)) issues.push_back(std::string(name) + " must be >= 0");
    };

    if (cfg.horizon_days < 0) issues.push_back("horizon_days must be >= 0");
    if (cfg.n_travelers <= 0) issues.push_back("n_travelers must be > 0");
    if (cfg.n_drivers <= 0) issues.push_back("n_drivers must be > 0");
    positive(cfg.city_side_km, "city_side_km");
    positive(cfg.vehicle_speed_kmh, "vehicle_speed_kmh");
    positive(cfg.pt_speed_kmh, "pt_speed_kmh");
    non_negative(cfg.pt_access_min, "pt_access_min");
    non_negative(cfg.pt_fare, "pt_fare");
    non_negative(cfg.value_of_time, "value_of_time");
    positive(cfg.reservation_wage, "reservation_wage");
    non_negative(cfg.operating_cost_per_km, "operating_cost_per_km");
    positive(cfg.shift_hours, "shift_hours");
    non_negative(cfg.max_wait_min, "max_wait_min");
    if (!detail::is_fraction(cfg.awareness_daily_prob)) issues.push_back("awareness_daily_prob outside [0,1]");
    if (cfg.pt_fare == 0 && cfg.value_of_time == 0) issues.push_back("public transport benchmark cost is zero");

    const auto& cp = cfg.choice_params;
    positive(cp.theta, "theta");
    if (!(std::isfinite(cp.rho) && cp.rho >= 0.0 && cp.rho < 1.0)) issues.push_back("rho must lie in [0,1)");
    if (!(cp.beta_experience > 0 && cp.beta_marketing > 0 && cp.beta_wom > 0))
        issues.push_back("utility weights must be strictly positive");
    if (std::abs(cp.beta_experience + cp.beta_marketing + cp.beta_wom - 1.0) > 1e-9)
        issues.push_back("utility weights sum != 1");
    if (!std::isfinite(cp.asc)) issues.push_back("asc must be finite");
    if (!(cp.outside_option_utility > 0 && cp.outside_option_utility < 1))
        issues.push_back("outside_option_utility must lie in (0,1)");
    if (!(cp.driver_outside_option_utility > 0 && cp.driver_outside_option_utility < 1))
        issues.push_back("driver_outside_option_utility must lie in (0,1)");

    const auto& lp = cfg.learning_params;
    positive(lp.alpha, "alpha");
    positive(lp.shape_beta, "shape_beta");
    if (!(lp.u_init > 0 && lp.u_init < 1)) issues.push_back("u_init must lie in (0,1)");

    const auto& sp = cfg.social_params;
    if (!detail::is_fraction(sp.wom_intensity)) issues.push_back("wom_intensity outside [0,1]");
    if (sp.pairing != "random_mixing") issues.push_back("pairing '" + sp.pairing + "' is not supported (random_mixing)");

    if (cfg.schedules.empty()) issues.push_back("at least one platform schedule is required");
    std::set<std::string> ids;
    for (const auto& sched : cfg.schedules) {
        const std::string where = "schedule '" + sched.platform_id + "'";
        if (sched.platform_id.empty()) issues.push_back("schedule with empty platform_id");
        if (!ids.insert(sched.platform_id).second) issues.push_back(where + ": duplicate platform_id");
        if (sched.entries.empty()) {
            issues.push_back(where + ": no entries");
            continue;
        }
        auto entries = sched.entries;
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first_day < b.first_day; });
        int cursor = 0;
        for (const auto& e : entries) {
            const std::string at = where + " days " + std::to_string(e.first_day) + ".." + std::to_string(e.end_day);
            if (e.end_day <= e.first_day) issues.push_back(at + ": empty or reversed day range");
            if (e.first_day < cursor) issues.push_back(at + ": overlapping day ranges");
            else if (e.first_day > cursor) issues.push_back(at + ": gap before day " + std::to_string(e.first_day));
            cursor = std::max(cursor, e.end_day);
            detail::check_strategy(e.strategy, at, issues);
        }
        if (cursor < cfg.horizon_days) issues.push_back(where + ": does not cover the horizon");
    }

    if (!issues.empty()) throw ConfigError(std::move(issues));

    for (auto& sched : cfg.schedules)
        std::sort(sched.entries.begin(), sched.entries.end(),
                  [](const auto& a, const auto& b) { return a.first_day < b.first_day; });
    const double theta_n = cfg.choice_params.theta_n();
    return ValidatedConfig(std::move(cfg), theta_n);
}

/// The strategy in force on `day`. Throws std::out_of_range outside the
/// schedule's covered days.
inline const Strategy& strategy_for_day(const StrategySchedule& schedule, int day)
{
    for (const auto& e : schedule.entries)
        if (day >= e.first_day && day < e.end_day) return e.strategy;
    throw std::out_of_range("day " + std::to_string(day) + " not covered by schedule '" + schedule.platform_id + "'");
}

} // namespace ridewar
