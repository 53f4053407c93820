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

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

/// Built-in experiment presets: a single platform against public transport,
/// and three two-platform competition scenarios.
namespace ridewar::presets {

enum class Scale { desk, full };

inline constexpr std::array<std::string_view, 4> kNames = {
    "monopoly-baseline", "symmetric-duopoly", "late-entry", "late-entry-subsidy"};

/// Launch plan for one platform.
struct LaunchPlan {
    int entry_day = 0;
    double discount = 0.40;
    int discount_days = 100;
    double marketing_intensity = 0.10;
    int marketing_days = 100;
    double commission = 0.10;
};

inline Strategy operating(const LaunchPlan& plan, bool discounted, bool marketing)
{
    Strategy s;
    s.active = true;
    s.commission_rate = plan.commission;
    s.discount_rate = discounted ? plan.discount : 0.0;
    s.marketing_intensity = marketing ? plan.marketing_intensity : 0.0;
    return s;
}

/// Splits [0, horizon) at entry, end of discount and end of campaign.
inline StrategySchedule make_schedule(std::string id, const LaunchPlan& plan, int horizon)
{
    StrategySchedule sched;
    sched.platform_id = std::move(id);
    const int entry = plan.entry_day;
    std::array<int, 4> cuts = {0, entry, entry + plan.discount_days, entry + plan.marketing_days};
    std::sort(cuts.begin(), cuts.end());
    int prev = 0;
    auto add = [&](int from, int to) {
        from = std::min(from, horizon);
        to = std::min(to, horizon);
        if (to <= from) return;
        ScheduleEntry e;
        e.first_day = from;
        e.end_day = to;
        if (from >= entry)
            e.strategy = operating(plan, from < entry + plan.discount_days, from < entry + plan.marketing_days);
        sched.entries.push_back(e);
    };
    for (int c : cuts) {
        add(prev, c);
        prev = std::max(prev, c);
    }
    add(prev, std::max(horizon, 1));
    return sched;
}

/// Behavioural and city defaults shared by every preset.
inline ScenarioConfig base_config(Scale scale)
{
    ScenarioConfig cfg;
    cfg.horizon_days = 365;
    if (scale == Scale::desk) {
        cfg.n_travelers = 400;
        cfg.n_drivers = 40;
    } else {
        cfg.n_travelers = 2000;
        cfg.n_drivers = 200;
    }
    return cfg;
}

inline ScenarioConfig preset(std::string_view name, Scale scale = Scale::desk)
{
    auto cfg = base_config(scale);
    const int h = cfg.horizon_days;
    LaunchPlan baseline;
    if (name == "monopoly-baseline") {
        cfg.schedules = {make_schedule("p1", baseline, h)};
    } else if (name == "symmetric-duopoly") {
        cfg.schedules = {make_schedule("p1", baseline, h), make_schedule("p2", baseline, h)};
    } else if (name == "late-entry") {
        LaunchPlan late = baseline;
        late.entry_day = 25;
        cfg.schedules = {make_schedule("p1", baseline, h), make_schedule("p2", late, h)};
    } else if (name == "late-entry-subsidy") {
        LaunchPlan late = baseline;
        late.entry_day = 25;
        late.discount = 0.80;
        late.discount_days = 200;
        cfg.schedules = {make_schedule("p1", baseline, h), make_schedule("p2", late, h)};
    } else {
        throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
    }
    return cfg;
}

} // namespace ridewar::presets
