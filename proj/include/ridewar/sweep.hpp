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
#include "ridewar/engine.hpp"
#include "ridewar/metrics.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ridewar {

/// Trailing window (days) over which the equilibrium share is averaged.
inline constexpr std::size_t kEquilibriumWindow = 50;

struct SweepSummary {
    double param = 0.0;
    double total_rs_share = 0.0; // mean over seeds of the trailing-window mean
    double half_width = 0.0;     // 95% interval across seeds
};

struct SweepResult {
    std::string param_name;
    std::vector<SweepSummary> points;
    SweepSummary monopoly; // first platform alone over the same seeds
};

/// Equilibrium total ride-sourcing share of a batch of runs.
inline SweepSummary equilibrium_summary(double param, const Replications& rep)
{
    std::vector<double> per_seed;
    per_seed.reserve(rep.runs.size());
    for (const auto& r : rep.runs) {
        const auto s = r.total_rs_share();
        per_seed.push_back(trailing_mean(s, kEquilibriumWindow));
    }
    const auto ci = mean_ci(per_seed);
    return {param, ci.mean, ci.half_width};
}

/// The base scenario reduced to its first platform.
inline ScenarioConfig monopoly_reference(ScenarioConfig cfg)
{
    if (cfg.schedules.size() > 1) cfg.schedules.resize(1);
    return cfg;
}

using ParamSetter = std::function<void(ScenarioConfig&, double)>;

/// Runs `seeds` replications for every value; the monopoly reference uses
/// the base config's first schedule and the unmodified parameters.
inline SweepResult parameter_sweep(const ScenarioConfig& base, std::string name, const ParamSetter& set,
                                   std::span<const double> values, const std::vector<std::uint64_t>& seeds,
                                   unsigned threads = 1)
{
    SweepResult out;
    out.param_name = std::move(name);
    for (double v : values) {
        auto cfg = base;
        set(cfg, v);
        out.points.push_back(equilibrium_summary(v, run_replications(validate_config(std::move(cfg)), seeds, threads)));
    }
    out.monopoly = equilibrium_summary(0.0, run_replications(validate_config(monopoly_reference(base)), seeds, threads));
    return out;
}

inline SweepResult correlation_sweep(const ScenarioConfig& base, std::span<const double> rho_values,
                                     const std::vector<std::uint64_t>& seeds, unsigned threads = 1)
{
    for (double r : rho_values)
        if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("correlation_sweep: rho " + std::to_string(r) + " outside [0,1)");
    return parameter_sweep(
        base, "rho", [](ScenarioConfig& c, double v) { c.choice_params.rho = v; }, rho_values, seeds, threads);
}

} // namespace ridewar
