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
#include <cmath>
#include <stdexcept>
#include <string>

/// S-shaped learning curves.
///
/// Each perceived-utility component lives in (0,1). A day's signal moves it
/// along a decreasing logistic curve: map the utility back to its cumulative
/// position, add alpha times the signal, and map forward again. Agents near
/// 0.5 move fastest; agents with extreme opinions barely move.
///
/// Sign convention throughout: a positive delta_u pushes the utility DOWN.
namespace ridewar::learning {

/// Utilities are kept in [kClamp, 1 - kClamp] so the inverse stays finite.
inline constexpr double kClamp = 1e-6;

enum class ComponentKind { experience, marketing, wom };

struct ComponentState {
    double utility = 0.5;
    ComponentKind kind = ComponentKind::experience;
};

struct Signal {
    double delta_u = 0.0;
    ComponentKind source = ComponentKind::experience;
};

inline double clamp_utility(double u) { return std::clamp(u, kClamp, 1.0 - kClamp); }

/// Cumulative position of utility u: ln(1/u - 1) / shape_beta, the exact
/// inverse of sigmoid() for every shape_beta.
inline double inverse_sigmoid(double u, double shape_beta)
{
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("inverse_sigmoid: utility " + std::to_string(u) + " outside (0,1)");
    // log((1-u)/u) keeps more precision than log(1/u - 1) near u = 1.
    return std::log((1.0 - u) / u) / shape_beta;
}

inline double accumulate(double cu, double alpha, double delta_u) { return cu + alpha * delta_u; }

/// 1 / (1 + exp(shape_beta * cu)), without clamping. Strictly decreasing in cu.
inline double raw_sigmoid(double cu, double shape_beta)
{
    const double z = shape_beta * cu;
    if (z >= 0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(z));
}

inline double sigmoid(double cu, double shape_beta) { return clamp_utility(raw_sigmoid(cu, shape_beta)); }

inline ComponentState update_component(ComponentState state, Signal signal, const LearningParams& params)
{
    if (signal.delta_u == 0.0) return state;
    const double cu = inverse_sigmoid(state.utility, params.shape_beta);
    state.utility = sigmoid(accumulate(cu, params.alpha, signal.delta_u), params.shape_beta);
    return state;
}

/// Delta u = (RW - E) / RW. Income below the reservation wage lowers the
/// driver's experienced utility.
inline Signal driver_experience_signal(double reservation_wage, double experienced_income)
{
    return {(reservation_wage - experienced_income) / reservation_wage, ComponentKind::experience};
}

/// Delta u = (cost - benchmark) / benchmark in generalized-cost space. A trip
/// dearer than the public-transport benchmark lowers the utility.
inline Signal traveler_experience_signal(double pt_benchmark, double experienced_cost)
{
    return {(experienced_cost - pt_benchmark) / pt_benchmark, ComponentKind::experience};
}

/// Signal for a ride request that found no driver.
inline constexpr double kUnservedSignal = 1.0;

inline Signal unserved_traveler_signal() { return {kUnservedSignal, ComponentKind::experience}; }

/// Exposure to an active campaign: intensity * (U^M - 1) <= 0.
inline Signal marketing_signal(double current_um, bool exposure, double intensity)
{
    if (!exposure || intensity <= 0.0) return {0.0, ComponentKind::marketing};
    return {intensity * (current_um - 1.0), ComponentKind::marketing};
}

/// Pulls the own word-of-mouth utility toward the peer's perceived utility.
inline Signal wom_signal(double own_uwom, double peer_perceived, double intensity, bool interact)
{
    if (!interact) return {0.0, ComponentKind::wom};
    return {intensity * (own_uwom - peer_perceived), ComponentKind::wom};
}

} // namespace ridewar::learning
