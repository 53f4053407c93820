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
#include "ridewar/money.hpp"
#include "ridewar/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

/// One within-day market session in an abstract square city with Euclidean
/// distances and a flat vehicle speed. Requests are dispatched first come,
/// first served to a driver of the requested platform.
namespace ridewar::market {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

struct OdPair {
    Point origin;
    Point destination;
};

/// Origin and destination i.i.d. uniform over the city square.
inline OdPair draw_od(const ScenarioConfig& cfg, Rng& rng)
{
    const double side = cfg.city_side_km;
    OdPair od;
    do {
        od.origin = {rng.uniform(0, side), rng.uniform(0, side)};
        od.destination = {rng.uniform(0, side), rng.uniform(0, side)};
    } while (distance(od.origin, od.destination) <= 0.0);
    return od;
}

struct Participant {
    int traveler_id = 0;
    int platform = 0;
    std::optional<OdPair> od; // fixed commute; drawn from the demand stream if absent
};

struct TripRequest {
    int traveler_id = 0;
    int platform = 0;
    double request_time = 0.0; // minutes from session start
    Point origin;
    Point destination;
    double trip_distance = 0.0;
};

struct DriverShift {
    int driver_id = 0;
    int platform = 0;
    Point position;
    double busy_until = 0.0;     // minutes
    Cents accumulated_revenue;
    double accumulated_distance = 0.0; // km, pickup + paid
    int trips = 0;
};

struct Fare {
    Cents base;
    Cents fare_paid;
    Cents driver_revenue;
    Cents subsidy;
    Cents commission;
};

/// Base fare max(fare_per_km * d, min_fare); the traveler pays the discounted
/// fare, the platform absorbs the discount, and the driver is paid the base
/// fare minus commission.
inline Fare compute_fare(double trip_distance, const Strategy& s)
{
    Fare f;
    f.base = Cents::from_euros(std::max(s.fare_per_km * trip_distance, s.min_fare));
    f.fare_paid = scale(f.base, 1.0 - s.discount_rate);
    f.subsidy = f.base - f.fare_paid;
    f.commission = scale(f.base, s.commission_rate);
    f.driver_revenue = f.base - f.commission;
    return f;
}

struct TripOutcome {
    int traveler_id = 0;
    int platform = 0;
    bool served = false;
    int driver_id = -1;
    double trip_distance = 0.0;
    double pickup_distance = 0.0;
    double wait_min = 0.0;
    double in_vehicle_min = 0.0;
    Fare fare;
};

struct PlatformLedger {
    Cents gross_revenue;      // sum of base fares
    Cents fares_paid;
    Cents commission_income;
    Cents subsidy_spend;
    Cents driver_revenue;
    int served = 0;
    int unserved = 0;
};

struct DayOutcome {
    std::vector<TripOutcome> trips;      // in dispatch (request time) order
    std::vector<DriverShift> shifts;     // final state of every working driver
    std::vector<double> driver_net_hourly; // parallel to shifts
    std::vector<PlatformLedger> platforms;
};

/// One request per participant: request time uniform over the session and,
/// unless fixed, a fresh origin/destination. Sorted by request time.
inline std::vector<TripRequest> generate_demand(std::span<const Participant> participants,
                                                const ScenarioConfig& cfg, const RngStreams& streams, int day)
{
    std::vector<TripRequest> out;
    out.reserve(participants.size());
    for (const auto& p : participants) {
        Rng rng = streams.stream(StreamId::demand, static_cast<std::uint64_t>(day),
                                 static_cast<std::uint64_t>(p.traveler_id));
        TripRequest r;
        r.traveler_id = p.traveler_id;
        r.platform = p.platform;
        r.request_time = rng.uniform(0.0, cfg.shift_minutes());
        const OdPair od = p.od ? *p.od : draw_od(cfg, rng);
        r.origin = od.origin;
        r.destination = od.destination;
        r.trip_distance = distance(od.origin, od.destination);
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const TripRequest& a, const TripRequest& b) {
        if (a.request_time != b.request_time) return a.request_time < b.request_time;
        return a.traveler_id < b.traveler_id;
    });
    return out;
}

inline double travel_minutes(double km, double speed_kmh) { return km / speed_kmh * 60.0; }

/// Dispatch candidate for one request. Lower is better: earliest pickup,
/// then shorter pickup distance, then lower shift index.
struct Candidate {
    std::size_t shift = 0;
    double wait = std::numeric_limits<double>::infinity();
    double pickup_km = 0.0;
};

inline bool better(const Candidate& a, const Candidate& b)
{
    if (a.wait != b.wait) return a.wait < b.wait;
    if (a.pickup_km != b.pickup_km) return a.pickup_km < b.pickup_km;
    return a.shift < b.shift;
}

inline double driver_net_hourly_income(const DriverShift& shift, const ScenarioConfig& cfg)
{
    const Cents cost = Cents::from_euros(cfg.operating_cost_per_km * shift.accumulated_distance);
    return (shift.accumulated_revenue - cost).euros() / cfg.shift_hours;
}

/// Greedy FCFS matching. `requests` must be sorted by request time;
/// `strategies[k]` is platform k's strategy for the day.
inline DayOutcome match_day(std::span<const TripRequest> requests, std::vector<DriverShift> shifts,
                            std::span<const Strategy> strategies, const ScenarioConfig& cfg)
{
    DayOutcome out;
    out.platforms.resize(strategies.size());
    out.trips.reserve(requests.size());

    std::vector<std::vector<std::size_t>> by_platform(strategies.size());
    for (std::size_t i = 0; i < shifts.size(); ++i)
        by_platform.at(static_cast<std::size_t>(shifts[i].platform)).push_back(i);

    for (const auto& req : requests) {
        TripOutcome trip;
        trip.traveler_id = req.traveler_id;
        trip.platform = req.platform;
        trip.trip_distance = req.trip_distance;
        auto& ledger = out.platforms.at(static_cast<std::size_t>(req.platform));

        Candidate best;
        for (std::size_t idx : by_platform[static_cast<std::size_t>(req.platform)]) {
            const auto& s = shifts[idx];
            Candidate c;
            c.shift = idx;
            c.pickup_km = distance(s.position, req.origin);
            c.wait = std::max(0.0, s.busy_until - req.request_time) + travel_minutes(c.pickup_km, cfg.vehicle_speed_kmh);
            if (c.wait <= cfg.max_wait_min && better(c, best)) best = c;
        }

        if (std::isinf(best.wait)) {
            ++ledger.unserved;
            out.trips.push_back(trip);
            continue;
        }

        auto& s = shifts[best.shift];
        trip.served = true;
        trip.driver_id = s.driver_id;
        trip.pickup_distance = best.pickup_km;
        trip.wait_min = best.wait;
        trip.in_vehicle_min = travel_minutes(req.trip_distance, cfg.vehicle_speed_kmh);
        trip.fare = compute_fare(req.trip_distance, strategies[static_cast<std::size_t>(req.platform)]);

        s.busy_until = req.request_time + trip.wait_min + trip.in_vehicle_min;
        s.position = req.destination;
        s.accumulated_revenue += trip.fare.driver_revenue;
        s.accumulated_distance += best.pickup_km + req.trip_distance;
        ++s.trips;

        ++ledger.served;
        ledger.gross_revenue += trip.fare.base;
        ledger.fares_paid += trip.fare.fare_paid;
        ledger.commission_income += trip.fare.commission;
        ledger.subsidy_spend += trip.fare.subsidy;
        ledger.driver_revenue += trip.fare.driver_revenue;
        out.trips.push_back(trip);
    }

    out.driver_net_hourly.reserve(shifts.size());
    for (const auto& s : shifts) out.driver_net_hourly.push_back(driver_net_hourly_income(s, cfg));
    out.shifts = std::move(shifts);
    return out;
}

/// Monetised cost of a served trip: fare paid plus value of time spent
/// waiting and riding.
inline double traveler_generalized_cost(const TripOutcome& trip, const ScenarioConfig& cfg)
{
    return trip.fare.fare_paid.euros() + cfg.value_of_time * (trip.wait_min + trip.in_vehicle_min) / 60.0;
}

inline double pt_benchmark_cost(double trip_distance, const ScenarioConfig& cfg)
{
    return cfg.pt_fare + cfg.value_of_time * (cfg.pt_access_min + travel_minutes(trip_distance, cfg.pt_speed_kmh)) / 60.0;
}

} // namespace ridewar::market
