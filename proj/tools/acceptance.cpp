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
// Acceptance run: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Population experiments use the desk
// preset (400 travelers, 40 drivers, 365 days).

#include "oracles.hpp"
#include "ridewar/choice.hpp"
#include "ridewar/csv.hpp"
#include "ridewar/engine.hpp"
#include "ridewar/learning.hpp"
#include "ridewar/marketday.hpp"
#include "ridewar/metrics.hpp"
#include "ridewar/presets.hpp"
#include "ridewar/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

using namespace ridewar;

namespace {

constexpr std::size_t kTrailing = 50;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t last)
{
    std::vector<std::uint64_t> s(last - first + 1);
    std::iota(s.begin(), s.end(), first);
    return s;
}

Replications desk_replications(const char* scenario, std::uint64_t n_seeds)
{
    return run_replications(validate_config(presets::preset(scenario)), seed_range(1, n_seeds), workers());
}

/// Mean over seeds of each seed's trailing-window traveler share.
double mean_trailing_share(const Replications& rep, std::size_t platform)
{
    double s = 0.0;
    for (const auto& r : rep.runs) s += trailing_mean(r.traveler_share(platform), kTrailing);
    return s / static_cast<double>(rep.runs.size());
}

// 1 -------------------------------------------------------------------------

Outcome learning_numerics()
{
    using namespace learning;
    double round_trip = 0.0, fixed_point = 0.0;
    for (double b : {0.5, 1.0, 2.0, 5.0})
        for (int i = 0; i <= 100000; ++i) {
            const double u = kClamp + (1 - 2 * kClamp) * i / 100000.0;
            round_trip = std::max(round_trip, std::abs(sigmoid(inverse_sigmoid(u, b), b) - u));
        }
    for (double alpha : {0.5, 2.0})
        for (int i = 1; i < 10000; ++i) {
            const double u = i / 10000.0;
            const auto s = update_component({u, ComponentKind::experience}, {0.0, ComponentKind::experience},
                                            {alpha, 1.0, 0.5});
            fixed_point = std::max(fixed_point, std::abs(s.utility - u));
        }

    // |dU| over a utility grid must rise to a single peak and fall again; in
    // the small-step limit the peak sits at U = 0.5.
    bool unimodal = true;
    double small_step_peak = -1.0;
    const LearningParams lp;
    for (double delta : {-1.0, -0.3, -1e-3, 1e-3, 0.3, 1.0}) {
        std::vector<double> change;
        for (int i = 1; i < 1000; ++i) {
            const double u = i / 1000.0;
            change.push_back(std::abs(update_component({u}, {delta}, lp).utility - u));
        }
        const auto peak = std::max_element(change.begin(), change.end());
        unimodal = unimodal && std::is_sorted(change.begin(), peak + 1) &&
                   std::is_sorted(peak, change.end(), std::greater<>());
        if (std::abs(delta) < 0.01) {
            const double at = static_cast<double>(peak - change.begin() + 1) / 1000.0;
            small_step_peak = std::max(small_step_peak, std::abs(at - 0.5));
        }
    }
    Outcome o;
    o.pass = round_trip < 1e-12 && fixed_point < 1e-12 && unimodal && small_step_peak == 0.0;
    o.detail = fmt("round-trip %.2e, fixed point %.2e, unimodal %s, small-step peak offset %.3f", round_trip,
                   fixed_point, unimodal ? "yes" : "no", small_step_peak);
    return o;
}

// 2 -------------------------------------------------------------------------

Outcome signal_formulas()
{
    using namespace learning;
    struct Case {
        const char* name;
        double got;
        double want;
    };
    const Case cases[] = {
        {"driver at RW", driver_experience_signal(10.63, 10.63).delta_u, 0.0},
        {"driver zero income", driver_experience_signal(10.63, 0.0).delta_u, 1.0},
        {"driver double RW", driver_experience_signal(10.63, 21.26).delta_u, -1.0},
        {"traveler at benchmark", traveler_experience_signal(6.0, 6.0).delta_u, 0.0},
        {"traveler half cost", traveler_experience_signal(10.0, 5.0).delta_u, -0.5},
        {"unserved", unserved_traveler_signal().delta_u, 1.0},
        {"marketing saturated", marketing_signal(1.0, true, 0.1).delta_u, 0.0},
        {"marketing midpoint", marketing_signal(0.5, true, 0.1).delta_u, -0.05},
        {"marketing unexposed", marketing_signal(0.5, false, 0.1).delta_u, 0.0},
        {"wom agreement", wom_signal(0.6, 0.6, 0.1, true).delta_u, 0.0},
        {"wom better peer", wom_signal(0.4, 0.8, 0.1, true).delta_u, -0.04},
        {"wom worse peer", wom_signal(0.8, 0.4, 0.1, true).delta_u, 0.04},
        {"wom no interaction", wom_signal(0.8, 0.4, 0.1, false).delta_u, 0.0},
    };
    Outcome o;
    double worst = 0.0;
    for (const auto& c : cases) {
        const double err = std::abs(c.got - c.want);
        worst = std::max(worst, err);
        if (!(err <= 1e-12)) {
            o.pass = false;
            o.detail += std::string(c.name) + " off; ";
        }
    }
    o.detail += fmt("%zu cases, worst error %.2e", std::size(cases), worst);
    return o;
}

// 3 -------------------------------------------------------------------------

Outcome nested_logit()
{
    Rng r(2024);
    double norm = 0.0, collapse = 0.0, product = 0.0;
    bool gated = true;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + r.below(4);
        std::vector<double> u(n);
        std::vector<std::uint8_t> aware(n);
        for (std::size_t k = 0; k < n; ++k) {
            u[k] = r.uniform(0.01, 0.99);
            aware[k] = r.bernoulli(0.7);
        }
        const double out = r.uniform(0.05, 0.95);
        const double theta = r.uniform(0.05, 1.5);
        const double rho = r.uniform(0.0, 0.9);
        const double theta_n = theta * (1 - rho);
        const choice::ChoiceSet set{u, aware, out};

        const auto p = choice::choice_probabilities(set, theta, theta_n);
        norm = std::max(norm, std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
        for (std::size_t k = 0; k < n; ++k) gated = gated && (aware[k] || p[k] == 0.0);

        const auto ref = oracle::nested_logit(u, aware, out, theta, theta_n);
        for (std::size_t k = 0; k <= n; ++k) product = std::max(product, std::abs(p[k] - ref[k]));

        const auto flat = choice::choice_probabilities(set, theta, theta);
        const auto mnl = oracle::flat_logit(u, aware, out, theta);
        for (std::size_t k = 0; k <= n; ++k) collapse = std::max(collapse, std::abs(flat[k] - mnl[k]));
    }
    Outcome o;
    o.pass = norm < 1e-9 && gated && collapse < 1e-9 && product < 1e-12;
    o.detail = fmt("normalisation %.2e, awareness gate %s, rho=0 vs MNL %.2e, product vs oracle %.2e", norm,
                   gated ? "exact" : "LEAKS", collapse, product);
    return o;
}

// 4 -------------------------------------------------------------------------

Outcome matching_market()
{
    using namespace market;
    Outcome o;
    int mismatches = 0;
    {
        Rng r(404);
        ScenarioConfig cfg;
        cfg.max_wait_min = 8;
        cfg.city_side_km = 4;
        Strategy a, b;
        a.active = b.active = true;
        b.discount_rate = 0.4;
        const std::vector<Strategy> st = {a, b};
        for (int inst = 0; inst < 1000; ++inst) {
            std::vector<TripRequest> req;
            for (std::uint64_t i = 0, nr = 1 + r.below(4); i < nr; ++i) {
                const Point from{r.uniform(0, 4), r.uniform(0, 4)}, to{r.uniform(0, 4), r.uniform(0, 4)};
                req.push_back({static_cast<int>(i), static_cast<int>(r.below(2)), r.uniform(0, 15), from, to,
                               distance(from, to)});
            }
            std::sort(req.begin(), req.end(), [](auto& x, auto& y) { return x.request_time < y.request_time; });
            std::vector<DriverShift> shifts;
            for (std::uint64_t j = 0, nd = 1 + r.below(3); j < nd; ++j) {
                DriverShift s;
                s.driver_id = 100 + static_cast<int>(j);
                s.platform = static_cast<int>(r.below(2));
                s.position = {r.uniform(0, 4), r.uniform(0, 4)};
                shifts.push_back(s);
            }
            const auto got = match_day(req, shifts, st, cfg);
            const auto ref = oracle::brute_force_fcfs(req, shifts, cfg);
            for (std::size_t i = 0; i < ref.size(); ++i) {
                const auto& t = got.trips[i];
                const bool same = t.served == (ref[i].shift >= 0) &&
                                  (!t.served || (t.driver_id == shifts[static_cast<std::size_t>(ref[i].shift)].driver_id &&
                                                 std::abs(t.wait_min - ref[i].wait) < 1e-9));
                mismatches += !same;
            }
        }
    }

    // Full runs: money identities in cents, platform isolation, wait bound.
    long long money_breaks = 0, isolation_breaks = 0, wait_breaks = 0, days = 0;
    for (const char* name : {"monopoly-baseline", "late-entry-subsidy"}) {
        const auto v = validate_config(presets::preset(name));
        auto st = init_state(v);
        while (st.day < v->horizon_days) {
            const auto day = step_day(st, v);
            ++days;
            for (const auto& l : day.outcome.platforms) {
                money_breaks += (l.fares_paid + l.subsidy_spend) != l.gross_revenue;
                money_breaks += (l.driver_revenue + l.commission_income) != l.gross_revenue;
            }
            Cents shift_total, ledger_total;
            for (const auto& s : day.outcome.shifts) shift_total += s.accumulated_revenue;
            for (const auto& l : day.outcome.platforms) ledger_total += l.driver_revenue;
            money_breaks += shift_total != ledger_total;
            for (const auto& t : day.outcome.trips) {
                if (!t.served) continue;
                wait_breaks += t.wait_min > v->max_wait_min;
                const auto it = std::find_if(day.outcome.shifts.begin(), day.outcome.shifts.end(),
                                             [&](auto& s) { return s.driver_id == t.driver_id; });
                isolation_breaks += it == day.outcome.shifts.end() || it->platform != t.platform;
            }
        }
    }
    o.pass = mismatches == 0 && money_breaks == 0 && isolation_breaks == 0 && wait_breaks == 0;
    o.detail = fmt("brute-force mismatches %d/1000 instances, over %lld simulated days: money %lld, isolation %lld, "
                   "wait bound %lld violations",
                   mismatches, days, money_breaks, isolation_breaks, wait_breaks);
    return o;
}

// 5 -------------------------------------------------------------------------

Outcome monopoly_growth()
{
    const auto rep = desk_replications("monopoly-baseline", 20);
    int ok = 0, awareness_ok = 0, plateau_ok = 0, stable_ok = 0;
    std::vector<int> detected;
    for (const auto& r : rep.runs) {
        bool monotone = true;
        for (std::size_t d = 1; d < r.history.size(); ++d) {
            const auto &a = r.history[d - 1].platforms[0], &b = r.history[d].platforms[0];
            monotone = monotone && b.travelers_aware >= a.travelers_aware && b.drivers_aware >= a.drivers_aware;
        }
        // Everyone starts unaware, so the share before day 0 is exactly zero.
        // The first operating day must still sit far below the plateau.
        const auto share = r.traveler_share(0);
        const double plateau = trailing_mean(share, kTrailing);
        const bool rises = plateau > 0.05 && share.front() < 0.25 * plateau;
        const auto day = detect_stabilization(share, 50, 0.02);
        if (day) detected.push_back(*day);
        awareness_ok += monotone;
        plateau_ok += rises;
        stable_ok += day.has_value();
        ok += monotone && rises && day.has_value();
    }
    std::sort(detected.begin(), detected.end());
    Outcome o;
    o.pass = ok >= 18;
    o.detail = fmt("%d/20 seeds meet all parts (awareness monotone %d, rise to plateau %d, stabilised %d, median "
                   "detection day %d)",
                   ok, awareness_ok, plateau_ok, stable_ok, detected.empty() ? -1 : detected[detected.size() / 2]);
    return o;
}

// 6, 7 ----------------------------------------------------------------------

Outcome symmetric_duopoly()
{
    const auto rep = desk_replications("symmetric-duopoly", 20);
    const double p1 = mean_trailing_share(rep, 0), p2 = mean_trailing_share(rep, 1);
    return {std::abs(p1 - p2) < 0.05, fmt("trailing shares P1 %.4f, P2 %.4f, |diff| %.4f (< 0.05)", p1, p2,
                                          std::abs(p1 - p2))};
}

Outcome late_entry()
{
    const auto rep = desk_replications("late-entry", 20);
    const double p1 = mean_trailing_share(rep, 0), p2 = mean_trailing_share(rep, 1);
    return {p2 < 0.25 * p1, fmt("trailing shares P1 %.4f, P2 %.4f, ratio %.3f (< 0.25)", p1, p2, p2 / p1)};
}

// 8 -------------------------------------------------------------------------

Outcome subsidy_bubble()
{
    const auto cfg = presets::preset("late-entry-subsidy");
    // Discount window of the entrant, read from its schedule.
    int first = -1, end = -1;
    for (const auto& e : cfg.schedules[1].entries)
        if (e.strategy.active && e.strategy.discount_rate > 0) {
            if (first < 0) first = e.first_day;
            end = e.end_day;
        }
    const auto rep = run_replications(validate_config(cfg), seed_range(1, 20), workers());
    const auto& m1 = rep.traveler_share[0].mean;
    const auto& m2 = rep.traveler_share[1].mean;

    int lead_days = 0;
    double best_lead = -1.0;
    for (int d = first; d < end; ++d) {
        lead_days += m2[d] > m1[d];
        best_lead = std::max(best_lead, m2[d] - m1[d]);
    }
    const double at_end = m2[end - 1];
    double low = at_end;
    const int last = std::min<int>(end + 50, static_cast<int>(m2.size()) - 1);
    for (int d = end; d <= last; ++d) low = std::min(low, m2[d]);
    const double drop = at_end > 0 ? 1.0 - low / at_end : 0.0;
    const double trailing = mean_trailing_share(rep, 1);

    Outcome o;
    o.pass = lead_days > 0 && drop >= 0.20 && trailing > 0.0;
    o.detail = fmt("(a) P2 ahead on %d days of [%d,%d), max lead %.4f; (b) drop %.1f%% by day %d (>= 20%%); "
                   "(c) trailing P2 %.4f (> 0)",
                   lead_days, first, end, best_lead, 100 * drop, last, trailing);
    return o;
}

// 9 -------------------------------------------------------------------------

Outcome correlation()
{
    const std::vector<double> rhos = {0.0, 0.2, 0.4, 0.6, 0.8};
    const auto sweep = correlation_sweep(presets::preset("symmetric-duopoly"), rhos, seed_range(1, 10), workers());
    int violations = 0;
    bool within = true;
    std::string seq;
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        const auto& p = sweep.points[i];
        seq += fmt("%s%.3f(+-%.3f)", i ? " " : "", p.total_rs_share, p.half_width);
        if (i == 0) continue;
        const auto& prev = sweep.points[i - 1];
        const double rise = p.total_rs_share - prev.total_rs_share;
        if (rise > 0) {
            ++violations;
            within = within && rise <= std::min(p.half_width, prev.half_width);
        }
    }
    return {violations == 0 || (violations == 1 && within),
            fmt("rho 0..0.8: %s; %d rise(s)", seq.c_str(), violations)};
}

// 10 ------------------------------------------------------------------------

Outcome determinism_and_speed()
{
    const auto v = validate_config(presets::preset("late-entry-subsidy"));
    const bool repeat = io::daily_csv(run(v).history) == io::daily_csv(run(v).history);

    const auto seeds = seed_range(1, 6);
    const auto serial = run_replications(v, seeds, 1);
    const auto threaded = run_replications(v, seeds, 4);
    bool threads_equal = io::aggregate_csv(serial) == io::aggregate_csv(threaded);
    for (std::size_t i = 0; i < seeds.size(); ++i)
        threads_equal = threads_equal && io::daily_csv(serial.runs[i].history) == io::daily_csv(threaded.runs[i].history);

    double slowest = 0.0;
    for (auto name : presets::kNames) {
        const auto pv = validate_config(presets::preset(name, presets::Scale::full));
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = run(pv);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.history.size() != 365) return {false, "full-scale run has the wrong length"};
        slowest = std::max(slowest, s);
    }
    return {repeat && threads_equal && slowest < 5.0,
            fmt("repeat runs identical %s, 1 vs 4 threads identical %s, slowest full-scale run %.2f s (< 5 s)",
                repeat ? "yes" : "no", threads_equal ? "yes" : "no", slowest)};
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        Outcome (*check)();
    };
    const Criterion criteria[] = {
        {"learning numerics", learning_numerics},
        {"signal formulas", signal_formulas},
        {"nested logit", nested_logit},
        {"matching market", matching_market},
        {"monopoly growth", monopoly_growth},
        {"symmetric duopoly shares", symmetric_duopoly},
        {"late entry fails", late_entry},
        {"subsidy bubble", subsidy_bubble},
        {"correlation sweep", correlation},
        {"determinism and speed", determinism_and_speed},
    };
    int failed = 0;
    int id = 0;
    for (const auto& c : criteria) {
        ++id;
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %2d %s  %-26s %s\n", id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", id - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
