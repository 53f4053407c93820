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

#include "ridewar/config_io.hpp"
#include "ridewar/engine.hpp"
#include "ridewar/metrics.hpp"
#include "ridewar/sweep.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

/// CSV artifacts. Numbers are printed with std::to_chars, so output does not
/// depend on the C or C++ locale. Rows end in '\n'.
namespace ridewar::io {

/// Bumped whenever a column is added, removed or reformatted.
inline constexpr const char* kDailySchemaVersion = "ridewar-daily/1";

inline constexpr int kShareDecimals = 6;
inline constexpr int kMinutesDecimals = 6;
inline constexpr int kMoneyDecimals = 2;

/// Fixed-point text. Negative zero prints without a sign.
inline std::string fixed(double v, int decimals)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) throw std::runtime_error("fixed: value does not fit");
    std::string s(buf, ptr);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

inline std::string fixed(const std::optional<double>& v, int decimals) { return v ? fixed(*v, decimals) : std::string(); }

/// Per-platform column stems, in output order.
inline const std::vector<std::string>& daily_platform_columns()
{
    static const std::vector<std::string> cols = {
        "travelers_aware", "travelers_chose", "trips_served",           "trips_unserved",
        "traveler_share",  "drivers_aware",   "drivers_chose",          "driver_share",
        "mean_wait_min",   "mean_driver_net_hourly", "gross_revenue",   "commission_income",
        "subsidy_spend"};
    return cols;
}

inline std::string daily_header(std::size_t n_platforms)
{
    std::string h = "day";
    for (std::size_t k = 0; k < n_platforms; ++k)
        for (const auto& c : daily_platform_columns()) h += "," + c + "_p" + std::to_string(k + 1);
    return h + ",pt_share,rw_share";
}

inline void render_daily_csv(const std::vector<DayMetrics>& history, std::ostream& out)
{
    if (history.empty()) throw std::invalid_argument("daily CSV needs a non-empty history");
    const std::size_t np = history.front().platforms.size();
    out << daily_header(np) << '\n';
    for (const auto& d : history) {
        out << d.day;
        for (const auto& p : d.platforms) {
            out << ',' << p.travelers_aware << ',' << p.travelers_chose << ',' << p.trips_served << ','
                << p.trips_unserved << ',' << fixed(p.traveler_share, kShareDecimals) << ',' << p.drivers_aware << ','
                << p.drivers_chose << ',' << fixed(p.driver_share, kShareDecimals) << ','
                << fixed(p.mean_wait_min, kMinutesDecimals) << ','
                << fixed(p.mean_driver_net_hourly, kMoneyDecimals) << ',' << p.gross_revenue.to_string() << ','
                << p.commission_income.to_string() << ',' << p.subsidy_spend.to_string();
        }
        out << ',' << fixed(d.pt_share, kShareDecimals) << ',' << fixed(d.rw_share, kShareDecimals) << '\n';
    }
}

inline std::string daily_csv(const std::vector<DayMetrics>& history)
{
    std::ostringstream s;
    render_daily_csv(history, s);
    return s.str();
}

inline std::string aggregate_header(std::size_t n_platforms)
{
    std::string h = "day";
    for (std::size_t k = 0; k < n_platforms; ++k) {
        const std::string p = "_p" + std::to_string(k + 1);
        h += ",traveler_share_mean" + p + ",traveler_share_ci" + p + ",driver_share_mean" + p + ",driver_share_ci" + p;
    }
    return h + ",pt_share_mean,pt_share_ci,rw_share_mean,rw_share_ci,total_rs_share_mean,total_rs_share_ci";
}

/// Per-day mean and 95% half-width across replications.
inline std::string aggregate_csv(const Replications& rep)
{
    if (rep.runs.empty() || rep.total_rs_share.mean.empty())
        throw std::invalid_argument("aggregate CSV needs at least one non-empty run");
    std::ostringstream out;
    const std::size_t np = rep.traveler_share.size();
    out << aggregate_header(np) << '\n';
    auto pair = [&](const SeriesStats& s, std::size_t d) {
        out << ',' << fixed(s.mean[d], kShareDecimals) << ',' << fixed(s.half_width[d], kShareDecimals);
    };
    for (std::size_t d = 0; d < rep.total_rs_share.mean.size(); ++d) {
        out << rep.runs.front().history[d].day;
        for (std::size_t k = 0; k < np; ++k) {
            pair(rep.traveler_share[k], d);
            pair(rep.driver_share[k], d);
        }
        pair(rep.pt_share, d);
        pair(rep.rw_share, d);
        pair(rep.total_rs_share, d);
        out << '\n';
    }
    return out.str();
}

/// One row per parameter value. The monopoly reference goes to the manifest.
inline std::string sweep_csv(const SweepResult& sweep)
{
    std::ostringstream out;
    out << sweep.param_name << ",total_rs_share,ci_half_width\n";
    for (const auto& p : sweep.points)
        out << detail::shortest(p.param) << ',' << fixed(p.total_rs_share, kShareDecimals) << ','
            << fixed(p.half_width, kShareDecimals) << '\n';
    return out.str();
}

/// Writes `content` to `path`, replacing any existing file.
inline void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("write to '" + path.string() + "' failed");
}

/// Renders first, so an empty history leaves no file behind.
inline void write_daily_csv(const std::vector<DayMetrics>& history, const std::filesystem::path& path)
{
    write_text_file(path, daily_csv(history));
}

} // namespace ridewar::io
