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

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

/// Scenario config files.
///
/// The format is a YAML subset: flat `key: value` pairs whose names match the
/// ScenarioConfig fields, three nested parameter sections, and a `schedules`
/// list. Keys that are left out keep their defaults. Unknown or duplicated
/// keys, wrong scalar types and syntax errors are reported with the 1-based
/// line they occur on.
///
///     horizon_days: 365
///     n_travelers: 400
///     choice_params:
///       theta: 0.15
///       rho: 0.4
///     schedules:
///       - platform_id: "p1"
///         entries:
///           - first_day: 0
///             end_day: 365
///             strategy:
///               active: true
///               discount_rate: 0.4
namespace ridewar::io {

class ConfigParseError : public std::runtime_error {
public:
    ConfigParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {}

    /// 1-based line of the offending text, 0 when not tied to one line.
    int line() const { return line_; }

private:
    int line_;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

inline std::string scalar(const YAML::Node& n, std::string_view key)
{
    if (!n.IsScalar()) throw ConfigParseError(line_of(n), "'" + std::string(key) + "' must be a scalar");
    return n.Scalar();
}

inline double parse_double(const YAML::Node& n, std::string_view key)
{
    const std::string s = scalar(n, key);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw ConfigParseError(line_of(n), "'" + std::string(key) + "' expects a number, got '" + s + "'");
    return v;
}

template <typename Int>
Int parse_int(const YAML::Node& n, std::string_view key)
{
    const std::string s = scalar(n, key);
    Int v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw ConfigParseError(line_of(n), "'" + std::string(key) + "' expects an integer, got '" + s + "'");
    return v;
}

inline bool parse_bool(const YAML::Node& n, std::string_view key)
{
    const std::string s = scalar(n, key);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigParseError(line_of(n), "'" + std::string(key) + "' expects true or false, got '" + s + "'");
}

/// Iterates a mapping, rejecting duplicate keys and handing each pair to
/// `field(key, value)`, which returns false for an unknown key.
template <typename Field>
void for_each_field(const YAML::Node& map, std::string_view section, Field field)
{
    if (!map.IsMap()) throw ConfigParseError(line_of(map), std::string(section) + " must be a mapping");
    std::set<std::string> seen;
    for (const auto& kv : map) {
        const std::string key = scalar(kv.first, "key");
        if (!seen.insert(key).second)
            throw ConfigParseError(line_of(kv.first), "duplicate key '" + key + "' in " + std::string(section));
        if (!field(key, kv.second))
            throw ConfigParseError(line_of(kv.first), "unknown key '" + key + "' in " + std::string(section));
    }
}

inline Strategy parse_strategy(const YAML::Node& node)
{
    Strategy s;
    for_each_field(node, "strategy", [&](const std::string& k, const YAML::Node& v) {
        if (k == "fare_per_km") s.fare_per_km = parse_double(v, k);
        else if (k == "min_fare") s.min_fare = parse_double(v, k);
        else if (k == "commission_rate") s.commission_rate = parse_double(v, k);
        else if (k == "discount_rate") s.discount_rate = parse_double(v, k);
        else if (k == "marketing_intensity") s.marketing_intensity = parse_double(v, k);
        else if (k == "active") s.active = parse_bool(v, k);
        else return false;
        return true;
    });
    return s;
}

inline ScheduleEntry parse_entry(const YAML::Node& node)
{
    ScheduleEntry e;
    for_each_field(node, "schedule entry", [&](const std::string& k, const YAML::Node& v) {
        if (k == "first_day") e.first_day = parse_int<int>(v, k);
        else if (k == "end_day") e.end_day = parse_int<int>(v, k);
        else if (k == "strategy") e.strategy = parse_strategy(v);
        else return false;
        return true;
    });
    return e;
}

inline StrategySchedule parse_schedule(const YAML::Node& node)
{
    StrategySchedule s;
    for_each_field(node, "schedule", [&](const std::string& k, const YAML::Node& v) {
        if (k == "platform_id") {
            s.platform_id = scalar(v, k);
        } else if (k == "entries") {
            if (!v.IsSequence()) throw ConfigParseError(line_of(v), "'entries' must be a list");
            for (const auto& e : v) s.entries.push_back(parse_entry(e));
        } else {
            return false;
        }
        return true;
    });
    return s;
}

} // namespace detail

/// Parses config text. Validation of value ranges is left to validate_config.
inline ScenarioConfig parse_config_text(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigParseError(e.mark.is_null() ? 0 : e.mark.line + 1, e.msg);
    }
    ScenarioConfig cfg;
    if (root.IsNull()) return cfg;

    using namespace detail;
    for_each_field(root, "config", [&](const std::string& k, const YAML::Node& v) {
        if (k == "horizon_days") cfg.horizon_days = parse_int<int>(v, k);
        else if (k == "n_travelers") cfg.n_travelers = parse_int<int>(v, k);
        else if (k == "n_drivers") cfg.n_drivers = parse_int<int>(v, k);
        else if (k == "city_side_km") cfg.city_side_km = parse_double(v, k);
        else if (k == "vehicle_speed_kmh") cfg.vehicle_speed_kmh = parse_double(v, k);
        else if (k == "pt_speed_kmh") cfg.pt_speed_kmh = parse_double(v, k);
        else if (k == "pt_access_min") cfg.pt_access_min = parse_double(v, k);
        else if (k == "pt_fare") cfg.pt_fare = parse_double(v, k);
        else if (k == "value_of_time") cfg.value_of_time = parse_double(v, k);
        else if (k == "reservation_wage") cfg.reservation_wage = parse_double(v, k);
        else if (k == "operating_cost_per_km") cfg.operating_cost_per_km = parse_double(v, k);
        else if (k == "shift_hours") cfg.shift_hours = parse_double(v, k);
        else if (k == "max_wait_min") cfg.max_wait_min = parse_double(v, k);
        else if (k == "awareness_daily_prob") cfg.awareness_daily_prob = parse_double(v, k);
        else if (k == "fixed_trip_geometry") cfg.fixed_trip_geometry = parse_bool(v, k);
        else if (k == "seed") cfg.seed = parse_int<std::uint64_t>(v, k);
        else if (k == "choice_params") {
            auto& c = cfg.choice_params;
            for_each_field(v, k, [&](const std::string& f, const YAML::Node& x) {
                if (f == "theta") c.theta = parse_double(x, f);
                else if (f == "rho") c.rho = parse_double(x, f);
                else if (f == "beta_experience") c.beta_experience = parse_double(x, f);
                else if (f == "beta_marketing") c.beta_marketing = parse_double(x, f);
                else if (f == "beta_wom") c.beta_wom = parse_double(x, f);
                else if (f == "asc") c.asc = parse_double(x, f);
                else if (f == "outside_option_utility") c.outside_option_utility = parse_double(x, f);
                else if (f == "driver_outside_option_utility") c.driver_outside_option_utility = parse_double(x, f);
                else return false;
                return true;
            });
        } else if (k == "learning_params") {
            auto& l = cfg.learning_params;
            for_each_field(v, k, [&](const std::string& f, const YAML::Node& x) {
                if (f == "alpha") l.alpha = parse_double(x, f);
                else if (f == "shape_beta") l.shape_beta = parse_double(x, f);
                else if (f == "u_init") l.u_init = parse_double(x, f);
                else return false;
                return true;
            });
        } else if (k == "social_params") {
            auto& s = cfg.social_params;
            for_each_field(v, k, [&](const std::string& f, const YAML::Node& x) {
                if (f == "wom_intensity") s.wom_intensity = parse_double(x, f);
                else if (f == "pairing") s.pairing = scalar(x, f);
                else if (f == "wom_notifies") s.wom_notifies = parse_bool(x, f);
                else return false;
                return true;
            });
        } else if (k == "schedules") {
            if (!v.IsSequence()) throw ConfigParseError(line_of(v), "'schedules' must be a list");
            for (const auto& s : v) cfg.schedules.push_back(parse_schedule(s));
        } else {
            return false;
        }
        return true;
    });
    return cfg;
}

inline ScenarioConfig load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read config file '" + path.string() + "'");
    return parse_config_text(buf.str());
}

namespace detail {

/// Shortest text that parses back to the same double.
inline std::string shortest(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::string quoted(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (u < 0x20 || u == 0x7f) {
            char esc[8];
            std::snprintf(esc, sizeof esc, "\\x%02x", u);
            out += esc;
        } else {
            out += c;
        }
    }
    return out + "\"";
}

} // namespace detail

/// Every field in a fixed order with shortest round-trip numbers. Parsing the
/// result yields a config equal to the input.
inline std::string canonical_text(const ScenarioConfig& cfg)
{
    using detail::quoted;
    using detail::shortest;
    std::string o;
    auto line = [&](std::string_view indent, std::string_view key, const std::string& value) {
        o.append(indent).append(key).append(": ").append(value).append("\n");
    };
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };

    line("", "horizon_days", std::to_string(cfg.horizon_days));
    line("", "n_travelers", std::to_string(cfg.n_travelers));
    line("", "n_drivers", std::to_string(cfg.n_drivers));
    line("", "city_side_km", shortest(cfg.city_side_km));
    line("", "vehicle_speed_kmh", shortest(cfg.vehicle_speed_kmh));
    line("", "pt_speed_kmh", shortest(cfg.pt_speed_kmh));
    line("", "pt_access_min", shortest(cfg.pt_access_min));
    line("", "pt_fare", shortest(cfg.pt_fare));
    line("", "value_of_time", shortest(cfg.value_of_time));
    line("", "reservation_wage", shortest(cfg.reservation_wage));
    line("", "operating_cost_per_km", shortest(cfg.operating_cost_per_km));
    line("", "shift_hours", shortest(cfg.shift_hours));
    line("", "max_wait_min", shortest(cfg.max_wait_min));
    line("", "awareness_daily_prob", shortest(cfg.awareness_daily_prob));
    line("", "fixed_trip_geometry", b(cfg.fixed_trip_geometry));
    line("", "seed", std::to_string(cfg.seed));

    const auto& c = cfg.choice_params;
    o += "choice_params:\n";
    line("  ", "theta", shortest(c.theta));
    line("  ", "rho", shortest(c.rho));
    line("  ", "beta_experience", shortest(c.beta_experience));
    line("  ", "beta_marketing", shortest(c.beta_marketing));
    line("  ", "beta_wom", shortest(c.beta_wom));
    line("  ", "asc", shortest(c.asc));
    line("  ", "outside_option_utility", shortest(c.outside_option_utility));
    line("  ", "driver_outside_option_utility", shortest(c.driver_outside_option_utility));

    const auto& l = cfg.learning_params;
    o += "learning_params:\n";
    line("  ", "alpha", shortest(l.alpha));
    line("  ", "shape_beta", shortest(l.shape_beta));
    line("  ", "u_init", shortest(l.u_init));

    const auto& s = cfg.social_params;
    o += "social_params:\n";
    line("  ", "wom_intensity", shortest(s.wom_intensity));
    line("  ", "pairing", detail::quoted(s.pairing));
    line("  ", "wom_notifies", b(s.wom_notifies));

    if (cfg.schedules.empty()) {
        o += "schedules: []\n";
        return o;
    }
    o += "schedules:\n";
    for (const auto& sched : cfg.schedules) {
        line("  - ", "platform_id", detail::quoted(sched.platform_id));
        if (sched.entries.empty()) {
            o += "    entries: []\n";
            continue;
        }
        o += "    entries:\n";
        for (const auto& e : sched.entries) {
            line("      - ", "first_day", std::to_string(e.first_day));
            line("        ", "end_day", std::to_string(e.end_day));
            o += "        strategy:\n";
            const auto& st = e.strategy;
            line("          ", "fare_per_km", shortest(st.fare_per_km));
            line("          ", "min_fare", shortest(st.min_fare));
            line("          ", "commission_rate", shortest(st.commission_rate));
            line("          ", "discount_rate", shortest(st.discount_rate));
            line("          ", "marketing_intensity", shortest(st.marketing_intensity));
            line("          ", "active", b(st.active));
        }
    }
    return o;
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Hash of the canonical text as 16 lowercase hex digits.
inline std::string config_hash(const ScenarioConfig& cfg)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_text(cfg))));
    return buf;
}

} // namespace ridewar::io
