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
// Command-line front end: single runs, replications, parameter sweeps and
// the built-in scenario presets.

#include "ridewar/config_io.hpp"
#include "ridewar/csv.hpp"
#include "ridewar/engine.hpp"
#include "ridewar/manifest.hpp"
#include "ridewar/presets.hpp"
#include "ridewar/sweep.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace ridewar;

namespace {

enum ExitCode { kOk = 0, kRuntime = 1, kConfig = 2, kIo = 3 };

/// Errors that carry their exit code. Printed as one line on stderr.
struct CliError : std::runtime_error {
    CliError(ExitCode c, const std::string& kind, const std::string& msg)
        : std::runtime_error(msg), code(c), kind(kind)
    {}
    ExitCode code;
    std::string kind;
};

[[noreturn]] void config_error(const std::string& msg) { throw CliError(kConfig, "config", msg); }

std::string one_line(std::string s)
{
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

template <typename T>
std::optional<T> parse_number(const std::string& s)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

/// "1,2,5" or ranges such as "1-20", mixed freely.
std::vector<std::uint64_t> parse_seed_list(const std::string& text)
{
    std::vector<std::uint64_t> seeds;
    for (const auto& part : split(text, ',')) {
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
            const auto v = parse_number<std::uint64_t>(part);
            if (!v) config_error("bad seed '" + part + "'");
            seeds.push_back(*v);
            continue;
        }
        const auto lo = parse_number<std::uint64_t>(part.substr(0, dash));
        const auto hi = parse_number<std::uint64_t>(part.substr(dash + 1));
        if (!lo || !hi || *hi < *lo || *hi - *lo > 100000) config_error("bad seed range '" + part + "'");
        for (std::uint64_t s = *lo; s <= *hi; ++s) seeds.push_back(s);
    }
    return seeds;
}

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> values;
    for (const auto& part : split(text, ',')) {
        const auto v = parse_number<double>(part);
        if (!v) config_error("bad value '" + part + "'");
        values.push_back(*v);
    }
    return values;
}

unsigned worker_threads()
{
    if (const char* env = std::getenv("RIDEWAR_THREADS")) {
        const auto v = parse_number<unsigned>(env);
        if (!v || *v < 1) config_error("RIDEWAR_THREADS must be an integer >= 1, got '" + std::string(env) + "'");
        return *v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Source {
    std::string scenario;
    std::string config_path;
    std::string scale = "desk";
    std::optional<std::uint64_t> seed;
    std::string out = ".";

    void add_to(CLI::App& app, bool with_seed)
    {
        auto* s = app.add_option("--scenario", scenario, "built-in preset name (see `scenarios`)");
        auto* c = app.add_option("--config", config_path, "scenario config file");
        s->excludes(c);
        app.add_option("--scale", scale, "preset population: desk (400/40) or full (2000/200)")
            ->check(CLI::IsMember({"desk", "full"}));
        if (with_seed) app.add_option("--seed", seed, "overrides the config seed");
        app.add_option("--out", out, "output directory");
    }

    ScenarioConfig load(const std::string& fallback_scenario = "") const
    {
        ScenarioConfig cfg;
        if (!config_path.empty()) {
            try {
                cfg = io::load_config_file(config_path);
            } catch (const io::IoError& e) {
                throw CliError(kConfig, "config", e.what());
            } catch (const io::ConfigParseError& e) {
                throw CliError(kConfig, "config", config_path + ": " + e.what());
            }
        } else {
            const std::string name = scenario.empty() ? fallback_scenario : scenario;
            if (name.empty()) config_error("one of --scenario or --config is required");
            try {
                cfg = presets::preset(name, scale == "full" ? presets::Scale::full : presets::Scale::desk);
            } catch (const std::invalid_argument& e) {
                config_error(e.what());
            }
        }
        if (seed) cfg.seed = *seed;
        return cfg;
    }

    fs::path out_dir() const
    {
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec) throw CliError(kIo, "io", "cannot create output directory '" + out + "': " + ec.message());
        return fs::path(out);
    }
};

ValidatedConfig validated(ScenarioConfig cfg)
{
    try {
        return validate_config(std::move(cfg));
    } catch (const ConfigError& e) {
        config_error(e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

io::RunManifest manifest_for(const std::string& command, const ValidatedConfig& vcfg)
{
    io::RunManifest m;
    m.command = command;
    m.config_text = io::canonical_text(vcfg.config());
    m.config_hash = io::config_hash(vcfg.config());
    return m;
}

using Setter = void (*)(ScenarioConfig&, double);

const std::map<std::string, Setter>& sweep_params()
{
    static const std::map<std::string, Setter> params = {
        {"rho", [](ScenarioConfig& c, double v) { c.choice_params.rho = v; }},
        {"theta", [](ScenarioConfig& c, double v) { c.choice_params.theta = v; }},
        {"alpha", [](ScenarioConfig& c, double v) { c.learning_params.alpha = v; }},
        {"wom_intensity", [](ScenarioConfig& c, double v) { c.social_params.wom_intensity = v; }},
        {"awareness_daily_prob", [](ScenarioConfig& c, double v) { c.awareness_daily_prob = v; }},
    };
    return params;
}

int cmd_run(const Source& src)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto vcfg = validated(src.load());
    const auto dir = src.out_dir();
    const auto result = run(vcfg);
    if (result.history.empty()) config_error("horizon_days is 0; nothing to write");
    io::write_daily_csv(result.history, dir / "daily.csv");

    auto m = manifest_for("run", vcfg);
    m.seeds = {vcfg->seed};
    m.artifacts = {"daily.csv"};
    m.wall_clock_s = seconds_since(t0);
    io::write_manifest(m, dir / "manifest.json");
    std::cout << (dir / "daily.csv").string() << '\n';
    return kOk;
}

int cmd_replicate(const Source& src, const std::string& seed_text)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto vcfg = validated(src.load());
    const auto seeds = parse_seed_list(seed_text);
    if (vcfg->horizon_days == 0) config_error("horizon_days is 0; nothing to write");
    const unsigned threads = worker_threads();
    const auto dir = src.out_dir();
    const auto rep = run_replications(vcfg, seeds, threads);

    auto m = manifest_for("replicate", vcfg);
    for (const auto& r : rep.runs) {
        const std::string name = "daily_seed" + std::to_string(r.seed) + ".csv";
        io::write_daily_csv(r.history, dir / name);
        m.seeds.push_back(r.seed);
        m.artifacts.push_back(name);
    }
    io::write_text_file(dir / "aggregate.csv", io::aggregate_csv(rep));
    m.artifacts.push_back("aggregate.csv");
    m.wall_clock_s = seconds_since(t0);
    io::write_manifest(m, dir / "manifest.json");
    std::cout << (dir / "aggregate.csv").string() << '\n';
    return kOk;
}

int cmd_sweep(const Source& src, const std::string& param, const std::string& value_text, const std::string& seed_text)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto it = sweep_params().find(param);
    if (it == sweep_params().end()) config_error("unsupported sweep parameter '" + param + "'");
    const auto vcfg = validated(src.load("symmetric-duopoly"));
    const auto values = parse_values(value_text);
    const auto seeds = parse_seed_list(seed_text);
    // Fail on a bad grid point before any simulation starts.
    for (double v : values) {
        auto probe = vcfg.config();
        it->second(probe, v);
        validated(std::move(probe));
    }
    const unsigned threads = worker_threads();
    const auto dir = src.out_dir();
    const auto sweep = parameter_sweep(vcfg.config(), param, it->second, values, seeds, threads);
    io::write_text_file(dir / "sweep.csv", io::sweep_csv(sweep));

    auto m = manifest_for("sweep", vcfg);
    m.seeds = seeds;
    m.artifacts = {"sweep.csv"};
    m.extra["param"] = param;
    m.extra["values"] = values;
    m.extra["equilibrium_window_days"] = kEquilibriumWindow;
    m.extra["monopoly_reference"] = {{"total_rs_share", sweep.monopoly.total_rs_share},
                                     {"ci_half_width", sweep.monopoly.half_width}};
    m.wall_clock_s = seconds_since(t0);
    io::write_manifest(m, dir / "manifest.json");
    std::cout << (dir / "sweep.csv").string() << '\n';
    return kOk;
}

int cmd_scenarios(const std::string& show, const std::string& scale)
{
    if (show.empty()) {
        for (auto name : presets::kNames) std::cout << name << '\n';
        return kOk;
    }
    try {
        std::cout << io::canonical_text(
            presets::preset(show, scale == "full" ? presets::Scale::full : presets::Scale::desk));
    } catch (const std::invalid_argument& e) {
        config_error(e.what());
    }
    return kOk;
}

int dispatch(int argc, char** argv)
{
    CLI::App app{"ridewar: day-to-day simulator of competing ride-sourcing platforms"};
    app.require_subcommand(1);

    Source run_src, rep_src, sweep_src;
    std::string rep_seeds, sweep_param = "rho", sweep_values, sweep_seeds = "1-10", show, show_scale = "desk";

    auto* run_cmd = app.add_subcommand("run", "single run, writes daily.csv");
    run_src.add_to(*run_cmd, true);

    auto* rep_cmd = app.add_subcommand("replicate", "independent runs over a seed list, per-seed and aggregate CSVs");
    rep_src.add_to(*rep_cmd, false);
    rep_cmd->add_option("--seeds", rep_seeds, "comma list and/or ranges, e.g. 1-20")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "equilibrium total ride-sourcing share over a parameter grid");
    sweep_src.add_to(*sweep_cmd, false);
    sweep_cmd->add_option("--param", sweep_param, "rho, theta, alpha, wom_intensity or awareness_daily_prob");
    sweep_cmd->add_option("--values", sweep_values, "comma-separated grid")->required();
    sweep_cmd->add_option("--seeds", sweep_seeds, "comma list and/or ranges");

    auto* sc_cmd = app.add_subcommand("scenarios", "list presets, or print one as a config file");
    sc_cmd->add_option("--show", show, "preset to print");
    sc_cmd->add_option("--scale", show_scale)->check(CLI::IsMember({"desk", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        throw CliError(kConfig, "usage", e.what());
    }

    if (run_cmd->parsed()) return cmd_run(run_src);
    if (rep_cmd->parsed()) return cmd_replicate(rep_src, rep_seeds);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_src, sweep_param, sweep_values, sweep_seeds);
    return cmd_scenarios(show, show_scale);
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return dispatch(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "ridewar: error: " << e.kind << ": " << one_line(e.what()) << '\n';
        return e.code;
    } catch (const io::IoError& e) {
        std::cerr << "ridewar: error: io: " << one_line(e.what()) << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "ridewar: error: runtime: " << one_line(e.what()) << '\n';
        return kRuntime;
    }
}
