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
#include "ridewar/csv.hpp"
#include "ridewar/version.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ridewar::io {

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::string config_text; // canonical
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> artifacts; // file names relative to the manifest
    std::string csv_schema = kDailySchemaVersion;
    std::string engine_version = kEngineVersion;
    double wall_clock_s = 0.0;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

inline nlohmann::ordered_json to_json(const RunManifest& m)
{
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["engine_version"] = m.engine_version;
    j["csv_schema"] = m.csv_schema;
    j["config_hash"] = m.config_hash;
    j["seeds"] = m.seeds;
    j["artifacts"] = m.artifacts;
    j["wall_clock_s"] = m.wall_clock_s;
    for (const auto& [k, v] : m.extra.items()) j[k] = v;
    j["config"] = m.config_text;
    return j;
}

inline void write_manifest(const RunManifest& m, const std::filesystem::path& path)
{
    write_text_file(path, to_json(m).dump(2) + "\n");
}

} // namespace ridewar::io
