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
#include "ridewar/config_io.hpp"
#include "ridewar/presets.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

using namespace ridewar;
using namespace ridewar::io;

namespace {

int error_line(const std::string& text)
{
    try {
        parse_config_text(text);
    } catch (const ConfigParseError& e) {
        return e.line();
    }
    return -1;
}

ScenarioConfig awkward_config()
{
    auto c = presets::preset("late-entry-subsidy", presets::Scale::full);
    c.choice_params.theta = 0.1 + 0.2; // 0.30000000000000004
    c.choice_params.asc = -1e-7;
    c.learning_params.alpha = 1.0 / 3.0;
    c.seed = 18446744073709551615ULL;
    c.awareness_daily_prob = 5e-324;
    c.fixed_trip_geometry = false;
    c.social_params.wom_notifies = true;
    c.schedules[0].platform_id = "odd \"id\"\\ with: colon\t#";
    return c;
}

} // namespace

TEST(Fnv, ReferenceVectors)
{
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Canonical, RoundTripsEveryPreset)
{
    for (auto name : presets::kNames)
        for (auto scale : {presets::Scale::desk, presets::Scale::full}) {
            const auto cfg = presets::preset(name, scale);
            const auto text = canonical_text(cfg);
            const auto back = parse_config_text(text);
            EXPECT_EQ(back, cfg) << name;
            EXPECT_EQ(canonical_text(back), text);
            EXPECT_EQ(config_hash(back), config_hash(cfg));
        }
}

TEST(Canonical, RoundTripsAwkwardValuesExactly)
{
    const auto cfg = awkward_config();
    const auto back = parse_config_text(canonical_text(cfg));
    EXPECT_EQ(back, cfg);
    EXPECT_EQ(back.choice_params.theta, 0.1 + 0.2);
    EXPECT_EQ(back.schedules[0].platform_id, cfg.schedules[0].platform_id);
    const auto v1 = validate_config(cfg);
    const auto v2 = validate_config(back);
    EXPECT_EQ(v1.config(), v2.config());
    EXPECT_EQ(v1.theta_n(), v2.theta_n());
}

TEST(Canonical, HashTracksContent)
{
    auto a = presets::preset("symmetric-duopoly");
    auto b = a;
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.choice_params.rho = 0.41;
    EXPECT_NE(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    EXPECT_EQ(config_hash(a), [&] {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_text(a))));
        return std::string(buf);
    }());
}

TEST(Parse, MissingKeysKeepDefaults)
{
    const auto c = parse_config_text("n_travelers: 10\nchoice_params:\n  rho: 0.2\n");
    EXPECT_EQ(c.n_travelers, 10);
    EXPECT_EQ(c.choice_params.rho, 0.2);
    ScenarioConfig d;
    EXPECT_EQ(c.n_drivers, d.n_drivers);
    EXPECT_EQ(c.choice_params.theta, d.choice_params.theta);
    EXPECT_EQ(parse_config_text(""), d);
}

TEST(Parse, FullScheduleSyntax)
{
    const std::string text = R"(horizon_days: 10
schedules:
  - platform_id: p1
    entries:
      - first_day: 0
        end_day: 4
        strategy: {active: false}
      - first_day: 4
        end_day: 10
        strategy:
          active: true
          discount_rate: 0.25
          marketing_intensity: 0.1
)";
    const auto c = parse_config_text(text);
    ASSERT_EQ(c.schedules.size(), 1u);
    ASSERT_EQ(c.schedules[0].entries.size(), 2u);
    EXPECT_FALSE(c.schedules[0].entries[0].strategy.active);
    EXPECT_EQ(c.schedules[0].entries[1].strategy.discount_rate, 0.25);
    EXPECT_EQ(c.schedules[0].entries[1].strategy.fare_per_km, 1.2);
    EXPECT_NO_THROW(validate_config(c));
}

TEST(Parse, ErrorsPointAtTheLine)
{
    EXPECT_EQ(error_line("n_travelers: 10\nthetaa: 3\n"), 2);
    EXPECT_EQ(error_line("n_travelers: 10\nn_drivers: ten\n"), 2);
    EXPECT_EQ(error_line("choice_params:\n  rho: 0.1\n  rho: 0.2\n"), 3);
    EXPECT_EQ(error_line("choice_params:\n  theta: 1\n  bogus: 2\n"), 3);
    EXPECT_EQ(error_line("seed: -4\n"), 1);
    EXPECT_EQ(error_line("fixed_trip_geometry: yes\n"), 1);
    EXPECT_EQ(error_line("horizon_days: 1.5\n"), 1);
    EXPECT_EQ(error_line("n_drivers: 4\nschedules:\n  - platform_id: p\n    entries:\n      - first_day: x\n"), 5);
    EXPECT_GT(error_line("n_travelers: [1, 2\nn_drivers: 3\n"), 0);
    EXPECT_EQ(error_line("- 1\n- 2\n"), 1);
}

TEST(Parse, MessageNamesLineAndKey)
{
    try {
        parse_config_text("n_travelers: 10\nthetaa: 3\n");
        FAIL();
    } catch (const ConfigParseError& e) {
        EXPECT_STREQ(e.what(), "line 2: unknown key 'thetaa' in config");
    }
}

TEST(Parse, RangeErrorsAreLeftToValidation)
{
    const auto c = parse_config_text("choice_params:\n  beta_wom: 0.5\n");
    EXPECT_THROW(validate_config(c), ConfigError);
}

TEST(LoadFile, MissingFileIsAnIoError)
{
    EXPECT_THROW(load_config_file("/nonexistent/ridewar.yaml"), IoError);
    const auto path = std::filesystem::temp_directory_path() / "ridewar_load_test.yaml";
    {
        std::ofstream f(path);
        f << canonical_text(presets::preset("late-entry"));
    }
    EXPECT_EQ(load_config_file(path), presets::preset("late-entry"));
    std::filesystem::remove(path);
}
