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
#include "oracles.hpp"
#include "ridewar/choice.hpp"
#include "ridewar/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

using namespace ridewar;
using namespace ridewar::choice;

namespace {

struct Draw {
    std::vector<double> u;
    std::vector<std::uint8_t> aware;
    double outside;
    double theta;
    double rho;
};

Draw random_draw(Rng& r)
{
    Draw d;
    const auto n = 1 + r.below(4);
    for (std::uint64_t k = 0; k < n; ++k) {
        d.u.push_back(r.uniform(-0.5, 1.5));
        d.aware.push_back(r.bernoulli(0.7) ? 1 : 0);
    }
    d.outside = r.uniform(0, 1);
    d.theta = r.uniform(0.05, 2.0);
    d.rho = r.uniform(0, 0.95);
    return d;
}

std::vector<double> probs(const Draw& d, double theta_n)
{
    return choice_probabilities({d.u, d.aware, d.outside}, d.theta, theta_n);
}

} // namespace

TEST(Compose, Examples)
{
    EXPECT_DOUBLE_EQ(compose_perceived_utility({0.5, 0.5, 0.5}, {}, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(compose_perceived_utility({1, 0, 0}, {0.7, 0.1, 0.2}, 0.0), 0.7);
    const double base = compose_perceived_utility({0.3, 0.6, 0.9}, {}, 0.0);
    EXPECT_NEAR(compose_perceived_utility({0.3, 0.6, 0.9}, {}, 0.1) - base, 0.1, 1e-15);
}

TEST(WithinNest, Examples)
{
    const std::vector<double> eq = {0.3, 0.3};
    EXPECT_EQ(within_nest_probability(eq, 0.6), (std::vector<double>{0.5, 0.5}));
    const std::vector<double> one = {0.9};
    EXPECT_EQ(within_nest_probability(one, 0.6), (std::vector<double>{1.0}));
    const std::vector<double> u = {0.8, 0.4};
    const auto p = within_nest_probability(u, 0.6);
    EXPECT_NEAR(p[0], 0.66075636876581717236, 1e-12);
    EXPECT_NEAR(p[1], 0.33924363123418282764, 1e-12);
}

TEST(WithinNest, TranslationInvariant)
{
    Rng r(4);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> u = {r.uniform(0, 1), r.uniform(0, 1), r.uniform(0, 1)};
        const double tn = r.uniform(0.05, 1);
        const auto base = within_nest_probability(u, tn);
        const double c = r.uniform(-3, 3);
        for (auto& x : u) x += c;
        const auto moved = within_nest_probability(u, tn);
        for (std::size_t k = 0; k < u.size(); ++k) EXPECT_NEAR(base[k], moved[k], 1e-12);
    }
}

TEST(Logsum, Examples)
{
    const std::vector<double> single = {0.7};
    for (double tn : {0.01, 0.6, 3.0}) EXPECT_DOUBLE_EQ(nest_logsum(single, tn), 0.7);
    const std::vector<double> pair = {0.35, 0.35};
    EXPECT_NEAR(nest_logsum(pair, 0.6), 0.35 + 0.6 * std::log(2.0), 1e-15);
    const std::vector<double> u = {0.8, 0.4};
    EXPECT_NEAR(nest_logsum(u, 0.6), 1.0486220521112432342, 1e-12);
    EXPECT_NEAR(nest_logsum(u, 0.6), 0.8 + 0.6 * std::log(1.5134171190325919952), 1e-12);
}

TEST(Logsum, StableForTinyScale)
{
    const std::vector<double> u = {1.0, 0.2};
    EXPECT_TRUE(std::isfinite(nest_logsum(u, 1e-4)));
    EXPECT_NEAR(nest_logsum(u, 1e-4), 1.0, 1e-9);
}

TEST(NestProbability, Examples)
{
    const std::vector<double> eq = {0.4, 0.4};
    EXPECT_EQ(nest_probability(eq, 1.0), (std::vector<double>{0.5, 0.5}));
    const std::vector<double> w = {0.9, 0.5};
    const auto p = nest_probability(w, 1.0);
    EXPECT_NEAR(p[0], 0.59868766011245200037, 1e-12);
    EXPECT_NEAR(p[1], 0.40131233988754799963, 1e-12);

    const std::vector<double> u = {0.9, 0.9};
    const std::vector<std::uint8_t> none = {0, 0};
    const auto gated = choice_probabilities({u, none, 0.5}, 1.0, 0.6);
    EXPECT_EQ(gated, (std::vector<double>{0.0, 0.0, 1.0}));
}

TEST(ChoiceProbabilities, MatchesFrozenProduct)
{
    const std::vector<double> u = {0.8, 0.4};
    const std::vector<std::uint8_t> aware = {1, 1};
    const auto p = choice_probabilities({u, aware, 0.5}, 1.0, 0.6);
    EXPECT_NEAR(p[0], 0.41879785126506036346, 1e-12);
    EXPECT_NEAR(p[1], 0.21501798625354726799, 1e-12);
    EXPECT_NEAR(p[2], 0.36618416248139236855, 1e-12);
}

TEST(ChoiceProbabilities, MatchesDirectOracle)
{
    Rng r(31);
    for (int i = 0; i < 10000; ++i) {
        const auto d = random_draw(r);
        const double tn = d.theta * (1 - d.rho);
        const auto got = probs(d, tn);
        const auto want = oracle::nested_logit(d.u, d.aware, d.outside, d.theta, tn);
        for (std::size_t k = 0; k < got.size(); ++k) ASSERT_NEAR(got[k], want[k], 1e-12);
    }
}

TEST(ChoiceProbabilities, NormalisedWithExactGate)
{
    Rng r(32);
    for (int i = 0; i < 10000; ++i) {
        const auto d = random_draw(r);
        const auto p = probs(d, d.theta * (1 - d.rho));
        EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-9);
        for (std::size_t k = 0; k < d.u.size(); ++k) {
            if (!d.aware[k]) {
                EXPECT_EQ(p[k], 0.0);
            }
            EXPECT_GE(p[k], 0.0);
            EXPECT_LE(p[k], 1.0);
        }
    }
}

TEST(ChoiceProbabilities, CollapsesToFlatLogitWithoutCorrelation)
{
    Rng r(33);
    for (int i = 0; i < 1000; ++i) {
        const auto d = random_draw(r);
        const auto nested = probs(d, d.theta);
        const auto flat = oracle::flat_logit(d.u, d.aware, d.outside, d.theta);
        for (std::size_t k = 0; k < nested.size(); ++k) EXPECT_NEAR(nested[k], flat[k], 1e-9);
    }
    const std::vector<double> u = {0.5, 0.5};
    const std::vector<std::uint8_t> aware = {1, 1};
    for (double p : choice_probabilities({u, aware, 0.5}, 0.7, 0.7)) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
}

TEST(ChoiceProbabilities, RaisingOwnUtilityHelpsOnlyThatPlatform)
{
    Rng r(34);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> u = {r.uniform(0, 1), r.uniform(0, 1), r.uniform(0, 1)};
        const std::vector<std::uint8_t> aware = {1, 1, 1};
        const double theta = r.uniform(0.1, 1), tn = theta * (1 - r.uniform(0, 0.9));
        const auto before = choice_probabilities({u, aware, 0.5}, theta, tn);
        u[1] += r.uniform(0.01, 0.2);
        const auto after = choice_probabilities({u, aware, 0.5}, theta, tn);
        EXPECT_GT(after[1], before[1]);
        for (std::size_t k : {0u, 2u, 3u}) EXPECT_LE(after[k], before[k] + 1e-15);
    }
}

TEST(ChoiceProbabilities, HigherCorrelationShrinksTheNest)
{
    const std::vector<double> u = {0.55, 0.5};
    const std::vector<std::uint8_t> aware = {1, 1};
    double prev_nest = 1.0;
    for (double rho : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        const auto p = choice_probabilities({u, aware, 0.5}, 0.15, 0.15 * (1 - rho));
        const double nest = p[0] + p[1];
        EXPECT_LT(nest, prev_nest);
        prev_nest = nest;
        EXPECT_NEAR(p[0] / nest, oracle::flat_logit(u, aware, -1e9, 0.15 * (1 - rho))[0], 1e-12);
    }
}

TEST(Choose, UnawareAlwaysTakesOutside)
{
    const std::vector<double> u = {5.0, 5.0};
    const std::vector<std::uint8_t> aware = {0, 0};
    Rng r(1);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(choose({u, aware, 0.5}, 1.0, 0.6, r), 2u);
}

TEST(Choose, EmpiricalFrequenciesMatchProbabilities)
{
    const std::vector<double> u = {0.8, 0.4, 0.6};
    const std::vector<std::uint8_t> aware = {1, 1, 0};
    const ChoiceSet set{u, aware, 0.5};
    const auto p = choice_probabilities(set, 0.3, 0.18);
    Rng r(77);
    constexpr int kDraws = 200000;
    std::vector<int> count(4, 0);
    for (int i = 0; i < kDraws; ++i) ++count[choose(set, 0.3, 0.18, r)];
    EXPECT_EQ(count[2], 0);
    double chi2 = 0;
    for (std::size_t k : {0u, 1u, 3u}) {
        const double e = p[k] * kDraws;
        chi2 += (count[k] - e) * (count[k] - e) / e;
    }
    EXPECT_LT(chi2, 13.816); // chi-square(2) upper 0.001 quantile
}

TEST(Choose, SymmetricFlatCaseIsUniform)
{
    const std::vector<double> u = {0.5, 0.5};
    const std::vector<std::uint8_t> aware = {1, 1};
    Rng r(78);
    std::vector<int> count(3, 0);
    constexpr int kDraws = 90000;
    for (int i = 0; i < kDraws; ++i) ++count[choose({u, aware, 0.5}, 1.0, 1.0, r)];
    double chi2 = 0;
    for (int c : count) chi2 += (c - kDraws / 3.0) * (c - kDraws / 3.0) / (kDraws / 3.0);
    EXPECT_LT(chi2, 13.816);
}
