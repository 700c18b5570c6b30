// Copyright 2026 The leaksim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "leaksim/experiment.h"

#include <cmath>
#include <cstdlib>
#include <gtest/gtest.h>
#include <set>

using namespace leaksim;

namespace {

TrialConfig point(Architecture arch, LeakageModel model, double p_s, std::optional<double> sigma, uint64_t trials) {
    TrialConfig c;
    c.arch = arch;
    c.model = model;
    c.d = 3;
    c.noise = NoiseParams::from_scatter(p_s, sigma);
    c.trials = trials;
    c.seed = 12345;
    return c;
}

void expect_consistent(const SweepRecord &r) {
    EXPECT_LE(r.failures, r.trials);
    EXPECT_GE(r.failures, std::max(r.failures_x, r.failures_z));
    EXPECT_LE(r.failures, r.failures_x + r.failures_z);
    EXPECT_DOUBLE_EQ(r.p_L, static_cast<double>(r.failures) / r.trials);
    EXPECT_LE(r.ci_lo, r.p_L);
    EXPECT_GE(r.ci_hi, r.p_L);
}

}  // namespace

TEST(experiment, wilson_interval) {
    auto [lo0, hi0] = wilson_interval(0, 100);
    EXPECT_EQ(lo0, 0);
    EXPECT_GT(hi0, 0);
    auto [lo1, hi1] = wilson_interval(100, 100);
    EXPECT_EQ(hi1, 1);
    EXPECT_LT(lo1, 1);
    auto [lo, hi] = wilson_interval(50, 100, 1.96);
    EXPECT_NEAR(lo, 0.40382982859014716, 1e-12);
    EXPECT_NEAR(hi, 0.5961701714098528, 1e-12);
    EXPECT_NEAR((lo + hi) / 2, 0.5, 1e-12);
    EXPECT_NEAR(hi - lo, 0.19, 0.005);
    EXPECT_THROW(wilson_interval(0, 0), std::invalid_argument);
    EXPECT_THROW(wilson_interval(3, 2), std::invalid_argument);
}

TEST(experiment, fit_exponent) {
    std::vector<std::pair<double, double>> quad;
    std::vector<std::pair<double, double>> lin;
    for (double p : {1e-3, 3e-3, 1e-2, 3e-2}) {
        quad.push_back({p, 7 * p * p});
        lin.push_back({p, 0.2 * p});
    }
    EXPECT_NEAR(fit_exponent(quad), 2.0, 1e-12);
    EXPECT_NEAR(fit_exponent(lin), 1.0, 1e-12);
    std::vector<std::pair<double, double>> two(quad.begin(), quad.begin() + 2);
    EXPECT_THROW(fit_exponent(two), std::invalid_argument);
    quad[1].second = 0;
    EXPECT_THROW(fit_exponent(quad), std::invalid_argument);
}

TEST(experiment, trial_seeds_are_distinct) {
    std::set<uint64_t> seen;
    for (uint64_t base : {0, 1, 2}) {
        for (uint64_t p = 0; p < 20; p++) {
            for (uint64_t t = 0; t < 200; t++) {
                seen.insert(trial_seed(base, p, t));
            }
        }
    }
    EXPECT_EQ(seen.size(), 3u * 20 * 200);
    EXPECT_EQ(trial_seed(5, 6, 7), trial_seed(5, 6, 7));
}

TEST(experiment, zero_noise_never_fails) {
    TrialConfig c = point(Architecture::HyperfineWithSwapLrc, LeakageModel::Depolarizing, 0, std::nullopt, 10000);
    SweepRecord r = estimate_point(c);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.p_L, 0);
    EXPECT_EQ(r.trials, 10000u);
    expect_consistent(r);
}

TEST(experiment, independent_of_thread_count) {
    TrialConfig c = point(Architecture::MixedSpecies, LeakageModel::Depolarizing, 1e-2, 32.0, 3001);
    SweepRecord one = estimate_point(c, 4, 1);
    expect_consistent(one);
    EXPECT_GT(one.failures, 0u);
    EXPECT_EQ(one, estimate_point(c, 4, 1));
    EXPECT_EQ(one, estimate_point(c, 4, 2));
    EXPECT_EQ(one, estimate_point(c, 4, 3));
    EXPECT_EQ(one, estimate_point(c, 4, 64));
    EXPECT_NE(one, estimate_point(c, 5, 1));
    EXPECT_EQ(one.config, c);
}

TEST(experiment, sweep_order_and_seeding) {
    std::vector<TrialConfig> grid;
    for (double p : {3e-3, 1e-2}) {
        grid.push_back(point(Architecture::PureZeeman, LeakageModel::MolmerSorensen, p, std::nullopt, 500));
    }
    grid.push_back(point(Architecture::MixedSpecies, LeakageModel::MolmerSorensen, 1e-2, 10.0, 500));
    std::vector<SweepRecord> streamed;
    auto records = sweep(grid, 2, [&](const SweepRecord &r) { streamed.push_back(r); });
    ASSERT_EQ(records.size(), 3u);
    EXPECT_EQ(records, streamed);
    for (size_t k = 0; k < grid.size(); k++) {
        EXPECT_EQ(records[k], estimate_point(grid[k], k, 1));
    }
    std::span<const TrialConfig> single(grid.data(), 1);
    EXPECT_EQ(sweep(single).size(), 1u);
}

TEST(experiment, env_overrides_concurrency) {
    unsetenv("LEAKSIM_THREADS");
    EXPECT_EQ(resolve_concurrency(3), 3u);
    EXPECT_GE(resolve_concurrency(0), 1u);
    setenv("LEAKSIM_THREADS", "5", 1);
    EXPECT_EQ(resolve_concurrency(3), 5u);
    EXPECT_EQ(resolve_concurrency(0), 5u);
    setenv("LEAKSIM_THREADS", "junk", 1);
    EXPECT_THROW(resolve_concurrency(3), std::invalid_argument);
    unsetenv("LEAKSIM_THREADS");
}

TEST(experiment, hyperfine_ignores_field_noise) {
    SweepRecord base =
        estimate_point(point(Architecture::HyperfineWithSwapLrc, LeakageModel::MolmerSorensen, 3e-3, 1.0, 4000));
    for (double sigma : {10.0, 32.0, 100.0}) {
        SweepRecord r =
            estimate_point(point(Architecture::HyperfineWithSwapLrc, LeakageModel::MolmerSorensen, 3e-3, sigma, 4000));
        EXPECT_EQ(r.failures_x, base.failures_x);
        EXPECT_EQ(r.failures_z, base.failures_z);
        EXPECT_EQ(r.failures, base.failures);
    }
}

TEST(experiment, zeeman_slope_below_threshold) {
    std::vector<std::pair<double, double>> pts;
    for (double p : {3e-4, 1e-3, 3e-3}) {
        SweepRecord r = estimate_point(point(Architecture::PureZeeman, LeakageModel::MolmerSorensen, p, std::nullopt, 100000));
        expect_consistent(r);
        pts.push_back({p, r.p_L});
    }
    double slope = fit_exponent(pts);
    EXPECT_GE(slope, 1.7);
    EXPECT_LE(slope, 2.3);
}

TEST(experiment, zeeman_two_point_ratio) {
    SweepRecord lo = estimate_point(point(Architecture::PureZeeman, LeakageModel::MolmerSorensen, 3e-3, std::nullopt, 100000));
    SweepRecord hi = estimate_point(point(Architecture::PureZeeman, LeakageModel::MolmerSorensen, 1e-2, std::nullopt, 100000), 1);
    double ratio = (10.0 / 3.0) * (10.0 / 3.0);
    // Quadratic scaling: the lower point's interval, scaled by the ratio,
    // overlaps the upper point's interval.
    EXPECT_LE(lo.ci_lo * ratio, hi.ci_hi) << "p_L " << lo.p_L << " -> " << hi.p_L;
    EXPECT_GE(lo.ci_hi * ratio, hi.ci_lo) << "p_L " << lo.p_L << " -> " << hi.p_L;
}
