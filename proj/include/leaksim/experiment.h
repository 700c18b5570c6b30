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

#ifndef LEAKSIM_EXPERIMENT_H
#define LEAKSIM_EXPERIMENT_H

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "leaksim/config.h"

namespace leaksim {

/// One Monte Carlo data point.
struct SweepRecord {
    TrialConfig config;
    uint64_t trials = 0;
    uint64_t failures_x = 0;
    uint64_t failures_z = 0;
    /// Trials failing in either sector.
    uint64_t failures = 0;
    double p_L = 0;
    double ci_lo = 0;
    double ci_hi = 0;

    bool operator==(const SweepRecord &) const = default;
};

/// Seed of one trial, independent of execution order.
uint64_t trial_seed(uint64_t base_seed, uint64_t point_index, uint64_t trial_index);

/// Wilson score interval. Throws std::invalid_argument when trials == 0 or
/// failures > trials.
std::pair<double, double> wilson_interval(uint64_t failures, uint64_t trials, double z = 1.96);

/// Runs config.trials trials split across `threads` workers. The result does
/// not depend on the thread count.
SweepRecord estimate_point(const TrialConfig &config, uint64_t point_index = 0, unsigned threads = 1);

/// Estimates every grid point in order; point k uses point index k for its
/// seeds. on_record, if set, sees each record as soon as it completes.
std::vector<SweepRecord> sweep(
    std::span<const TrialConfig> grid,
    unsigned threads = 1,
    const std::function<void(const SweepRecord &)> &on_record = {});

/// Least-squares slope of log p_L against log p_s. Needs at least three
/// points, all strictly positive; throws std::invalid_argument otherwise.
double fit_exponent(std::span<const std::pair<double, double>> points);

/// Worker count: LEAKSIM_THREADS when set, else `requested` when nonzero,
/// else the hardware concurrency.
unsigned resolve_concurrency(unsigned requested);

}  // namespace leaksim

#endif
