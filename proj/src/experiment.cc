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
#include <stdexcept>
#include <string>
#include <thread>

#include "leaksim/decoder.h"
#include "leaksim/lattice.h"
#include "leaksim/simulator.h"

namespace leaksim {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct Tally {
    uint64_t x = 0;
    uint64_t z = 0;
    uint64_t any = 0;
};

}  // namespace

uint64_t trial_seed(uint64_t base_seed, uint64_t point_index, uint64_t trial_index) {
    return splitmix64(splitmix64(splitmix64(base_seed) ^ point_index) ^ trial_index);
}

std::pair<double, double> wilson_interval(uint64_t failures, uint64_t trials, double z) {
    if (trials == 0) {
        throw std::invalid_argument("wilson_interval needs at least one trial");
    }
    if (failures > trials) {
        throw std::invalid_argument("failures exceed trials");
    }
    double n = static_cast<double>(trials);
    double p = static_cast<double>(failures) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = failures == trials ? 1.0 : std::min(1.0, center + half);
    return {std::min(lo, p), std::max(hi, p)};
}

SweepRecord estimate_point(const TrialConfig &config, uint64_t point_index, unsigned threads) {
    config.validate();
    const ToricLayout layout = build_layout(config.d);
    const NoiseModel noise(config);
    threads = std::max(1u, threads);
    uint64_t workers = std::min<uint64_t>(threads, config.trials);

    auto run_range = [&](uint64_t begin, uint64_t end, Tally &tally) {
        for (uint64_t k = begin; k < end; k++) {
            TrialRng rng(trial_seed(config.seed, point_index, k));
            TrialRecord record = run_trial(config, layout, noise, rng);
            LogicalOutcome outcome = decode(record, layout);
            tally.x += outcome.x_failure;
            tally.z += outcome.z_failure;
            tally.any += outcome.any();
        }
    };

    std::vector<Tally> tallies(workers);
    if (workers == 1) {
        run_range(0, config.trials, tallies[0]);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (uint64_t w = 0; w < workers; w++) {
            uint64_t begin = config.trials * w / workers;
            uint64_t end = config.trials * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    run_range(begin, end, tallies[w]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    SweepRecord record;
    record.config = config;
    record.trials = config.trials;
    for (const Tally &t : tallies) {
        record.failures_x += t.x;
        record.failures_z += t.z;
        record.failures += t.any;
    }
    record.p_L = static_cast<double>(record.failures) / static_cast<double>(record.trials);
    std::tie(record.ci_lo, record.ci_hi) = wilson_interval(record.failures, record.trials);
    return record;
}

std::vector<SweepRecord> sweep(
    std::span<const TrialConfig> grid, unsigned threads, const std::function<void(const SweepRecord &)> &on_record) {
    std::vector<SweepRecord> out;
    out.reserve(grid.size());
    for (size_t k = 0; k < grid.size(); k++) {
        out.push_back(estimate_point(grid[k], k, threads));
        if (on_record) {
            on_record(out.back());
        }
    }
    return out;
}

double fit_exponent(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("fit_exponent needs at least 3 points, got " + std::to_string(points.size()));
    }
    double sx = 0;
    double sy = 0;
    for (const auto &[p_s, p_L] : points) {
        if (!(p_s > 0)) {
            throw std::invalid_argument("fit_exponent: p_s must be positive, got " + std::to_string(p_s));
        }
        if (!(p_L > 0)) {
            throw std::invalid_argument(
                "fit_exponent: p_L = 0 at p_s = " + std::to_string(p_s) + "; run more trials at this point");
        }
        sx += std::log(p_s);
        sy += std::log(p_L);
    }
    double n = static_cast<double>(points.size());
    double mx = sx / n;
    double my = sy / n;
    double sxx = 0;
    double sxy = 0;
    for (const auto &[p_s, p_L] : points) {
        double dx = std::log(p_s) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p_L) - my);
    }
    if (sxx == 0) {
        throw std::invalid_argument("fit_exponent: all p_s values are equal");
    }
    return sxy / sxx;
}

unsigned resolve_concurrency(unsigned requested) {
    if (const char *env = std::getenv("LEAKSIM_THREADS")) {
        char *end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
        throw std::invalid_argument(std::string("LEAKSIM_THREADS must be a positive integer, got '") + env + "'");
    }
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace leaksim
