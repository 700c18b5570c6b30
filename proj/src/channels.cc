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

#include "leaksim/channels.h"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace leaksim {

namespace {

std::string text(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string_view name_of(FaultOutcome outcome) {
    switch (outcome) {
        case FaultOutcome::Identity:
            return "I";
        case FaultOutcome::PauliX:
            return "X";
        case FaultOutcome::PauliY:
            return "Y";
        case FaultOutcome::PauliZ:
            return "Z";
        case FaultOutcome::Leak:
            return "L";
    }
    return "?";
}

Channel::Channel(std::initializer_list<std::pair<FaultOutcome, double>> entries) {
    for (const auto &[outcome, p] : entries) {
        if (!(p >= 0)) {
            throw std::invalid_argument("channel probability must be non-negative");
        }
        probs_[static_cast<size_t>(outcome)] += p;
    }
    double total = 0;
    for (size_t k = 0; k < kNumFaultOutcomes; k++) {
        total += probs_[k];
        cumulative_[k] = total;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("channel probabilities sum to " + text(total));
    }
    // Pin the top of the CDF so u < 1 never falls off the end.
    for (size_t k = kNumFaultOutcomes; k-- > 0;) {
        if (probs_[k] > 0) {
            for (size_t j = k; j < kNumFaultOutcomes; j++) {
                cumulative_[j] = 2.0;
            }
            break;
        }
    }
}

namespace {

void check_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + text(p));
    }
}

}  // namespace

Channel hyperfine_scatter_channel(double p_s) {
    check_probability(p_s, "p_s");
    return Channel({
        {FaultOutcome::Identity, 1 - p_s / 2},
        {FaultOutcome::PauliX, p_s / 8},
        {FaultOutcome::PauliY, p_s / 8},
        {FaultOutcome::Leak, p_s / 4},
    });
}

Channel zeeman_scatter_channel(double p_s) {
    check_probability(p_s, "p_s");
    return Channel({
        {FaultOutcome::Identity, 1 - p_s},
        {FaultOutcome::PauliX, p_s / 4},
        {FaultOutcome::PauliY, p_s / 4},
        {FaultOutcome::PauliZ, p_s / 2},
    });
}

Channel dephasing_channel(double p_M) {
    check_probability(p_M, "p_M");
    return Channel({{FaultOutcome::Identity, 1 - p_M}, {FaultOutcome::PauliZ, p_M}});
}

Channel bit_twirl_channel() {
    return Channel({{FaultOutcome::Identity, 0.5}, {FaultOutcome::PauliX, 0.5}});
}

Channel phase_twirl_channel() {
    return Channel({{FaultOutcome::Identity, 0.5}, {FaultOutcome::PauliZ, 0.5}});
}

Channel depolarize_channel() {
    return Channel({
        {FaultOutcome::Identity, 0.25},
        {FaultOutcome::PauliX, 0.25},
        {FaultOutcome::PauliY, 0.25},
        {FaultOutcome::PauliZ, 0.25},
    });
}

double pM_from_sigma(double sigma_uG) {
    if (!(sigma_uG > 0) || !std::isfinite(sigma_uG)) {
        throw std::invalid_argument("sigma_uG must be positive, got " + text(sigma_uG));
    }
    static constexpr std::pair<double, double> kTable[] = {
        {100, 7.75e-3},
        {32, 7.75e-4},
        {10, 7.75e-5},
        {1, 7.75e-6},
    };
    for (const auto &[sigma, p_M] : kTable) {
        if (sigma_uG == sigma) {
            return p_M;
        }
    }
    double ratio = sigma_uG / 100;
    return 7.75e-3 * ratio * ratio;
}

NoiseParams NoiseParams::from_scatter(double p_s_2q, std::optional<double> sigma_uG) {
    NoiseParams noise;
    noise.p_s_2q = p_s_2q;
    noise.p_s_1q = p_s_2q * kOneQubitScatterRatio;
    if (sigma_uG.has_value()) {
        noise.sigma_uG = sigma_uG;
        noise.p_M = pM_from_sigma(*sigma_uG);
    }
    return noise;
}

void NoiseParams::validate() const {
    check_probability(p_s_2q, "p_s");
    check_probability(p_s_1q, "p_s_1q");
    check_probability(p_M, "p_M");
    if (sigma_uG.has_value()) {
        double expected = pM_from_sigma(*sigma_uG);
        if (std::abs(p_M - expected) > 1e-9 * expected) {
            throw std::invalid_argument(
                "p_M " + text(p_M) + " is inconsistent with sigma_uG " + text(*sigma_uG) +
                " (expected " + text(expected) + ")");
        }
    }
}

}  // namespace leaksim
