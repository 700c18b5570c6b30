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

#ifndef LEAKSIM_CONFIG_H
#define LEAKSIM_CONFIG_H

#include <cstdint>
#include <string_view>

#include "leaksim/channels.h"

namespace leaksim {

/// Which ion species fills each role.
///
///   HyperfineWithSwapLrc: every qubit is a hyperfine qubit (leaks, no
///     dephasing); a SWAP leakage-reduction circuit exchanges data and ancilla
///     every round.
///   PureZeeman: every qubit is a Zeeman qubit (dephases, never leaks).
///   MixedSpecies: hyperfine ancillas, Zeeman data.
enum class Architecture : uint8_t { HyperfineWithSwapLrc, PureZeeman, MixedSpecies };

/// How a CNOT with a leaked participant acts on its unleaked partner.
enum class LeakageModel : uint8_t { Depolarizing, MolmerSorensen };

/// Measurement result reported by a leaked ancilla.
enum class LeakedReadout : uint8_t {
    /// Uniformly random bit.
    Random,
    /// Always 1 (leaked population fluoresces).
    Bright,
};

std::string_view name_of(Architecture arch);
std::string_view name_of(LeakageModel model);
std::string_view name_of(LeakedReadout readout);
/// Accepts the short CLI names ("hyperfine", "zeeman", "mixed", "depolarizing",
/// "ms", "random", "bright") and a few aliases. Throws std::invalid_argument.
Architecture parse_architecture(std::string_view text);
LeakageModel parse_leakage_model(std::string_view text);
LeakedReadout parse_leaked_readout(std::string_view text);

struct TrialConfig {
    Architecture arch = Architecture::PureZeeman;
    LeakageModel model = LeakageModel::MolmerSorensen;
    int d = 3;
    /// Noisy extraction rounds per trial; 0 means d.
    int rounds = 0;
    NoiseParams noise;
    LeakedReadout leaked_readout = LeakedReadout::Bright;
    uint64_t seed = 0;
    uint64_t trials = 1;
    /// Keep a per-trial log of leak, return, reinitialization and corrupt
    /// gate events. Diagnostic only; slows trials down.
    bool record_leak_events = false;

    int effective_rounds() const {
        return rounds > 0 ? rounds : d;
    }
    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;

    bool operator==(const TrialConfig &) const = default;
};

}  // namespace leaksim

#endif
