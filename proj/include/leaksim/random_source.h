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

#ifndef LEAKSIM_RANDOM_SOURCE_H
#define LEAKSIM_RANDOM_SOURCE_H

#include <cstdint>
#include <random>
#include <vector>

#include "leaksim/channels.h"

namespace leaksim {

enum class SiteKind : uint8_t {
    Preparation,
    TwoQubitGate,
    Dephasing,
    IdleDephasing,
    Measurement,
};

/// Where a noise channel is applied. `step` is the CNOT time step within the
/// round (0-based; 4 is the extra SWAP-LRC gate), or -1 outside the CNOT
/// layers.
struct FaultSite {
    int round = 0;
    int step = -1;
    uint32_t qubit = 0;
    SiteKind kind = SiteKind::TwoQubitGate;
};

// The simulator pulls randomness from a source with two entry points:
//
//   fault(channel, site)  - an independent noise location.
//   consequence(channel)  - randomness forced by an earlier fault (leak
//                           interaction twirls, depolarized returns, leaked
//                           readout).
//
// Monte Carlo sampling treats both alike. Exhaustive single-fault enumeration
// pins every fault() to Identity except one, and walks every branch of the
// consequence() draws.

/// Independent random stream owned by one trial.
class TrialRng {
   public:
    explicit TrialRng(uint64_t seed) : gen_(seed) {
    }
    FaultOutcome fault(const Channel &channel, const FaultSite &) {
        return sample(channel, gen_);
    }
    FaultOutcome consequence(const Channel &channel) {
        return sample(channel, gen_);
    }

   private:
    std::mt19937_64 gen_;
};

/// Deterministic source that injects at most one fault and enumerates the
/// consequences of it branch by branch.
class FaultInjector {
   public:
    /// Injects nothing and records every site visited.
    FaultInjector() = default;
    /// Replaces the draw at the site_index-th fault() call with `outcome`;
    /// every other fault() returns Identity.
    FaultInjector(size_t site_index, FaultOutcome outcome)
        : inject_(true), site_index_(site_index), outcome_(outcome) {
    }

    FaultOutcome fault(const Channel &channel, const FaultSite &site);
    FaultOutcome consequence(const Channel &channel);

    /// Prepares to re-run the circuit along the current branch.
    void rewind() {
        site_counter_ = 0;
        cursor_ = 0;
    }
    /// Advances to the next unexplored branch of consequence() choices.
    /// Returns false once every branch has been visited.
    bool next_branch();
    /// Probability of the branch most recently run, given the injected fault.
    double branch_probability() const;

    struct RecordedSite {
        FaultSite site;
        Channel channel;
    };
    /// Sites seen by a recording (non-injecting) run.
    const std::vector<RecordedSite> &sites() const {
        return sites_;
    }

   private:
    struct Choice {
        uint8_t taken;
        uint8_t arity;
        std::array<FaultOutcome, kNumFaultOutcomes> options;
        std::array<double, kNumFaultOutcomes> probs;
    };
    bool inject_ = false;
    size_t site_index_ = 0;
    FaultOutcome outcome_ = FaultOutcome::Identity;
    size_t site_counter_ = 0;
    size_t cursor_ = 0;
    std::vector<Choice> path_;
    std::vector<RecordedSite> sites_;
};

}  // namespace leaksim

#endif
