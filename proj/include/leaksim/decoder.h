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

#ifndef LEAKSIM_DECODER_H
#define LEAKSIM_DECODER_H

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "leaksim/lattice.h"
#include "leaksim/simulator.h"

namespace leaksim {

struct Defect {
    int round = 0;
    uint32_t stabilizer = 0;
    bool operator==(const Defect &) const = default;
};

/// Space-time syndrome changes, per stabilizer type. X-stabilizer defects
/// locate Z errors; Z-stabilizer defects locate X errors.
struct DefectSet {
    std::vector<Defect> x_stabilizer;
    std::vector<Defect> z_stabilizer;
};

/// A defect at (t, s) iff s reads differently in rounds t - 1 and t, with an
/// all-zero reference before round 0. Throws std::invalid_argument when a
/// round's outcome count does not match the layout.
DefectSet syndromes_to_defects(std::span<const SyndromeRound> history, const ToricLayout &layout);

/// Complete graph over defects; weight = torus distance + round difference.
struct MatchingGraph {
    size_t num_nodes = 0;
    /// Row-major num_nodes x num_nodes.
    std::vector<int64_t> weights;

    int64_t weight(size_t a, size_t b) const {
        return weights[a * num_nodes + b];
    }
};

MatchingGraph build_matching_graph(std::span<const Defect> defects, const ToricLayout &layout);

/// Exact minimum-weight perfect matching, as index pairs (a < b) sorted by a.
/// Throws std::invalid_argument for an odd node count.
std::vector<std::pair<size_t, size_t>> mwpm(const MatchingGraph &graph);

struct Correction {
    /// Per data position.
    std::vector<uint8_t> x_flips;
    std::vector<uint8_t> z_flips;
};

/// Flips data along a minimal space path for every matched pair. Pairs from
/// x_defects produce Z flips, pairs from z_defects produce X flips. Time-like
/// separation contributes nothing.
Correction matching_to_correction(
    std::span<const Defect> x_defects,
    std::span<const std::pair<size_t, size_t>> x_matching,
    std::span<const Defect> z_defects,
    std::span<const std::pair<size_t, size_t>> z_matching,
    const ToricLayout &layout);

struct LogicalOutcome {
    /// Residual X error anticommutes with a Z logical.
    bool x_failure = false;
    /// Residual Z error anticommutes with an X logical.
    bool z_failure = false;
    bool any() const {
        return x_failure || z_failure;
    }
    bool operator==(const LogicalOutcome &) const = default;
};

/// Throws std::logic_error when frame + correction still violates a
/// stabilizer, which means the decoder is broken.
LogicalOutcome logical_failure(
    std::span<const QubitState> final_frame, const Correction &correction, const ToricLayout &layout);

/// Full pipeline: defects, two independent matchings, correction, check.
LogicalOutcome decode(const TrialRecord &record, const ToricLayout &layout);

}  // namespace leaksim

#endif
