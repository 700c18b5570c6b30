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

#include "leaksim/decoder.h"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "leaksim/matching.h"

namespace leaksim {

DefectSet syndromes_to_defects(std::span<const SyndromeRound> history, const ToricLayout &layout) {
    const size_t n = layout.num_stabilizers();
    DefectSet out;
    std::vector<uint8_t> prev_x(n, 0);
    std::vector<uint8_t> prev_z(n, 0);
    for (size_t t = 0; t < history.size(); t++) {
        const SyndromeRound &round = history[t];
        if (round.x_outcomes.size() != n || round.z_outcomes.size() != n) {
            throw std::invalid_argument(
                "syndrome round " + std::to_string(t) + " has the wrong number of outcomes for d=" +
                std::to_string(layout.distance()));
        }
        for (size_t s = 0; s < n; s++) {
            if (round.x_outcomes[s] != prev_x[s]) {
                out.x_stabilizer.push_back({static_cast<int>(t), static_cast<uint32_t>(s)});
            }
            if (round.z_outcomes[s] != prev_z[s]) {
                out.z_stabilizer.push_back({static_cast<int>(t), static_cast<uint32_t>(s)});
            }
        }
        prev_x = round.x_outcomes;
        prev_z = round.z_outcomes;
    }
    return out;
}

MatchingGraph build_matching_graph(std::span<const Defect> defects, const ToricLayout &layout) {
    MatchingGraph graph;
    graph.num_nodes = defects.size();
    graph.weights.assign(graph.num_nodes * graph.num_nodes, 0);
    for (size_t a = 0; a < defects.size(); a++) {
        for (size_t b = a + 1; b < defects.size(); b++) {
            int64_t w = torus_distance(
                            layout.coord(defects[a].stabilizer), layout.coord(defects[b].stabilizer), layout.distance()) +
                        std::abs(defects[a].round - defects[b].round);
            graph.weights[a * graph.num_nodes + b] = w;
            graph.weights[b * graph.num_nodes + a] = w;
        }
    }
    return graph;
}

std::vector<std::pair<size_t, size_t>> mwpm(const MatchingGraph &graph) {
    std::vector<int32_t> mate = min_weight_perfect_matching(graph.num_nodes, graph.weights);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t a = 0; a < mate.size(); a++) {
        if (static_cast<size_t>(mate[a]) > a) {
            pairs.emplace_back(a, static_cast<size_t>(mate[a]));
        }
    }
    return pairs;
}

Correction matching_to_correction(
    std::span<const Defect> x_defects,
    std::span<const std::pair<size_t, size_t>> x_matching,
    std::span<const Defect> z_defects,
    std::span<const std::pair<size_t, size_t>> z_matching,
    const ToricLayout &layout) {
    Correction out;
    out.x_flips.assign(layout.num_data(), 0);
    out.z_flips.assign(layout.num_data(), 0);
    for (const auto &[a, b] : x_matching) {
        for (uint32_t q : layout.path(
                 StabilizerType::X, layout.coord(x_defects[a].stabilizer), layout.coord(x_defects[b].stabilizer))) {
            out.z_flips[q] ^= 1;
        }
    }
    for (const auto &[a, b] : z_matching) {
        for (uint32_t q : layout.path(
                 StabilizerType::Z, layout.coord(z_defects[a].stabilizer), layout.coord(z_defects[b].stabilizer))) {
            out.x_flips[q] ^= 1;
        }
    }
    return out;
}

LogicalOutcome logical_failure(
    std::span<const QubitState> final_frame, const Correction &correction, const ToricLayout &layout) {
    const size_t n_data = layout.num_data();
    if (final_frame.size() != n_data || correction.x_flips.size() != n_data || correction.z_flips.size() != n_data) {
        throw std::invalid_argument("frame or correction size does not match the layout");
    }
    std::vector<uint8_t> rx(n_data);
    std::vector<uint8_t> rz(n_data);
    for (size_t q = 0; q < n_data; q++) {
        rx[q] = final_frame[q].x_flip ^ correction.x_flips[q];
        rz[q] = final_frame[q].z_flip ^ correction.z_flips[q];
    }
    for (size_t s = 0; s < layout.num_stabilizers(); s++) {
        uint8_t px = 0;
        uint8_t pz = 0;
        for (uint32_t q : layout.support(StabilizerType::X, s)) {
            pz ^= rz[q];
        }
        for (uint32_t q : layout.support(StabilizerType::Z, s)) {
            px ^= rx[q];
        }
        if (px || pz) {
            throw std::logic_error("correction leaves a nonzero syndrome at stabilizer " + std::to_string(s));
        }
    }
    LogicalOutcome out;
    for (const auto &logical : layout.z_logicals()) {
        uint8_t parity = 0;
        for (uint32_t q : logical) {
            parity ^= rx[q];
        }
        out.x_failure |= parity != 0;
    }
    for (const auto &logical : layout.x_logicals()) {
        uint8_t parity = 0;
        for (uint32_t q : logical) {
            parity ^= rz[q];
        }
        out.z_failure |= parity != 0;
    }
    return out;
}

LogicalOutcome decode(const TrialRecord &record, const ToricLayout &layout) {
    DefectSet defects = syndromes_to_defects(record.history, layout);
    auto x_matching = mwpm(build_matching_graph(defects.x_stabilizer, layout));
    auto z_matching = mwpm(build_matching_graph(defects.z_stabilizer, layout));
    Correction correction =
        matching_to_correction(defects.x_stabilizer, x_matching, defects.z_stabilizer, z_matching, layout);
    return logical_failure(record.final_data, correction, layout);
}

}  // namespace leaksim
