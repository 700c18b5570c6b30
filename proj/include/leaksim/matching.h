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

#ifndef LEAKSIM_MATCHING_H
#define LEAKSIM_MATCHING_H

#include <cstdint>
#include <vector>

namespace leaksim {

struct WeightedEdge {
    uint32_t u;
    uint32_t v;
    int64_t weight;
};

/// Maximum-weight matching on a general graph with Edmonds' blossom algorithm
/// and primal-dual weight adjustment, O(V^3). When max_cardinality is set the
/// result is the heaviest among maximum-cardinality matchings.
///
/// Returns mate[v] (or -1 for unmatched vertices) over num_vertices vertices.
/// Weights must be integers; all dual arithmetic stays integral.
std::vector<int32_t> max_weight_matching(
    size_t num_vertices, const std::vector<WeightedEdge> &edges, bool max_cardinality);

/// Exact minimum-weight perfect matching on the complete graph whose edge
/// weights are given row-major in `weights` (n x n, symmetric, non-negative).
/// Throws std::invalid_argument for odd n.
std::vector<int32_t> min_weight_perfect_matching(size_t n, const std::vector<int64_t> &weights);

}  // namespace leaksim

#endif
