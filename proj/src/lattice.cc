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

#include "leaksim/lattice.h"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace leaksim {

namespace {

int wrap(int v, int d) {
    v %= d;
    return v < 0 ? v + d : v;
}

int axis_distance(int a, int b, int d) {
    int delta = std::abs(a - b) % d;
    return std::min(delta, d - delta);
}

// Signed step count along one axis, taking the shorter way around.
int axis_step(int from, int to, int d) {
    int forward = wrap(to - from, d);
    return forward <= d - forward ? forward : forward - d;
}

}  // namespace

int torus_distance(Coord a, Coord b, int d) {
    return axis_distance(a.row, b.row, d) + axis_distance(a.col, b.col, d);
}

size_t ToricLayout::index(Coord c) const {
    return static_cast<size_t>(wrap(c.row, d_)) * d_ + wrap(c.col, d_);
}

uint32_t ToricLayout::horizontal_edge(int row, int col) const {
    return static_cast<uint32_t>(wrap(row, d_) * d_ + wrap(col, d_));
}

uint32_t ToricLayout::vertical_edge(int row, int col) const {
    return static_cast<uint32_t>(d_ * d_ + wrap(row, d_) * d_ + wrap(col, d_));
}

std::vector<uint32_t> ToricLayout::path(StabilizerType type, Coord from, Coord to) const {
    std::vector<uint32_t> out;
    int dc = axis_step(from.col, to.col, d_);
    int dr = axis_step(from.row, to.row, d_);
    int r = from.row;
    int c = from.col;
    for (; dc != 0; dc += dc > 0 ? -1 : 1) {
        if (type == StabilizerType::Z) {
            out.push_back(horizontal_edge(r, dc > 0 ? c : c - 1));
        } else {
            out.push_back(vertical_edge(r, dc > 0 ? c + 1 : c));
        }
        c += dc > 0 ? 1 : -1;
    }
    for (; dr != 0; dr += dr > 0 ? -1 : 1) {
        if (type == StabilizerType::Z) {
            out.push_back(vertical_edge(dr > 0 ? r : r - 1, c));
        } else {
            out.push_back(horizontal_edge(dr > 0 ? r + 1 : r, c));
        }
        r += dr > 0 ? 1 : -1;
    }
    return out;
}

ToricLayout build_layout(int d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("code distance must be odd and >= 3, got " + std::to_string(d));
    }
    ToricLayout layout;
    layout.d_ = d;
    size_t n = static_cast<size_t>(d) * d;
    layout.x_support_.resize(n);
    layout.z_support_.resize(n);
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            size_t s = static_cast<size_t>(r) * d + c;
            // Plaquette: north, west, east, south.
            layout.x_support_[s] = {
                layout.horizontal_edge(r, c),
                layout.vertical_edge(r, c),
                layout.vertical_edge(r, c + 1),
                layout.horizontal_edge(r + 1, c),
            };
            // Vertex: north, east, west, south.
            layout.z_support_[s] = {
                layout.vertical_edge(r - 1, c),
                layout.horizontal_edge(r, c),
                layout.horizontal_edge(r, c - 1),
                layout.vertical_edge(r, c),
            };
        }
    }

    auto invert = [&](const std::vector<std::array<uint32_t, 4>> &support) {
        std::vector<std::array<uint32_t, 2>> out(layout.num_data());
        std::vector<uint8_t> seen(layout.num_data(), 0);
        for (size_t s = 0; s < support.size(); s++) {
            for (uint32_t q : support[s]) {
                if (seen[q] >= 2) {
                    throw std::logic_error("data qubit in more than two stabilizers");
                }
                out[q][seen[q]++] = static_cast<uint32_t>(s);
            }
        }
        return out;
    };
    layout.x_of_data_ = invert(layout.x_support_);
    layout.z_of_data_ = invert(layout.z_support_);

    for (int k = 0; k < d; k++) {
        layout.x_logicals_[0].push_back(layout.horizontal_edge(0, k));
        layout.x_logicals_[1].push_back(layout.vertical_edge(k, 0));
        layout.z_logicals_[0].push_back(layout.horizontal_edge(k, 0));
        layout.z_logicals_[1].push_back(layout.vertical_edge(0, k));
    }
    return layout;
}

}  // namespace leaksim
