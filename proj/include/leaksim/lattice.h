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

#ifndef LEAKSIM_LATTICE_H
#define LEAKSIM_LATTICE_H

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace leaksim {

/// X-type stabilizers live on plaquettes and detect Z errors; Z-type
/// stabilizers live on vertices and detect X errors.
enum class StabilizerType : uint8_t { X, Z };

/// A cell (plaquette) or vertex position on the d x d torus.
struct Coord {
    int row = 0;
    int col = 0;
    bool operator==(const Coord &) const = default;
};

/// Manhattan distance on the d x d torus, each axis wrapping independently.
int torus_distance(Coord a, Coord b, int d);

/// Geometry of the distance-d toric code.
///
/// Vertex (r, c) owns the horizontal edge h(r, c) joining it to (r, c + 1) and
/// the vertical edge v(r, c) joining it to (r + 1, c). Data qubit indices are
/// h(r, c) = r*d + c and v(r, c) = d*d + r*d + c. Plaquette (r, c) is the cell
/// whose top-left corner is vertex (r, c). Stabilizer index s of either type
/// sits at Coord{s / d, s % d}.
///
/// Supports are stored in the order the syndrome-extraction CNOTs fire:
/// X plaquettes touch (north, west, east, south); Z vertices touch
/// (north, east, west, south). With this interleaving every data qubit is used
/// by exactly one gate per time step, and every overlapping X/Z pair touches
/// its two shared qubits in the same relative order.
class ToricLayout {
   public:
    static constexpr size_t kStepsPerRound = 4;

    int distance() const {
        return d_;
    }
    size_t num_data() const {
        return 2 * static_cast<size_t>(d_) * d_;
    }
    /// Number of stabilizers of each type.
    size_t num_stabilizers() const {
        return static_cast<size_t>(d_) * d_;
    }

    std::span<const uint32_t, 4> support(StabilizerType type, size_t stabilizer) const {
        const auto &table = type == StabilizerType::X ? x_support_ : z_support_;
        return std::span<const uint32_t, 4>(table[stabilizer]);
    }
    /// The two stabilizers of the given type that contain the data qubit.
    std::span<const uint32_t, 2> stabilizers_of(StabilizerType type, uint32_t data) const {
        const auto &table = type == StabilizerType::X ? x_of_data_ : z_of_data_;
        return std::span<const uint32_t, 2>(table[data]);
    }

    Coord coord(size_t stabilizer) const {
        return {static_cast<int>(stabilizer) / d_, static_cast<int>(stabilizer) % d_};
    }
    size_t index(Coord c) const;

    uint32_t horizontal_edge(int row, int col) const;
    uint32_t vertical_edge(int row, int col) const;

    /// X-type logical operators (primal non-contractible loops). Their X
    /// parts anticommute with the conjugate z_logicals()[k] and no other.
    const std::array<std::vector<uint32_t>, 2> &x_logicals() const {
        return x_logicals_;
    }
    const std::array<std::vector<uint32_t>, 2> &z_logicals() const {
        return z_logicals_;
    }

    /// Data qubits along one minimal path between two stabilizers of the same
    /// type. Flipping them (X for Z-type, Z for X-type) toggles exactly the two
    /// endpoint syndromes. Columns are walked first, then rows.
    std::vector<uint32_t> path(StabilizerType type, Coord from, Coord to) const;

    /// Data qubit an ancilla exchanges roles with under the SWAP leakage
    /// reduction circuit: the last qubit of its CNOT schedule. Every data qubit
    /// is the partner of exactly one stabilizer.
    uint32_t swap_partner(StabilizerType type, size_t stabilizer) const {
        return support(type, stabilizer)[kStepsPerRound - 1];
    }

   private:
    friend ToricLayout build_layout(int d);
    int d_ = 0;
    std::vector<std::array<uint32_t, 4>> x_support_;
    std::vector<std::array<uint32_t, 4>> z_support_;
    std::vector<std::array<uint32_t, 2>> x_of_data_;
    std::vector<std::array<uint32_t, 2>> z_of_data_;
    std::array<std::vector<uint32_t>, 2> x_logicals_;
    std::array<std::vector<uint32_t>, 2> z_logicals_;
};

/// Throws std::invalid_argument unless d is odd and at least 3.
ToricLayout build_layout(int d);

}  // namespace leaksim

#endif
