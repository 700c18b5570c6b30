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

#ifndef LEAKSIM_SIMULATOR_H
#define LEAKSIM_SIMULATOR_H

#include <cstdint>
#include <vector>

#include "leaksim/channels.h"
#include "leaksim/config.h"
#include "leaksim/lattice.h"
#include "leaksim/random_source.h"

namespace leaksim {

/// Pauli frame of one physical qubit plus its leakage flag. While `leaked` is
/// set the frame bits carry no information.
struct QubitState {
    bool x_flip = false;
    bool z_flip = false;
    bool leaked = false;
    bool operator==(const QubitState &) const = default;
};

/// XORs a Pauli outcome into the frame. Identity and Leak leave it unchanged.
void apply_pauli(QubitState &qubit, FaultOutcome pauli);

enum class Species : uint8_t { Hyperfine, Zeeman };
enum class Role : uint8_t { Data, Ancilla };

struct SyndromeRound {
    std::vector<uint8_t> x_outcomes;
    std::vector<uint8_t> z_outcomes;
    int round_index = 0;
    bool operator==(const SyndromeRound &) const = default;
};

struct LeakEvent {
    enum class Kind : uint8_t {
        Leaked,
        Returned,
        Reinitialized,
        /// A CNOT executed with at least one leaked participant.
        CorruptGate,
        /// Leaked data measured out (depolarized) when the trial ends.
        ReleasedAtEnd,
    };
    int round = 0;
    uint32_t qubit = 0;
    Role role = Role::Data;
    Kind kind = Kind::Leaked;
    bool operator==(const LeakEvent &) const = default;
};

struct TrialRecord {
    /// Noisy rounds followed by one noiseless round.
    std::vector<SyndromeRound> history;
    /// Indexed by data position (layout data index).
    std::vector<QubitState> final_data;
    /// Empty unless TrialConfig::record_leak_events is set.
    std::vector<LeakEvent> leak_events;
    bool operator==(const TrialRecord &) const = default;
};

/// Channels resolved from a TrialConfig, shared read-only across trials.
struct NoiseModel {
    explicit NoiseModel(const TrialConfig &config);

    Architecture arch;
    LeakageModel model;
    LeakedReadout leaked_readout;
    bool idle_dephasing;
    Channel hyperfine_two_qubit;
    Channel zeeman_two_qubit;
    Channel hyperfine_one_qubit;
    Channel zeeman_one_qubit;
    Channel dephasing;

    const Channel &two_qubit(Species s) const {
        return s == Species::Hyperfine ? hyperfine_two_qubit : zeeman_two_qubit;
    }
    const Channel &one_qubit(Species s) const {
        return s == Species::Hyperfine ? hyperfine_one_qubit : zeeman_one_qubit;
    }
};

/// Physical qubits of a toric code patch and the role each one plays.
///
/// Physical qubits start as data 0..2d^2-1, then X ancillas, then Z ancillas.
/// Under the SWAP-LRC the mapping from layout positions to physical qubits is
/// permuted every round; otherwise it is the identity.
class SimState {
   public:
    SimState(const ToricLayout &layout, Architecture arch);

    QubitState &data(uint32_t position) {
        return qubits_[data_phys_[position]];
    }
    const QubitState &data(uint32_t position) const {
        return qubits_[data_phys_[position]];
    }
    QubitState &ancilla(StabilizerType type, size_t stabilizer) {
        return qubits_[ancilla_physical(type, stabilizer)];
    }
    QubitState &physical(uint32_t q) {
        return qubits_[q];
    }
    uint32_t data_physical(uint32_t position) const {
        return data_phys_[position];
    }
    uint32_t ancilla_physical(StabilizerType type, size_t stabilizer) const {
        return anc_phys_[(type == StabilizerType::X ? 0 : num_stabilizers_) + stabilizer];
    }
    Species species(uint32_t q) const {
        return species_[q];
    }
    Role role(uint32_t q) const {
        return role_[q];
    }
    size_t num_physical() const {
        return qubits_.size();
    }

    /// Exchanges which physical qubits serve as the ancilla and as the data
    /// qubit at `position`.
    void exchange_roles(StabilizerType type, size_t stabilizer, uint32_t position);

    std::vector<QubitState> data_frame() const;

    int round = 0;
    bool record_events = false;
    std::vector<LeakEvent> events;

   private:
    size_t num_stabilizers_;
    std::vector<QubitState> qubits_;
    std::vector<Species> species_;
    std::vector<Role> role_;
    std::vector<uint32_t> data_phys_;
    std::vector<uint32_t> anc_phys_;
};

/// CNOT conjugation of the frame: X spreads control to target, Z spreads
/// target to control. Neither qubit may be leaked.
void propagate_cnot(QubitState &control, QubitState &target);

/// CNOT with at least one leaked participant. Depolarizing: the unleaked
/// partner is fully depolarized. Molmer-Sorensen: no entangling action; a
/// target with a leaked control gets a bit twirl, a control with a leaked
/// target gets a phase twirl. Both leaked is a no-op. Throws
/// std::invalid_argument when neither is leaked.
template <typename Source>
void leak_interaction(QubitState &control, QubitState &target, LeakageModel model, Source &source);

enum class NoiseEffect : uint8_t { None, Leaked, Returned };

/// Scattering after a gate. An unleaked qubit takes the channel outcome. A
/// leaked one returns with the channel's leak probability, landing in a
/// uniformly random frame.
template <typename Source>
NoiseEffect apply_gate_noise(QubitState &qubit, const Channel &channel, Source &source, const FaultSite &site);

/// One round of syndrome extraction: ancilla reset, preparation, the four CNOT
/// layers (plus the extra SWAP-LRC gate and role exchange for the hyperfine
/// architecture), then readout.
template <typename Source>
SyndromeRound extraction_round(SimState &state, const ToricLayout &layout, const NoiseModel &noise, Source &source);

/// The noiseless syndrome of the current data frame.
SyndromeRound perfect_round(const SimState &state, const ToricLayout &layout);

/// effective_rounds() noisy rounds and a final perfect one. Leaked data left
/// at the end is measured out into a uniformly random frame.
template <typename Source>
TrialRecord run_trial(const TrialConfig &config, const ToricLayout &layout, const NoiseModel &noise, Source &source);

/// Convenience overload seeding a TrialRng from config.seed.
TrialRecord run_trial(const TrialConfig &config);

}  // namespace leaksim

#endif
