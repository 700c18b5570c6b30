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

#include "leaksim/simulator.h"

#include <stdexcept>

namespace leaksim {

void apply_pauli(QubitState &qubit, FaultOutcome pauli) {
    switch (pauli) {
        case FaultOutcome::PauliX:
            qubit.x_flip ^= true;
            break;
        case FaultOutcome::PauliY:
            qubit.x_flip ^= true;
            qubit.z_flip ^= true;
            break;
        case FaultOutcome::PauliZ:
            qubit.z_flip ^= true;
            break;
        case FaultOutcome::Identity:
        case FaultOutcome::Leak:
            break;
    }
}

NoiseModel::NoiseModel(const TrialConfig &config)
    : arch(config.arch),
      model(config.model),
      leaked_readout(config.leaked_readout),
      idle_dephasing(config.noise.idle_dephasing),
      hyperfine_two_qubit(hyperfine_scatter_channel(config.noise.p_s_2q)),
      zeeman_two_qubit(zeeman_scatter_channel(config.noise.p_s_2q)),
      hyperfine_one_qubit(hyperfine_scatter_channel(config.noise.p_s_1q)),
      zeeman_one_qubit(zeeman_scatter_channel(config.noise.p_s_1q)),
      dephasing(dephasing_channel(config.noise.p_M)) {
}

SimState::SimState(const ToricLayout &layout, Architecture arch) : num_stabilizers_(layout.num_stabilizers()) {
    size_t n_data = layout.num_data();
    size_t n_anc = 2 * num_stabilizers_;
    qubits_.resize(n_data + n_anc);
    species_.resize(n_data + n_anc);
    role_.resize(n_data + n_anc);
    data_phys_.resize(n_data);
    anc_phys_.resize(n_anc);
    for (uint32_t q = 0; q < n_data + n_anc; q++) {
        bool is_data = q < n_data;
        role_[q] = is_data ? Role::Data : Role::Ancilla;
        switch (arch) {
            case Architecture::HyperfineWithSwapLrc:
                species_[q] = Species::Hyperfine;
                break;
            case Architecture::PureZeeman:
                species_[q] = Species::Zeeman;
                break;
            case Architecture::MixedSpecies:
                species_[q] = is_data ? Species::Zeeman : Species::Hyperfine;
                break;
        }
        if (is_data) {
            data_phys_[q] = q;
        } else {
            anc_phys_[q - n_data] = q;
        }
    }
}

void SimState::exchange_roles(StabilizerType type, size_t stabilizer, uint32_t position) {
    uint32_t &anc = anc_phys_[(type == StabilizerType::X ? 0 : num_stabilizers_) + stabilizer];
    uint32_t &dat = data_phys_[position];
    std::swap(anc, dat);
    role_[anc] = Role::Ancilla;
    role_[dat] = Role::Data;
}

std::vector<QubitState> SimState::data_frame() const {
    std::vector<QubitState> out;
    out.reserve(data_phys_.size());
    for (uint32_t q : data_phys_) {
        out.push_back(qubits_[q]);
    }
    return out;
}

void propagate_cnot(QubitState &control, QubitState &target) {
    target.x_flip ^= control.x_flip;
    control.z_flip ^= target.z_flip;
}

template <typename Source>
void leak_interaction(QubitState &control, QubitState &target, LeakageModel model, Source &source) {
    if (!control.leaked && !target.leaked) {
        throw std::invalid_argument("leak_interaction requires a leaked participant");
    }
    if (control.leaked && target.leaked) {
        return;
    }
    QubitState &partner = control.leaked ? target : control;
    if (model == LeakageModel::Depolarizing) {
        static const Channel kDepolarize = depolarize_channel();
        apply_pauli(partner, source.consequence(kDepolarize));
    } else if (control.leaked) {
        static const Channel kBit = bit_twirl_channel();
        apply_pauli(partner, source.consequence(kBit));
    } else {
        static const Channel kPhase = phase_twirl_channel();
        apply_pauli(partner, source.consequence(kPhase));
    }
}

template <typename Source>
NoiseEffect apply_gate_noise(QubitState &qubit, const Channel &channel, Source &source, const FaultSite &site) {
    if (channel.is_identity()) {
        return NoiseEffect::None;
    }
    if (qubit.leaked) {
        if (!channel.can_leak()) {
            return NoiseEffect::None;
        }
        // Same event that leaks a qubit brings a leaked one back.
        if (source.fault(channel, site) != FaultOutcome::Leak) {
            return NoiseEffect::None;
        }
        static const Channel kDepolarize = depolarize_channel();
        qubit = QubitState{};
        apply_pauli(qubit, source.consequence(kDepolarize));
        return NoiseEffect::Returned;
    }
    FaultOutcome outcome = source.fault(channel, site);
    if (outcome == FaultOutcome::Leak) {
        qubit.leaked = true;
        return NoiseEffect::Leaked;
    }
    apply_pauli(qubit, outcome);
    return NoiseEffect::None;
}

namespace {

template <typename Source>
class RoundRunner {
   public:
    RoundRunner(SimState &state, const ToricLayout &layout, const NoiseModel &noise, Source &source)
        : state_(state), layout_(layout), noise_(noise), source_(source), busy_(state.num_physical(), 0) {
    }

    SyndromeRound run() {
        const size_t n = layout_.num_stabilizers();
        const bool swap_lrc = noise_.arch == Architecture::HyperfineWithSwapLrc;

        for (StabilizerType type : {StabilizerType::X, StabilizerType::Z}) {
            for (size_t s = 0; s < n; s++) {
                uint32_t a = state_.ancilla_physical(type, s);
                QubitState &q = state_.physical(a);
                if (q.leaked) {
                    log(a, LeakEvent::Kind::Reinitialized);
                }
                q = QubitState{};
            }
        }
        for (StabilizerType type : {StabilizerType::X, StabilizerType::Z}) {
            for (size_t s = 0; s < n; s++) {
                uint32_t a = state_.ancilla_physical(type, s);
                busy_[a] = 1;
                single_qubit_noise(a, SiteKind::Preparation);
            }
        }
        idle_step(-1);

        for (int step = 0; step < static_cast<int>(ToricLayout::kStepsPerRound); step++) {
            bool reversed = swap_lrc && step == static_cast<int>(ToricLayout::kStepsPerRound) - 1;
            cnot_layer(step, reversed);
        }
        if (swap_lrc) {
            // CNOT(a->q) followed by SWAP(a, q) equals CNOT(q->a) then
            // CNOT(a->q); the last layer ran reversed, this completes it.
            cnot_layer(static_cast<int>(ToricLayout::kStepsPerRound), false);
            for (StabilizerType type : {StabilizerType::X, StabilizerType::Z}) {
                for (size_t s = 0; s < n; s++) {
                    state_.exchange_roles(type, s, layout_.swap_partner(type, s));
                }
            }
        }

        SyndromeRound out;
        out.round_index = state_.round;
        out.x_outcomes.resize(n);
        out.z_outcomes.resize(n);
        std::fill(busy_.begin(), busy_.end(), 0);
        for (StabilizerType type : {StabilizerType::X, StabilizerType::Z}) {
            auto &outcomes = type == StabilizerType::X ? out.x_outcomes : out.z_outcomes;
            for (size_t s = 0; s < n; s++) {
                uint32_t a = state_.ancilla_physical(type, s);
                busy_[a] = 1;
                single_qubit_noise(a, SiteKind::Measurement);
                const QubitState &q = state_.physical(a);
                if (q.leaked) {
                    outcomes[s] = read_leaked();
                } else {
                    outcomes[s] = type == StabilizerType::X ? q.z_flip : q.x_flip;
                }
            }
        }
        idle_step(static_cast<int>(ToricLayout::kStepsPerRound) + 1);
        return out;
    }

   private:
    void log(uint32_t q, LeakEvent::Kind kind) {
        if (state_.record_events) {
            state_.events.push_back({state_.round, q, state_.role(q), kind});
        }
    }

    void note_effect(uint32_t q, NoiseEffect effect) {
        if (effect == NoiseEffect::Leaked) {
            if (noise_.arch == Architecture::MixedSpecies && state_.role(q) == Role::Data) {
                throw std::logic_error("data qubit leaked in the mixed-species architecture");
            }
            log(q, LeakEvent::Kind::Leaked);
        } else if (effect == NoiseEffect::Returned) {
            log(q, LeakEvent::Kind::Returned);
        }
    }

    void single_qubit_noise(uint32_t q, SiteKind kind) {
        FaultSite site{state_.round, -1, q, kind};
        note_effect(q, apply_gate_noise(state_.physical(q), noise_.one_qubit(state_.species(q)), source_, site));
    }

    void dephase(uint32_t q, int step, SiteKind kind) {
        QubitState &qubit = state_.physical(q);
        if (state_.species(q) != Species::Zeeman || qubit.leaked || noise_.dephasing.is_identity()) {
            return;
        }
        apply_pauli(qubit, source_.fault(noise_.dephasing, FaultSite{state_.round, step, q, kind}));
    }

    void idle_step(int step) {
        if (noise_.idle_dephasing) {
            for (uint32_t q = 0; q < state_.num_physical(); q++) {
                if (!busy_[q]) {
                    dephase(q, step, SiteKind::IdleDephasing);
                }
            }
        }
        std::fill(busy_.begin(), busy_.end(), 0);
    }

    void cnot(uint32_t control, uint32_t target, int step) {
        QubitState &c = state_.physical(control);
        QubitState &t = state_.physical(target);
        if (c.leaked || t.leaked) {
            log(c.leaked ? control : target, LeakEvent::Kind::CorruptGate);
            leak_interaction(c, t, noise_.model, source_);
        } else {
            propagate_cnot(c, t);
        }
        for (uint32_t q : {control, target}) {
            FaultSite site{state_.round, step, q, SiteKind::TwoQubitGate};
            note_effect(q, apply_gate_noise(state_.physical(q), noise_.two_qubit(state_.species(q)), source_, site));
        }
        dephase(control, step, SiteKind::Dephasing);
        dephase(target, step, SiteKind::Dephasing);
        busy_[control] = 1;
        busy_[target] = 1;
    }

    void cnot_layer(int step, bool reversed) {
        const size_t n = layout_.num_stabilizers();
        size_t slot = std::min<size_t>(static_cast<size_t>(step), ToricLayout::kStepsPerRound - 1);
        for (size_t s = 0; s < n; s++) {
            uint32_t a = state_.ancilla_physical(StabilizerType::X, s);
            uint32_t q = state_.data_physical(layout_.support(StabilizerType::X, s)[slot]);
            if (reversed) {
                cnot(q, a, step);
            } else {
                cnot(a, q, step);
            }
        }
        for (size_t s = 0; s < n; s++) {
            uint32_t a = state_.ancilla_physical(StabilizerType::Z, s);
            uint32_t q = state_.data_physical(layout_.support(StabilizerType::Z, s)[slot]);
            if (reversed) {
                cnot(a, q, step);
            } else {
                cnot(q, a, step);
            }
        }
        idle_step(step);
    }

    uint8_t read_leaked() {
        if (noise_.leaked_readout == LeakedReadout::Bright) {
            return 1;
        }
        static const Channel kCoin = bit_twirl_channel();
        return source_.consequence(kCoin) == FaultOutcome::PauliX ? 1 : 0;
    }

    SimState &state_;
    const ToricLayout &layout_;
    const NoiseModel &noise_;
    Source &source_;
    std::vector<uint8_t> busy_;
};

}  // namespace

template <typename Source>
SyndromeRound extraction_round(SimState &state, const ToricLayout &layout, const NoiseModel &noise, Source &source) {
    return RoundRunner<Source>(state, layout, noise, source).run();
}

SyndromeRound perfect_round(const SimState &state, const ToricLayout &layout) {
    const size_t n = layout.num_stabilizers();
    SyndromeRound out;
    out.round_index = state.round;
    out.x_outcomes.assign(n, 0);
    out.z_outcomes.assign(n, 0);
    for (size_t s = 0; s < n; s++) {
        for (uint32_t q : layout.support(StabilizerType::X, s)) {
            out.x_outcomes[s] ^= state.data(q).z_flip;
        }
        for (uint32_t q : layout.support(StabilizerType::Z, s)) {
            out.z_outcomes[s] ^= state.data(q).x_flip;
        }
    }
    return out;
}

template <typename Source>
TrialRecord run_trial(const TrialConfig &config, const ToricLayout &layout, const NoiseModel &noise, Source &source) {
    SimState state(layout, config.arch);
    state.record_events = config.record_leak_events;
    TrialRecord record;
    int rounds = config.effective_rounds();
    record.history.reserve(rounds + 1);
    for (int t = 0; t < rounds; t++) {
        state.round = t;
        record.history.push_back(extraction_round(state, layout, noise, source));
    }
    state.round = rounds;
    static const Channel kDepolarize = depolarize_channel();
    for (uint32_t q = 0; q < layout.num_data(); q++) {
        QubitState &qubit = state.data(q);
        if (qubit.leaked) {
            if (state.record_events) {
                state.events.push_back({rounds, state.data_physical(q), Role::Data, LeakEvent::Kind::ReleasedAtEnd});
            }
            qubit = QubitState{};
            apply_pauli(qubit, source.consequence(kDepolarize));
        }
    }
    record.history.push_back(perfect_round(state, layout));
    record.final_data = state.data_frame();
    record.leak_events = std::move(state.events);
    return record;
}

TrialRecord run_trial(const TrialConfig &config) {
    config.validate();
    ToricLayout layout = build_layout(config.d);
    NoiseModel noise(config);
    TrialRng rng(config.seed);
    return run_trial(config, layout, noise, rng);
}

template void leak_interaction(QubitState &, QubitState &, LeakageModel, TrialRng &);
template void leak_interaction(QubitState &, QubitState &, LeakageModel, FaultInjector &);
template NoiseEffect apply_gate_noise(QubitState &, const Channel &, TrialRng &, const FaultSite &);
template NoiseEffect apply_gate_noise(QubitState &, const Channel &, FaultInjector &, const FaultSite &);
template SyndromeRound extraction_round(SimState &, const ToricLayout &, const NoiseModel &, TrialRng &);
template SyndromeRound extraction_round(SimState &, const ToricLayout &, const NoiseModel &, FaultInjector &);
template TrialRecord run_trial(const TrialConfig &, const ToricLayout &, const NoiseModel &, TrialRng &);
template TrialRecord run_trial(const TrialConfig &, const ToricLayout &, const NoiseModel &, FaultInjector &);

}  // namespace leaksim
