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

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <gtest/gtest.h>
#include <map>
#include <set>

using namespace leaksim;

namespace {

// Dense 4x4 matrices for conjugating two-qubit Paulis through a CNOT.
using Mat2 = std::array<std::complex<double>, 4>;
using Mat4 = std::array<std::complex<double>, 16>;

Mat2 pauli(bool x, bool z) {
    const std::complex<double> i(0, 1);
    if (x && z) {
        return {0, -i, i, 0};
    }
    if (x) {
        return {0, 1, 1, 0};
    }
    if (z) {
        return {1, 0, 0, -1};
    }
    return {1, 0, 0, 1};
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 out{};
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            out[r * 4 + c] = a[(r / 2) * 2 + c / 2] * b[(r % 2) * 2 + c % 2];
        }
    }
    return out;
}

Mat4 mul(const Mat4 &a, const Mat4 &b) {
    Mat4 out{};
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            for (int k = 0; k < 4; k++) {
                out[r * 4 + c] += a[r * 4 + k] * b[k * 4 + c];
            }
        }
    }
    return out;
}

bool proportional(const Mat4 &a, const Mat4 &b) {
    std::complex<double> ratio = 0;
    for (int k = 0; k < 16; k++) {
        if (std::abs(b[k]) > 1e-9) {
            ratio = a[k] / b[k];
            break;
        }
    }
    if (std::abs(std::abs(ratio) - 1) > 1e-9) {
        return false;
    }
    for (int k = 0; k < 16; k++) {
        if (std::abs(a[k] - ratio * b[k]) > 1e-9) {
            return false;
        }
    }
    return true;
}

TrialConfig quiet_config(Architecture arch, LeakageModel model, int d = 3) {
    TrialConfig c;
    c.arch = arch;
    c.model = model;
    c.d = d;
    c.noise = NoiseParams::from_scatter(1e-3, 10.0);
    return c;
}

size_t find_site(const std::vector<FaultInjector::RecordedSite> &sites, const std::function<bool(const FaultSite &)> &pred) {
    for (size_t k = 0; k < sites.size(); k++) {
        if (pred(sites[k].site)) {
            return k;
        }
    }
    ADD_FAILURE() << "site not found";
    return 0;
}

std::vector<FaultInjector::RecordedSite> record_sites(const TrialConfig &config, const ToricLayout &layout) {
    NoiseModel noise(config);
    FaultInjector recorder;
    run_trial(config, layout, noise, recorder);
    return recorder.sites();
}

struct Branch {
    TrialRecord record;
    double probability;
};

std::vector<Branch> all_branches(const TrialConfig &config, const ToricLayout &layout, size_t site, FaultOutcome outcome) {
    NoiseModel noise(config);
    FaultInjector injector(site, outcome);
    std::vector<Branch> out;
    do {
        TrialRecord record = run_trial(config, layout, noise, injector);
        out.push_back({record, injector.branch_probability()});
    } while (injector.next_branch());
    return out;
}

}  // namespace

TEST(simulator, cnot_matches_matrix_conjugation) {
    const std::complex<double> o = 1;
    Mat4 cnot{o, 0, 0, 0, 0, o, 0, 0, 0, 0, 0, o, 0, 0, o, 0};
    for (int bits = 0; bits < 16; bits++) {
        QubitState c{bool(bits & 1), bool(bits & 2), false};
        QubitState t{bool(bits & 4), bool(bits & 8), false};
        Mat4 conj = mul(mul(cnot, kron(pauli(c.x_flip, c.z_flip), pauli(t.x_flip, t.z_flip))), cnot);
        propagate_cnot(c, t);
        EXPECT_TRUE(proportional(conj, kron(pauli(c.x_flip, c.z_flip), pauli(t.x_flip, t.z_flip)))) << bits;
    }
}

TEST(simulator, cnot_examples) {
    QubitState c{true, false, false};
    QubitState t{};
    propagate_cnot(c, t);
    EXPECT_EQ(c, (QubitState{true, false, false}));
    EXPECT_EQ(t, (QubitState{true, false, false}));

    c = {};
    t = {false, true, false};
    propagate_cnot(c, t);
    EXPECT_EQ(c, (QubitState{false, true, false}));
    EXPECT_EQ(t, (QubitState{false, true, false}));

    c = {true, true, false};
    t = {};
    propagate_cnot(c, t);
    EXPECT_EQ(c, (QubitState{true, true, false}));
    EXPECT_EQ(t, (QubitState{true, false, false}));
}

TEST(simulator, apply_pauli) {
    QubitState q;
    apply_pauli(q, FaultOutcome::PauliY);
    EXPECT_EQ(q, (QubitState{true, true, false}));
    apply_pauli(q, FaultOutcome::PauliX);
    EXPECT_EQ(q, (QubitState{false, true, false}));
    apply_pauli(q, FaultOutcome::Leak);
    apply_pauli(q, FaultOutcome::Identity);
    EXPECT_EQ(q, (QubitState{false, true, false}));
}

TEST(simulator, leak_interaction_needs_a_leaked_qubit) {
    QubitState c;
    QubitState t;
    TrialRng rng(1);
    EXPECT_THROW(leak_interaction(c, t, LeakageModel::Depolarizing, rng), std::invalid_argument);
}

TEST(simulator, leak_interaction_branches) {
    struct Case {
        LeakageModel model;
        bool control_leaked;
        bool target_leaked;
        // Partner frame (x, z) -> probability.
        std::map<std::pair<bool, bool>, double> expected;
    };
    std::vector<Case> cases = {
        {LeakageModel::MolmerSorensen, true, false, {{{false, false}, 0.5}, {{true, false}, 0.5}}},
        {LeakageModel::MolmerSorensen, false, true, {{{false, false}, 0.5}, {{false, true}, 0.5}}},
        {LeakageModel::Depolarizing,
         true,
         false,
         {{{false, false}, 0.25}, {{true, false}, 0.25}, {{true, true}, 0.25}, {{false, true}, 0.25}}},
        {LeakageModel::Depolarizing,
         false,
         true,
         {{{false, false}, 0.25}, {{true, false}, 0.25}, {{true, true}, 0.25}, {{false, true}, 0.25}}},
        {LeakageModel::MolmerSorensen, true, true, {{{false, false}, 1.0}}},
        {LeakageModel::Depolarizing, true, true, {{{false, false}, 1.0}}},
    };
    for (const Case &tc : cases) {
        FaultInjector source;
        std::map<std::pair<bool, bool>, double> seen;
        do {
            QubitState c{false, false, tc.control_leaked};
            QubitState t{false, false, tc.target_leaked};
            leak_interaction(c, t, tc.model, source);
            EXPECT_EQ(c.leaked, tc.control_leaked);
            EXPECT_EQ(t.leaked, tc.target_leaked);
            const QubitState &partner = tc.control_leaked && !tc.target_leaked ? t : c;
            const QubitState &leaked = tc.control_leaked && !tc.target_leaked ? c : t;
            EXPECT_FALSE(leaked.x_flip || leaked.z_flip);
            seen[{partner.x_flip, partner.z_flip}] += source.branch_probability();
        } while (source.next_branch());
        EXPECT_EQ(seen, tc.expected);
    }
}

TEST(simulator, leaked_qubit_without_leak_channel_stays_leaked) {
    TrialRng rng(3);
    Channel zeeman = zeeman_scatter_channel(0.5);
    for (int k = 0; k < 10000; k++) {
        QubitState q{false, false, true};
        EXPECT_EQ(apply_gate_noise(q, zeeman, rng, FaultSite{}), NoiseEffect::None);
        EXPECT_TRUE(q.leaked);
    }
}

TEST(simulator, leaked_qubit_returns_depolarized) {
    const uint64_t n = 1000000;
    TrialRng rng(4);
    Channel c = hyperfine_scatter_channel(0.4);
    uint64_t returned = 0;
    std::array<uint64_t, 4> frames{};
    for (uint64_t k = 0; k < n; k++) {
        QubitState q{true, false, true};
        NoiseEffect e = apply_gate_noise(q, c, rng, FaultSite{});
        if (e == NoiseEffect::Returned) {
            EXPECT_FALSE(q.leaked);
            returned++;
            frames[q.x_flip + 2 * q.z_flip]++;
        } else {
            EXPECT_TRUE(q.leaked);
        }
    }
    EXPECT_LE(std::abs(returned - n * 0.1), 5 * std::sqrt(n * 0.1 * 0.9));
    for (uint64_t f : frames) {
        EXPECT_LE(std::abs(f - returned * 0.25), 5 * std::sqrt(returned * 0.25 * 0.75));
    }
}

TEST(simulator, unleaked_qubit_takes_channel_outcome) {
    TrialRng rng(5);
    Channel c = hyperfine_scatter_channel(1.0);
    int leaks = 0;
    for (int k = 0; k < 1000; k++) {
        QubitState q;
        NoiseEffect e = apply_gate_noise(q, c, rng, FaultSite{});
        EXPECT_EQ(e == NoiseEffect::Leaked, q.leaked);
        EXPECT_FALSE(q.z_flip && !q.x_flip);
        leaks += q.leaked;
    }
    EXPECT_GT(leaks, 0);
    QubitState q;
    EXPECT_EQ(apply_gate_noise(q, zeeman_scatter_channel(0), rng, FaultSite{}), NoiseEffect::None);
    EXPECT_EQ(q, QubitState{});
}

TEST(simulator, zero_noise_round_is_silent) {
    for (Architecture arch :
         {Architecture::PureZeeman, Architecture::MixedSpecies, Architecture::HyperfineWithSwapLrc}) {
        TrialConfig config = quiet_config(arch, LeakageModel::Depolarizing, 5);
        config.noise = NoiseParams{};
        TrialRecord record = run_trial(config);
        ASSERT_EQ(record.history.size(), 6u);
        for (const SyndromeRound &r : record.history) {
            EXPECT_EQ(r.x_outcomes, std::vector<uint8_t>(25, 0));
            EXPECT_EQ(r.z_outcomes, std::vector<uint8_t>(25, 0));
        }
        for (const QubitState &q : record.final_data) {
            EXPECT_EQ(q, QubitState{});
        }
    }
}

TEST(simulator, data_error_seen_by_two_checks) {
    ToricLayout layout = build_layout(3);
    for (Architecture arch :
         {Architecture::PureZeeman, Architecture::MixedSpecies, Architecture::HyperfineWithSwapLrc}) {
        TrialConfig config = quiet_config(arch, LeakageModel::MolmerSorensen);
        config.noise = NoiseParams{};
        NoiseModel noise(config);
        for (uint32_t q = 0; q < layout.num_data(); q++) {
            for (bool z : {false, true}) {
                SimState state(layout, arch);
                (z ? state.data(q).z_flip : state.data(q).x_flip) = true;
                TrialRng rng(0);
                for (int round = 0; round < 3; round++) {
                    state.round = round;
                    SyndromeRound r = extraction_round(state, layout, noise, rng);
                    const auto &hit = z ? r.x_outcomes : r.z_outcomes;
                    const auto &quiet = z ? r.z_outcomes : r.x_outcomes;
                    auto checks = layout.stabilizers_of(z ? StabilizerType::X : StabilizerType::Z, q);
                    for (size_t s = 0; s < layout.num_stabilizers(); s++) {
                        bool expected = s == checks[0] || s == checks[1];
                        EXPECT_EQ(hit[s], expected) << name_of(arch) << " q=" << q << " s=" << s;
                        EXPECT_EQ(quiet[s], 0);
                    }
                }
                // The SWAP-LRC moves the error between physical qubits but
                // not between code positions.
                std::vector<QubitState> frame = state.data_frame();
                for (uint32_t p = 0; p < layout.num_data(); p++) {
                    QubitState expected{};
                    if (p == q) {
                        (z ? expected.z_flip : expected.x_flip) = true;
                    }
                    EXPECT_EQ(frame[p], expected);
                }
            }
        }
    }
}

TEST(simulator, ms_leaked_x_ancilla_twirls_its_support) {
    ToricLayout layout = build_layout(3);
    TrialConfig config = quiet_config(Architecture::MixedSpecies, LeakageModel::MolmerSorensen);
    config.rounds = 1;
    auto sites = record_sites(config, layout);
    SimState probe(layout, config.arch);
    const size_t stab = 4;
    uint32_t anc = probe.ancilla_physical(StabilizerType::X, stab);
    size_t site = find_site(sites, [&](const FaultSite &s) {
        return s.kind == SiteKind::Preparation && s.qubit == anc;
    });
    auto support = layout.support(StabilizerType::X, stab);

    std::map<std::vector<uint8_t>, double> patterns;
    for (const Branch &b : all_branches(config, layout, site, FaultOutcome::Leak)) {
        std::vector<uint8_t> flips(4);
        for (uint32_t q = 0; q < layout.num_data(); q++) {
            const QubitState &f = b.record.final_data[q];
            EXPECT_FALSE(f.z_flip);
            auto it = std::find(support.begin(), support.end(), q);
            if (it == support.end()) {
                EXPECT_FALSE(f.x_flip);
            } else {
                flips[it - support.begin()] = f.x_flip;
            }
        }
        patterns[flips] += b.probability;

        // Z check s' sees the flip on q only if it touches q after the
        // twirl at step k.
        std::vector<uint8_t> expected_z(layout.num_stabilizers(), 0);
        for (size_t k = 0; k < 4; k++) {
            if (!flips[k]) {
                continue;
            }
            for (size_t s = 0; s < layout.num_stabilizers(); s++) {
                auto zs = layout.support(StabilizerType::Z, s);
                auto it = std::find(zs.begin(), zs.end(), support[k]);
                if (it != zs.end() && static_cast<size_t>(it - zs.begin()) > k) {
                    expected_z[s] ^= 1;
                }
            }
        }
        EXPECT_EQ(b.record.history[0].z_outcomes, expected_z);
        std::vector<uint8_t> expected_x(layout.num_stabilizers(), 0);
        expected_x[stab] = 1;
        EXPECT_EQ(b.record.history[0].x_outcomes, expected_x);
    }
    ASSERT_EQ(patterns.size(), 16u);
    for (const auto &[flips, p] : patterns) {
        EXPECT_DOUBLE_EQ(p, 1.0 / 16);
    }
}

TEST(simulator, leak_at_first_gate_corrupts_three) {
    ToricLayout layout = build_layout(3);
    for (LeakageModel model : {LeakageModel::MolmerSorensen, LeakageModel::Depolarizing}) {
        for (StabilizerType type : {StabilizerType::X, StabilizerType::Z}) {
            TrialConfig config = quiet_config(Architecture::MixedSpecies, model);
            config.record_leak_events = true;
            auto sites = record_sites(config, layout);
            SimState probe(layout, config.arch);
            uint32_t anc = probe.ancilla_physical(type, 2);
            size_t site = find_site(sites, [&](const FaultSite &s) {
                return s.kind == SiteKind::TwoQubitGate && s.step == 0 && s.round == 1 && s.qubit == anc;
            });
            for (const Branch &b : all_branches(config, layout, site, FaultOutcome::Leak)) {
                int corrupt = 0;
                int reinit = 0;
                for (const LeakEvent &e : b.record.leak_events) {
                    corrupt += e.kind == LeakEvent::Kind::CorruptGate;
                    reinit += e.kind == LeakEvent::Kind::Reinitialized && e.qubit == anc && e.round == 2;
                }
                EXPECT_EQ(corrupt, 3);
                EXPECT_EQ(reinit, 1);
            }
        }
    }
}

TEST(simulator, zeeman_never_leaks) {
    TrialConfig config = quiet_config(Architecture::PureZeeman, LeakageModel::Depolarizing, 3);
    config.noise = NoiseParams::from_scatter(0.05, 32.0);
    config.record_leak_events = true;
    for (uint64_t seed = 0; seed < 300; seed++) {
        config.seed = seed;
        TrialRecord r = run_trial(config);
        EXPECT_TRUE(r.leak_events.empty());
        for (const QubitState &q : r.final_data) {
            EXPECT_FALSE(q.leaked);
        }
    }
}

TEST(simulator, mixed_leaks_live_one_round) {
    TrialConfig config = quiet_config(Architecture::MixedSpecies, LeakageModel::Depolarizing, 3);
    config.noise = NoiseParams::from_scatter(0.08);
    config.rounds = 6;
    config.record_leak_events = true;
    int leaks = 0;
    for (uint64_t seed = 0; seed < 300; seed++) {
        config.seed = seed;
        TrialRecord r = run_trial(config);
        const auto &ev = r.leak_events;
        for (size_t k = 0; k < ev.size(); k++) {
            if (ev[k].kind != LeakEvent::Kind::Leaked) {
                continue;
            }
            leaks++;
            EXPECT_EQ(ev[k].role, Role::Ancilla);
            if (ev[k].round + 1 >= config.rounds) {
                continue;
            }
            bool cleared = false;
            for (size_t j = k + 1; j < ev.size() && !cleared; j++) {
                cleared = ev[j].qubit == ev[k].qubit && ev[j].round <= ev[k].round + 1 &&
                          (ev[j].kind == LeakEvent::Kind::Returned || ev[j].kind == LeakEvent::Kind::Reinitialized);
            }
            EXPECT_TRUE(cleared) << "seed " << seed;
        }
    }
    EXPECT_GT(leaks, 100);
}

TEST(simulator, hyperfine_leaks_cleared_within_two_rounds) {
    TrialConfig config = quiet_config(Architecture::HyperfineWithSwapLrc, LeakageModel::Depolarizing, 3);
    config.noise = NoiseParams::from_scatter(0.08);
    config.rounds = 6;
    config.record_leak_events = true;
    int data_leaks = 0;
    for (uint64_t seed = 0; seed < 300; seed++) {
        config.seed = seed;
        TrialRecord r = run_trial(config);
        const auto &ev = r.leak_events;
        for (size_t k = 0; k < ev.size(); k++) {
            if (ev[k].kind != LeakEvent::Kind::Leaked) {
                continue;
            }
            // Leaked as data in round t: an ancilla from round t + 1 on.
            // Leaked as ancilla: data for round t + 1, ancilla again at t + 2.
            int budget = ev[k].role == Role::Data ? 1 : 2;
            data_leaks += ev[k].role == Role::Data;
            if (ev[k].round + budget >= config.rounds) {
                continue;
            }
            bool cleared = false;
            for (size_t j = k + 1; j < ev.size() && !cleared; j++) {
                cleared = ev[j].qubit == ev[k].qubit && ev[j].round <= ev[k].round + budget &&
                          (ev[j].kind == LeakEvent::Kind::Returned || ev[j].kind == LeakEvent::Kind::Reinitialized);
            }
            EXPECT_TRUE(cleared) << "seed " << seed << " qubit " << ev[k].qubit << " round " << ev[k].round;
        }
    }
    EXPECT_GT(data_leaks, 100);
}

TEST(simulator, hyperfine_leaked_data_released_at_end) {
    TrialConfig config = quiet_config(Architecture::HyperfineWithSwapLrc, LeakageModel::MolmerSorensen, 3);
    config.noise = NoiseParams::from_scatter(0.2);
    config.record_leak_events = true;
    int released = 0;
    for (uint64_t seed = 0; seed < 200; seed++) {
        config.seed = seed;
        TrialRecord r = run_trial(config);
        for (const QubitState &q : r.final_data) {
            EXPECT_FALSE(q.leaked);
        }
        for (const LeakEvent &e : r.leak_events) {
            released += e.kind == LeakEvent::Kind::ReleasedAtEnd;
        }
    }
    EXPECT_GT(released, 0);
}

TEST(simulator, final_round_is_perfect_syndrome_of_frame) {
    ToricLayout layout = build_layout(5);
    TrialConfig config = quiet_config(Architecture::HyperfineWithSwapLrc, LeakageModel::Depolarizing, 5);
    config.noise = NoiseParams::from_scatter(0.02);
    for (uint64_t seed = 0; seed < 50; seed++) {
        config.seed = seed;
        TrialRecord r = run_trial(config);
        ASSERT_EQ(r.history.size(), 6u);
        const SyndromeRound &last = r.history.back();
        EXPECT_EQ(last.round_index, 5);
        for (size_t s = 0; s < layout.num_stabilizers(); s++) {
            uint8_t x = 0;
            uint8_t z = 0;
            for (uint32_t q : layout.support(StabilizerType::X, s)) {
                x ^= r.final_data[q].z_flip;
            }
            for (uint32_t q : layout.support(StabilizerType::Z, s)) {
                z ^= r.final_data[q].x_flip;
            }
            EXPECT_EQ(last.x_outcomes[s], x);
            EXPECT_EQ(last.z_outcomes[s], z);
        }
        for (size_t t = 0; t < r.history.size(); t++) {
            EXPECT_EQ(r.history[t].round_index, static_cast<int>(t));
            EXPECT_EQ(r.history[t].x_outcomes.size(), 25u);
        }
    }
}

TEST(simulator, deterministic_per_seed) {
    for (Architecture arch :
         {Architecture::PureZeeman, Architecture::MixedSpecies, Architecture::HyperfineWithSwapLrc}) {
        TrialConfig config = quiet_config(arch, LeakageModel::Depolarizing, 3);
        config.noise = NoiseParams::from_scatter(0.03, 32.0);
        config.record_leak_events = true;
        config.seed = 99;
        EXPECT_EQ(run_trial(config), run_trial(config));
        int differing = 0;
        TrialRecord base = run_trial(config);
        for (uint64_t seed = 0; seed < 20; seed++) {
            config.seed = seed;
            differing += !(run_trial(config) == base);
        }
        EXPECT_GE(differing, 19);
    }
}

TEST(simulator, idle_dephasing_sites) {
    ToricLayout layout = build_layout(3);
    TrialConfig config = quiet_config(Architecture::PureZeeman, LeakageModel::MolmerSorensen);
    auto count = [&](SiteKind kind) {
        int n = 0;
        for (const auto &s : record_sites(config, layout)) {
            n += s.site.kind == kind;
        }
        return n;
    };
    // Per round: 18 CNOTs per step x 4 steps x 2 participants.
    EXPECT_EQ(count(SiteKind::Dephasing), 3 * 4 * 18 * 2);
    EXPECT_EQ(count(SiteKind::IdleDephasing), 0);
    config.noise.idle_dephasing = true;
    // Every qubit works in every CNOT step; data idle through preparation and
    // readout.
    EXPECT_EQ(count(SiteKind::IdleDephasing), 3 * 2 * 18);
    config.arch = Architecture::HyperfineWithSwapLrc;
    EXPECT_EQ(count(SiteKind::IdleDephasing), 0);
    EXPECT_EQ(count(SiteKind::Dephasing), 0);
}

TEST(simulator, swap_lrc_adds_one_gate_per_check) {
    ToricLayout layout = build_layout(3);
    TrialConfig config = quiet_config(Architecture::HyperfineWithSwapLrc, LeakageModel::MolmerSorensen);
    config.rounds = 1;
    int gates = 0;
    int extra = 0;
    for (const auto &s : record_sites(config, layout)) {
        gates += s.site.kind == SiteKind::TwoQubitGate;
        extra += s.site.kind == SiteKind::TwoQubitGate && s.site.step == 4;
    }
    EXPECT_EQ(gates, 5 * 18 * 2);
    EXPECT_EQ(extra, 18 * 2);
    config.arch = Architecture::MixedSpecies;
    gates = 0;
    for (const auto &s : record_sites(config, layout)) {
        gates += s.site.kind == SiteKind::TwoQubitGate;
    }
    EXPECT_EQ(gates, 4 * 18 * 2);
}
