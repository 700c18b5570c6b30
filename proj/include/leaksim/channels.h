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

#ifndef LEAKSIM_CHANNELS_H
#define LEAKSIM_CHANNELS_H

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <utility>

namespace leaksim {

enum class FaultOutcome : uint8_t { Identity, PauliX, PauliY, PauliZ, Leak };

inline constexpr size_t kNumFaultOutcomes = 5;
inline constexpr std::array<FaultOutcome, kNumFaultOutcomes> kAllFaultOutcomes = {
    FaultOutcome::Identity, FaultOutcome::PauliX, FaultOutcome::PauliY, FaultOutcome::PauliZ, FaultOutcome::Leak};

std::string_view name_of(FaultOutcome outcome);

/// A discrete distribution over fault outcomes.
class Channel {
   public:
    /// Unlisted outcomes get probability zero. Throws std::invalid_argument if
    /// any probability is negative or the total differs from 1 by more than
    /// 1e-12.
    Channel(std::initializer_list<std::pair<FaultOutcome, double>> entries);

    double probability(FaultOutcome outcome) const {
        return probs_[static_cast<size_t>(outcome)];
    }
    bool is_identity() const {
        return probs_[0] >= 1.0;
    }
    bool can_leak() const {
        return probability(FaultOutcome::Leak) > 0;
    }

    /// Maps a uniform draw in [0, 1) to an outcome by inverse CDF over the
    /// fixed outcome order Identity, X, Y, Z, Leak.
    FaultOutcome pick(double u) const {
        for (size_t k = 0; k + 1 < kNumFaultOutcomes; k++) {
            if (u < cumulative_[k]) {
                return static_cast<FaultOutcome>(k);
            }
        }
        return FaultOutcome::Leak;
    }

   private:
    std::array<double, kNumFaultOutcomes> probs_{};
    std::array<double, kNumFaultOutcomes> cumulative_{};
};

/// Raman scattering on a clock-state hyperfine qubit: half the scattering
/// leaves the qubit space.
Channel hyperfine_scatter_channel(double p_s);
/// Raman plus Rayleigh scattering on a Zeeman qubit. Never leaks.
Channel zeeman_scatter_channel(double p_s);
/// Magnetic-field dephasing as a stochastic Z flip.
Channel dephasing_channel(double p_M);
/// Pauli twirl of the X(-pi/2) a target receives from a leaked control.
Channel bit_twirl_channel();
/// Pauli twirl of the Z(-pi/2) a control receives from a leaked target.
Channel phase_twirl_channel();
Channel depolarize_channel();

/// Per-two-qubit-gate dephasing probability for a field standard deviation in
/// microgauss. The tabulated values at 100, 32, 10 and 1 uG are returned
/// verbatim; other values scale quadratically from the 100 uG anchor.
double pM_from_sigma(double sigma_uG);

/// Ratio of one-qubit to two-qubit gate scattering used when only the
/// two-qubit rate is given.
inline constexpr double kOneQubitScatterRatio = 9.76e-6 / 2.52e-4;

struct NoiseParams {
    double p_s_2q = 0;
    double p_s_1q = 0;
    double p_M = 0;
    std::optional<double> sigma_uG;
    /// Also dephase memory-susceptible qubits in time steps where they sit
    /// idle.
    bool idle_dephasing = false;

    /// p_s_1q derived from p_s_2q by kOneQubitScatterRatio; p_M from sigma
    /// when given.
    static NoiseParams from_scatter(double p_s_2q, std::optional<double> sigma_uG = std::nullopt);

    /// Throws std::invalid_argument on out-of-range values or a p_M that does
    /// not match sigma_uG.
    void validate() const;

    bool operator==(const NoiseParams &) const = default;
};

/// Draws one outcome; deterministic given the generator state.
template <typename Rng>
FaultOutcome sample(const Channel &channel, Rng &rng) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return channel.pick(u);
}

}  // namespace leaksim

#endif
