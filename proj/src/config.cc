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

#include "leaksim/config.h"

#include <stdexcept>
#include <string>

namespace leaksim {

std::string_view name_of(Architecture arch) {
    switch (arch) {
        case Architecture::HyperfineWithSwapLrc:
            return "hyperfine";
        case Architecture::PureZeeman:
            return "zeeman";
        case Architecture::MixedSpecies:
            return "mixed";
    }
    return "?";
}

std::string_view name_of(LeakageModel model) {
    switch (model) {
        case LeakageModel::Depolarizing:
            return "depolarizing";
        case LeakageModel::MolmerSorensen:
            return "ms";
    }
    return "?";
}

std::string_view name_of(LeakedReadout readout) {
    switch (readout) {
        case LeakedReadout::Random:
            return "random";
        case LeakedReadout::Bright:
            return "bright";
    }
    return "?";
}

Architecture parse_architecture(std::string_view text) {
    if (text == "hyperfine" || text == "hyperfine-swap-lrc") {
        return Architecture::HyperfineWithSwapLrc;
    }
    if (text == "zeeman" || text == "pure-zeeman") {
        return Architecture::PureZeeman;
    }
    if (text == "mixed" || text == "mixed-species") {
        return Architecture::MixedSpecies;
    }
    throw std::invalid_argument("unknown architecture '" + std::string(text) + "' (hyperfine|zeeman|mixed)");
}

LeakageModel parse_leakage_model(std::string_view text) {
    if (text == "depolarizing" || text == "dep") {
        return LeakageModel::Depolarizing;
    }
    if (text == "ms" || text == "molmer-sorensen") {
        return LeakageModel::MolmerSorensen;
    }
    throw std::invalid_argument("unknown leakage model '" + std::string(text) + "' (depolarizing|ms)");
}

LeakedReadout parse_leaked_readout(std::string_view text) {
    if (text == "random") {
        return LeakedReadout::Random;
    }
    if (text == "bright" || text == "one") {
        return LeakedReadout::Bright;
    }
    throw std::invalid_argument("unknown leaked readout '" + std::string(text) + "' (random|bright)");
}

void TrialConfig::validate() const {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("code distance must be odd and >= 3, got " + std::to_string(d));
    }
    if (rounds < 0) {
        throw std::invalid_argument("rounds must be non-negative");
    }
    if (trials < 1) {
        throw std::invalid_argument("trial count must be at least 1");
    }
    noise.validate();
}

}  // namespace leaksim
