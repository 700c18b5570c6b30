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

#include "leaksim/random_source.h"

#include <stdexcept>

namespace leaksim {

FaultOutcome FaultInjector::fault(const Channel &channel, const FaultSite &site) {
    size_t k = site_counter_++;
    if (!inject_) {
        sites_.push_back({site, channel});
        return FaultOutcome::Identity;
    }
    if (k == site_index_) {
        if (channel.probability(outcome_) <= 0) {
            throw std::logic_error("injected outcome is outside the channel's support");
        }
        return outcome_;
    }
    return FaultOutcome::Identity;
}

FaultOutcome FaultInjector::consequence(const Channel &channel) {
    if (cursor_ == path_.size()) {
        Choice choice{};
        for (FaultOutcome o : kAllFaultOutcomes) {
            double p = channel.probability(o);
            if (p > 0) {
                choice.options[choice.arity] = o;
                choice.probs[choice.arity] = p;
                choice.arity++;
            }
        }
        path_.push_back(choice);
    }
    const Choice &choice = path_[cursor_++];
    return choice.options[choice.taken];
}

bool FaultInjector::next_branch() {
    // Choices past the cursor were not reached on the last run.
    path_.resize(cursor_);
    while (!path_.empty()) {
        Choice &last = path_.back();
        if (last.taken + 1 < last.arity) {
            last.taken++;
            rewind();
            return true;
        }
        path_.pop_back();
    }
    rewind();
    return false;
}

double FaultInjector::branch_probability() const {
    double p = 1;
    for (size_t k = 0; k < cursor_ && k < path_.size(); k++) {
        p *= path_[k].probs[path_[k].taken];
    }
    return p;
}

}  // namespace leaksim
