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

#ifndef LEAKSIM_FAULT_ENUMERATION_H
#define LEAKSIM_FAULT_ENUMERATION_H

#include <functional>
#include <vector>

#include "leaksim/config.h"
#include "leaksim/random_source.h"
#include "leaksim/simulator.h"

namespace leaksim {

struct SingleFault {
    size_t site_index = 0;
    FaultSite site;
    FaultOutcome outcome = FaultOutcome::Identity;
};

/// Runs config's circuit once per (noise site, non-identity outcome in the
/// site's support), with every other site silent, and once per branch of the
/// randomness that fault sets off. The visitor returns false to skip the rest
/// of the current fault's branches.
void for_each_single_fault(
    const TrialConfig &config,
    const std::function<bool(const SingleFault &, const TrialRecord &, double branch_probability)> &visit);

struct FaultEnumerationReport {
    size_t sites = 0;
    size_t faults = 0;
    size_t branches = 0;
    /// Faults with at least one branch that decodes to a logical failure.
    size_t uncorrectable = 0;
    std::vector<SingleFault> uncorrectable_faults;
};

FaultEnumerationReport enumerate_single_faults(const TrialConfig &config);

}  // namespace leaksim

#endif
