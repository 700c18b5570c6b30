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

#include "leaksim/fault_enumeration.h"

#include "leaksim/decoder.h"
#include "leaksim/lattice.h"

namespace leaksim {

void for_each_single_fault(
    const TrialConfig &config,
    const std::function<bool(const SingleFault &, const TrialRecord &, double branch_probability)> &visit) {
    config.validate();
    ToricLayout layout = build_layout(config.d);
    NoiseModel noise(config);

    FaultInjector recorder;
    run_trial(config, layout, noise, recorder);
    const auto &sites = recorder.sites();

    for (size_t k = 0; k < sites.size(); k++) {
        for (FaultOutcome outcome : kAllFaultOutcomes) {
            if (outcome == FaultOutcome::Identity || sites[k].channel.probability(outcome) <= 0) {
                continue;
            }
            SingleFault fault{k, sites[k].site, outcome};
            FaultInjector injector(k, outcome);
            do {
                TrialRecord record = run_trial(config, layout, noise, injector);
                if (!visit(fault, record, injector.branch_probability())) {
                    break;
                }
            } while (injector.next_branch());
        }
    }
}

FaultEnumerationReport enumerate_single_faults(const TrialConfig &config) {
    ToricLayout layout = build_layout(config.d);
    FaultEnumerationReport report;
    bool have_last = false;
    size_t last_site = 0;
    FaultOutcome last_outcome = FaultOutcome::Identity;
    for_each_single_fault(config, [&](const SingleFault &fault, const TrialRecord &record, double) {
        if (!have_last || fault.site_index != last_site || fault.outcome != last_outcome) {
            report.faults++;
            have_last = true;
            last_site = fault.site_index;
            last_outcome = fault.outcome;
        }
        report.branches++;
        if (decode(record, layout).any()) {
            report.uncorrectable++;
            report.uncorrectable_faults.push_back(fault);
            return false;
        }
        return true;
    });
    FaultInjector recorder;
    NoiseModel noise(config);
    run_trial(config, layout, noise, recorder);
    report.sites = recorder.sites().size();
    return report;
}

}  // namespace leaksim
