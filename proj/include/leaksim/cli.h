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

#ifndef LEAKSIM_CLI_H
#define LEAKSIM_CLI_H

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "leaksim/config.h"
#include "leaksim/experiment.h"

namespace leaksim {

enum class Subcommand : uint8_t { Sweep, Single, EnumerateFaults, Fit };
enum class OutputFormat : uint8_t { Csv, JsonLines };

std::string_view name_of(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

/// Bad command line or config file. exit_code is 0 for --help.
struct UsageError : std::runtime_error {
    UsageError(const std::string &message, int exit_code = 2) : std::runtime_error(message), exit_code(exit_code) {
    }
    int exit_code;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::Sweep;
    std::vector<Architecture> archs{Architecture::MixedSpecies};
    std::vector<LeakageModel> models{LeakageModel::MolmerSorensen};
    std::vector<int> distances{3};
    /// 0 means d rounds.
    int rounds = 0;
    std::vector<double> p_s{1e-3};
    /// Overrides the default one-qubit/two-qubit ratio.
    std::optional<double> p_s_1q;
    /// Noise levels. When both are given they pair up index by index and must
    /// agree with pM_from_sigma.
    std::vector<double> sigmas;
    std::vector<double> p_ms;
    uint64_t trials = 10000;
    uint64_t seed = 0;
    /// "-" is stdout.
    std::string out = "-";
    OutputFormat format = OutputFormat::Csv;
    /// 0 means hardware concurrency.
    unsigned threads = 0;
    LeakedReadout leaked_readout = LeakedReadout::Bright;
    bool idle_dephasing = false;
    /// fit: input file, and the smallest p_s / p_M ratio a point needs to be
    /// included in a slope.
    std::string in;
    double min_ps_ratio = 0;
};

/// argv[0] is the program name. A "--config FILE" of key=value lines with
/// flag names as keys is read first; flags on the command line win.
RunConfig parse_args(int argc, const char *const *argv);
RunConfig parse_args(const std::vector<std::string> &args);

/// Cartesian product in the order arch, model, d, noise level, p_s (p_s
/// varies fastest).
std::vector<TrialConfig> expand_grid(const RunConfig &run);

inline constexpr std::string_view kCsvHeader =
    "arch,model,d,rounds,p_s,p_s_1q,p_M,sigma_uG,trials,failures_x,failures_z,failures,p_L,ci_lo,ci_hi,seed";

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

std::string to_csv_row(const SweepRecord &record);
std::string to_json_line(const SweepRecord &record);
SweepRecord parse_csv_row(std::string_view header, std::string_view row);
SweepRecord parse_json_line(std::string_view line);

/// Streams records to an output file. The CSV header is written on open.
class RecordWriter {
   public:
    RecordWriter(std::ostream &out, OutputFormat format);
    void write(const SweepRecord &record);

   private:
    std::ostream &out_;
    OutputFormat format_;
};

/// Writes all records to path ("-" for stdout). Throws std::runtime_error
/// naming the path on I/O failure.
void emit(std::span<const SweepRecord> records, OutputFormat format, const std::string &path);

std::vector<SweepRecord> read_records(std::istream &in, OutputFormat format);
/// Format chosen by extension: .jsonl/.json are JSON lines, anything else CSV.
std::vector<SweepRecord> read_records(const std::string &path);

struct CurveFit {
    Architecture arch;
    LeakageModel model;
    int d = 0;
    double p_M = 0;
    std::optional<double> sigma_uG;
    size_t points = 0;
    double slope = 0;
};

/// Groups records by everything except p_s and fits log p_L against log p_s.
/// Points with p_L == 0 or p_s < min_ps_ratio * p_M are dropped; curves left
/// with fewer than three points are skipped.
std::vector<CurveFit> fit_curves(std::span<const SweepRecord> records, double min_ps_ratio = 0);

/// Whole program. Returns the process exit status.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace leaksim

#endif
