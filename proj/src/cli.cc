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

#include "leaksim/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <tuple>

#include "leaksim/fault_enumeration.h"

namespace leaksim {

namespace {

constexpr size_t kNumColumns = 16;

struct NoiseLevel {
    double p_M = 0;
    std::optional<double> sigma_uG;
};

std::vector<NoiseLevel> noise_levels(const RunConfig &run) {
    std::vector<NoiseLevel> levels;
    if (run.sigmas.empty() && run.p_ms.empty()) {
        levels.push_back({});
    } else if (run.p_ms.empty()) {
        for (double s : run.sigmas) {
            levels.push_back({pM_from_sigma(s), s});
        }
    } else if (run.sigmas.empty()) {
        for (double p : run.p_ms) {
            levels.push_back({p, std::nullopt});
        }
    } else {
        for (size_t k = 0; k < run.sigmas.size(); k++) {
            levels.push_back({run.p_ms[k], run.sigmas[k]});
        }
    }
    return levels;
}

template <typename T>
T parse_number(std::string_view text, std::string_view field) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad value '" + std::string(text) + "' for " + std::string(field));
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        size_t k = text.find(sep, start);
        parts.push_back(text.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start));
        if (k == std::string_view::npos) {
            return parts;
        }
        start = k + 1;
    }
}

std::string_view trim_line(std::string_view line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
        line.remove_suffix(1);
    }
    return line;
}

void finish_record(SweepRecord &r) {
    r.config.trials = r.trials;
}

void validate_run(const RunConfig &run) {
    auto fail = [](const std::string &msg) { throw UsageError(msg); };
    if (run.subcommand == Subcommand::Fit) {
        if (run.in.empty()) {
            fail("fit needs --in");
        }
        if (!(run.min_ps_ratio >= 0)) {
            fail("--min-ps-ratio must be non-negative");
        }
        return;
    }
    for (int d : run.distances) {
        if (d < 3 || d % 2 == 0) {
            fail("--d must be odd and >= 3, got " + std::to_string(d));
        }
    }
    if (run.rounds < 0) {
        fail("--rounds must be non-negative");
    }
    if (run.trials == 0) {
        fail("--trials must be positive");
    }
    for (double s : run.sigmas) {
        if (!(s > 0)) {
            fail("--sigma must be positive");
        }
    }
    if (!run.sigmas.empty() && !run.p_ms.empty() && run.sigmas.size() != run.p_ms.size()) {
        fail("--sigma and --pm must list the same number of values");
    }
    if (run.archs.empty() || run.models.empty() || run.distances.empty() || run.p_s.empty()) {
        fail("empty parameter list");
    }
    try {
        for (const TrialConfig &c : expand_grid(run)) {
            c.validate();
        }
    } catch (const std::invalid_argument &e) {
        fail(e.what());
    }
    if (run.subcommand == Subcommand::Single && expand_grid(run).size() != 1) {
        fail("single takes exactly one value per parameter");
    }
}

std::ostream &open_output(const std::string &path, std::ofstream &file) {
    if (path.empty() || path == "-") {
        return std::cout;
    }
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return file;
}

void check_stream(std::ostream &out, const std::string &path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + (path.empty() ? std::string("-") : path) + "' failed");
    }
}

}  // namespace

std::string_view name_of(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "jsonl";
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "jsonl" || text == "json-lines" || text == "json") {
        return OutputFormat::JsonLines;
    }
    throw std::invalid_argument("unknown format '" + std::string(text) + "' (csv|jsonl)");
}

RunConfig parse_args(int argc, const char *const *argv) {
    RunConfig run;
    CLI::App app{"Monte Carlo logical error rates of leaky toric codes", "leaksim"};
    app.set_config("--config", "", "key=value file; command-line flags win");
    app.allow_config_extras(false);
    app.require_subcommand(1, 1);

    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Estimate p_L over a parameter grid")->fallthrough();
    CLI::App *single_cmd = app.add_subcommand("single", "Estimate p_L at one parameter point")->fallthrough();
    CLI::App *enum_cmd =
        app.add_subcommand("enumerate-faults", "Count uncorrectable single faults by exhaustive enumeration")
            ->fallthrough();
    CLI::App *fit_cmd = app.add_subcommand("fit", "Fit p_L ~ p_s^k to each curve of a results file")->fallthrough();

    std::vector<std::string> archs{"mixed"};
    std::vector<std::string> models{"ms"};
    std::string format = "csv";
    std::string readout = "bright";
    double p_s_1q = -1;
    app.add_option("--arch", archs, "hyperfine|zeeman|mixed, comma separated")->delimiter(',');
    app.add_option("--model", models, "depolarizing|ms, comma separated")->delimiter(',');
    app.add_option("--d", run.distances, "Code distances (odd, >= 3)")->delimiter(',');
    app.add_option("--rounds", run.rounds, "Noisy rounds per trial (0 = d)");
    app.add_option("--ps", run.p_s, "Two-qubit scattering probabilities")->delimiter(',');
    app.add_option("--ps1q", p_s_1q, "One-qubit scattering probability (default scales with --ps)");
    app.add_option("--sigma", run.sigmas, "Field standard deviations in uG")->delimiter(',');
    app.add_option("--pm", run.p_ms, "Dephasing probabilities per two-qubit gate")->delimiter(',');
    app.add_option("--trials", run.trials, "Trials per point");
    app.add_option("--seed", run.seed, "Base seed");
    app.add_option("--out", run.out, "Output path, - for stdout");
    app.add_option("--format", format, "csv|jsonl");
    app.add_option("--threads", run.threads, "Worker threads (0 = all cores; LEAKSIM_THREADS overrides)");
    app.add_option("--readout", readout, "Leaked ancilla readout: bright|random");
    app.add_flag("--idle-dephasing", run.idle_dephasing, "Dephase idle memory qubits every time step");
    app.add_option("--in", run.in, "fit: results file (.csv or .jsonl)");
    app.add_option("--min-ps-ratio", run.min_ps_ratio, "fit: drop points with p_s < ratio * p_M");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        throw UsageError(app.help(), 0);
    } catch (const CLI::CallForAllHelp &) {
        throw UsageError(app.help("", CLI::AppFormatMode::All), 0);
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    if (sweep_cmd->parsed()) {
        run.subcommand = Subcommand::Sweep;
    } else if (single_cmd->parsed()) {
        run.subcommand = Subcommand::Single;
    } else if (enum_cmd->parsed()) {
        run.subcommand = Subcommand::EnumerateFaults;
    } else if (fit_cmd->parsed()) {
        run.subcommand = Subcommand::Fit;
    }

    try {
        run.archs.clear();
        for (const auto &a : archs) {
            run.archs.push_back(parse_architecture(a));
        }
        run.models.clear();
        for (const auto &m : models) {
            run.models.push_back(parse_leakage_model(m));
        }
        run.format = parse_output_format(format);
        run.leaked_readout = parse_leaked_readout(readout);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (p_s_1q >= 0) {
        run.p_s_1q = p_s_1q;
    }
    validate_run(run);
    return run;
}

RunConfig parse_args(const std::vector<std::string> &args) {
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return parse_args(static_cast<int>(argv.size()), argv.data());
}

std::vector<TrialConfig> expand_grid(const RunConfig &run) {
    std::vector<TrialConfig> grid;
    std::vector<NoiseLevel> levels = noise_levels(run);
    for (Architecture arch : run.archs) {
        for (LeakageModel model : run.models) {
            for (int d : run.distances) {
                for (const NoiseLevel &level : levels) {
                    for (double p_s : run.p_s) {
                        TrialConfig c;
                        c.arch = arch;
                        c.model = model;
                        c.d = d;
                        c.rounds = run.rounds > 0 ? run.rounds : d;
                        c.noise = NoiseParams::from_scatter(p_s);
                        if (run.p_s_1q.has_value()) {
                            c.noise.p_s_1q = *run.p_s_1q;
                        }
                        c.noise.p_M = level.p_M;
                        c.noise.sigma_uG = level.sigma_uG;
                        c.noise.idle_dephasing = run.idle_dephasing;
                        c.leaked_readout = run.leaked_readout;
                        c.seed = run.seed;
                        c.trials = run.trials;
                        grid.push_back(c);
                    }
                }
            }
        }
    }
    return grid;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        throw std::runtime_error("cannot format double");
    }
    return std::string(buf, ptr);
}

std::string to_csv_row(const SweepRecord &r) {
    const TrialConfig &c = r.config;
    std::string row;
    auto field = [&](const std::string &s) {
        if (!row.empty()) {
            row += ',';
        }
        row += s;
    };
    row += name_of(c.arch);
    field(std::string(name_of(c.model)));
    field(std::to_string(c.d));
    field(std::to_string(c.effective_rounds()));
    field(format_double(c.noise.p_s_2q));
    field(format_double(c.noise.p_s_1q));
    field(format_double(c.noise.p_M));
    field(c.noise.sigma_uG ? format_double(*c.noise.sigma_uG) : std::string());
    field(std::to_string(r.trials));
    field(std::to_string(r.failures_x));
    field(std::to_string(r.failures_z));
    field(std::to_string(r.failures));
    field(format_double(r.p_L));
    field(format_double(r.ci_lo));
    field(format_double(r.ci_hi));
    field(std::to_string(c.seed));
    return row;
}

std::string to_json_line(const SweepRecord &r) {
    const TrialConfig &c = r.config;
    nlohmann::ordered_json j;
    j["arch"] = name_of(c.arch);
    j["model"] = name_of(c.model);
    j["d"] = c.d;
    j["rounds"] = c.effective_rounds();
    j["p_s"] = c.noise.p_s_2q;
    j["p_s_1q"] = c.noise.p_s_1q;
    j["p_M"] = c.noise.p_M;
    j["sigma_uG"] = c.noise.sigma_uG ? nlohmann::ordered_json(*c.noise.sigma_uG) : nlohmann::ordered_json(nullptr);
    j["trials"] = r.trials;
    j["failures_x"] = r.failures_x;
    j["failures_z"] = r.failures_z;
    j["failures"] = r.failures;
    j["p_L"] = r.p_L;
    j["ci_lo"] = r.ci_lo;
    j["ci_hi"] = r.ci_hi;
    j["seed"] = c.seed;
    return j.dump();
}

SweepRecord parse_csv_row(std::string_view header, std::string_view row) {
    std::vector<std::string_view> names = split(trim_line(header), ',');
    std::vector<std::string_view> values = split(trim_line(row), ',');
    if (names.size() != values.size()) {
        throw std::invalid_argument(
            "row has " + std::to_string(values.size()) + " fields, header has " + std::to_string(names.size()));
    }
    std::map<std::string_view, std::string_view> f;
    for (size_t k = 0; k < names.size(); k++) {
        f[names[k]] = values[k];
    }
    auto get = [&](std::string_view name) {
        auto it = f.find(name);
        if (it == f.end()) {
            throw std::invalid_argument("missing column " + std::string(name));
        }
        return it->second;
    };
    SweepRecord r;
    TrialConfig &c = r.config;
    c.arch = parse_architecture(get("arch"));
    c.model = parse_leakage_model(get("model"));
    c.d = parse_number<int>(get("d"), "d");
    c.rounds = parse_number<int>(get("rounds"), "rounds");
    c.noise.p_s_2q = parse_number<double>(get("p_s"), "p_s");
    c.noise.p_s_1q = parse_number<double>(get("p_s_1q"), "p_s_1q");
    c.noise.p_M = parse_number<double>(get("p_M"), "p_M");
    if (!get("sigma_uG").empty()) {
        c.noise.sigma_uG = parse_number<double>(get("sigma_uG"), "sigma_uG");
    }
    r.trials = parse_number<uint64_t>(get("trials"), "trials");
    r.failures_x = parse_number<uint64_t>(get("failures_x"), "failures_x");
    r.failures_z = parse_number<uint64_t>(get("failures_z"), "failures_z");
    r.failures = parse_number<uint64_t>(get("failures"), "failures");
    r.p_L = parse_number<double>(get("p_L"), "p_L");
    r.ci_lo = parse_number<double>(get("ci_lo"), "ci_lo");
    r.ci_hi = parse_number<double>(get("ci_hi"), "ci_hi");
    c.seed = parse_number<uint64_t>(get("seed"), "seed");
    finish_record(r);
    return r;
}

SweepRecord parse_json_line(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("bad json line: ") + e.what());
    }
    try {
        SweepRecord r;
        TrialConfig &c = r.config;
        c.arch = parse_architecture(j.at("arch").get<std::string>());
        c.model = parse_leakage_model(j.at("model").get<std::string>());
        c.d = j.at("d").get<int>();
        c.rounds = j.at("rounds").get<int>();
        c.noise.p_s_2q = j.at("p_s").get<double>();
        c.noise.p_s_1q = j.at("p_s_1q").get<double>();
        c.noise.p_M = j.at("p_M").get<double>();
        if (!j.at("sigma_uG").is_null()) {
            c.noise.sigma_uG = j.at("sigma_uG").get<double>();
        }
        r.trials = j.at("trials").get<uint64_t>();
        r.failures_x = j.at("failures_x").get<uint64_t>();
        r.failures_z = j.at("failures_z").get<uint64_t>();
        r.failures = j.at("failures").get<uint64_t>();
        r.p_L = j.at("p_L").get<double>();
        r.ci_lo = j.at("ci_lo").get<double>();
        r.ci_hi = j.at("ci_hi").get<double>();
        c.seed = j.at("seed").get<uint64_t>();
        finish_record(r);
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("bad record: ") + e.what());
    }
}

RecordWriter::RecordWriter(std::ostream &out, OutputFormat format) : out_(out), format_(format) {
    if (format_ == OutputFormat::Csv) {
        out_ << kCsvHeader << '\n';
    }
}

void RecordWriter::write(const SweepRecord &record) {
    out_ << (format_ == OutputFormat::Csv ? to_csv_row(record) : to_json_line(record)) << '\n';
    out_.flush();
}

void emit(std::span<const SweepRecord> records, OutputFormat format, const std::string &path) {
    std::ofstream file;
    std::ostream &out = open_output(path, file);
    RecordWriter writer(out, format);
    for (const SweepRecord &r : records) {
        writer.write(r);
    }
    check_stream(out, path);
}

std::vector<SweepRecord> read_records(std::istream &in, OutputFormat format) {
    std::vector<SweepRecord> records;
    std::string line;
    std::string header;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (trim_line(line).empty()) {
            continue;
        }
        try {
            if (format == OutputFormat::JsonLines) {
                records.push_back(parse_json_line(line));
            } else if (header.empty()) {
                header = line;
            } else {
                records.push_back(parse_csv_row(header, line));
            }
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<SweepRecord> read_records(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    bool jsonl = path.ends_with(".jsonl") || path.ends_with(".json");
    try {
        return read_records(in, jsonl ? OutputFormat::JsonLines : OutputFormat::Csv);
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::vector<CurveFit> fit_curves(std::span<const SweepRecord> records, double min_ps_ratio) {
    using Key = std::tuple<int, int, int, int, double, double>;
    std::map<Key, std::vector<std::pair<double, double>>> curves;
    std::map<Key, CurveFit> info;
    for (const SweepRecord &r : records) {
        const TrialConfig &c = r.config;
        if (r.p_L <= 0 || c.noise.p_s_2q <= 0 || c.noise.p_s_2q < min_ps_ratio * c.noise.p_M) {
            continue;
        }
        Key key{static_cast<int>(c.arch), static_cast<int>(c.model), c.d, c.effective_rounds(), c.noise.p_M,
                c.noise.sigma_uG.value_or(-1)};
        curves[key].push_back({c.noise.p_s_2q, r.p_L});
        info[key] = CurveFit{c.arch, c.model, c.d, c.noise.p_M, c.noise.sigma_uG, 0, 0};
    }
    std::vector<CurveFit> fits;
    for (auto &[key, points] : curves) {
        if (points.size() < 3) {
            continue;
        }
        CurveFit fit = info[key];
        fit.points = points.size();
        fit.slope = fit_exponent(points);
        fits.push_back(fit);
    }
    return fits;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig run;
    try {
        run = parse_args(argc, argv);
    } catch (const UsageError &e) {
        (e.exit_code == 0 ? out : err) << e.what() << '\n';
        return e.exit_code;
    }
    try {
        switch (run.subcommand) {
            case Subcommand::Sweep:
            case Subcommand::Single: {
                std::vector<TrialConfig> grid = expand_grid(run);
                std::ofstream file;
                std::ostream &sink = run.out == "-" ? out : open_output(run.out, file);
                RecordWriter writer(sink, run.format);
                sweep(grid, resolve_concurrency(run.threads), [&](const SweepRecord &r) { writer.write(r); });
                check_stream(sink, run.out);
                break;
            }
            case Subcommand::EnumerateFaults: {
                std::ofstream file;
                std::ostream &sink = run.out == "-" ? out : open_output(run.out, file);
                sink << "arch,model,d,sites,faults,branches,uncorrectable\n";
                std::vector<TrialConfig> grid = expand_grid(run);
                std::vector<std::tuple<Architecture, LeakageModel, int>> done;
                for (const TrialConfig &c : grid) {
                    auto key = std::make_tuple(c.arch, c.model, c.d);
                    if (std::find(done.begin(), done.end(), key) != done.end()) {
                        continue;
                    }
                    done.push_back(key);
                    FaultEnumerationReport report = enumerate_single_faults(c);
                    sink << name_of(c.arch) << ',' << name_of(c.model) << ',' << c.d << ',' << report.sites << ','
                         << report.faults << ',' << report.branches << ',' << report.uncorrectable << '\n';
                    sink.flush();
                }
                check_stream(sink, run.out);
                break;
            }
            case Subcommand::Fit: {
                std::vector<SweepRecord> records = read_records(run.in);
                std::ofstream file;
                std::ostream &sink = run.out == "-" ? out : open_output(run.out, file);
                sink << "arch,model,d,p_M,sigma_uG,points,slope\n";
                for (const CurveFit &f : fit_curves(records, run.min_ps_ratio)) {
                    sink << name_of(f.arch) << ',' << name_of(f.model) << ',' << f.d << ',' << format_double(f.p_M)
                         << ',' << (f.sigma_uG ? format_double(*f.sigma_uG) : std::string()) << ',' << f.points
                         << ',' << format_double(f.slope) << '\n';
                }
                check_stream(sink, run.out);
                break;
            }
        }
    } catch (const std::exception &e) {
        err << "leaksim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace leaksim
