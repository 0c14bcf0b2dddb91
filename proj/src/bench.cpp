#include "aco/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace aco {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, end);
}

namespace {

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << contents;
    if (!out.flush()) throw IoError("failed writing " + path.string());
}

double parse_field(std::string_view s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("bad numeric field \"" + std::string(s) + "\"");
    return v;
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Fixed: return "fixed";
        case Mode::Entropy: return "entropy";
        case Mode::Compare: return "compare";
    }
    return "?";
}

ModeAggregate aggregate(const std::vector<RunOutcome>& runs) {
    ModeAggregate a;
    for (const auto& r : runs) {
        a.avg_best += static_cast<double>(r.best);
        a.avg_iters += r.iterations;
        a.avg_seconds += r.seconds;
    }
    const auto n = static_cast<double>(runs.size());
    a.avg_best /= n;
    a.avg_iters /= n;
    a.avg_seconds /= n;
    return a;
}

}  // namespace

std::string trace_csv(std::span<const IterationRecord> trace) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const auto& r : trace) {
        out += std::to_string(r.t);
        out += ',' + std::to_string(r.best_length);
        for (double v : {r.mean, r.std_dev, r.pseudo_mean, r.pseudo_std_dev, r.entropy,
                         r.entropy_rel_change})
            out += ',' + format_double(v);
        out += '\n';
    }
    return out;
}

void write_trace(std::span<const IterationRecord> trace, const fs::path& path) {
    if (trace.empty()) throw std::invalid_argument("write_trace: empty trace");
    write_file(path, trace_csv(trace));
}

std::vector<TraceRow> read_trace(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != kTraceHeader) throw std::runtime_error("unexpected trace header in " + path.string());
    std::vector<TraceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest = line;
        for (std::size_t c; (c = rest.find(',')) != std::string_view::npos; rest.remove_prefix(c + 1))
            f.push_back(rest.substr(0, c));
        f.push_back(rest);
        if (f.size() != 8) throw std::runtime_error("trace row has " + std::to_string(f.size()) + " fields");
        TraceRow r;
        r.iteration = static_cast<int>(parse_field(f[0]));
        r.best_length = static_cast<Length>(parse_field(f[1]));
        r.mean_length = parse_field(f[2]);
        r.std_dev = parse_field(f[3]);
        r.pseudo_mean = parse_field(f[4]);
        r.pseudo_std_dev = parse_field(f[5]);
        r.entropy = parse_field(f[6]);
        r.entropy_rel_change = parse_field(f[7]);
        rows.push_back(r);
    }
    return rows;
}

HistogramPair histograms_for(const IterationRecord& rec, std::optional<double> delta,
                             std::optional<double> origin) {
    BinGeometry g = default_geometry(rec.lengths);
    if (delta) {
        g.bin_width = *delta;
        g.bins.reset();
    }
    if (origin) {
        g.origin = *origin;
        if (!delta) g.bins.reset();
    }
    return {histogram(rec.lengths, g.bin_width, g.origin, g.bins),
            pseudo_histogram(rec.lengths, rec.pheromone_probs, g.bin_width, g.origin, g.bins)};
}

std::string histogram_csv(const HistogramPair& pair) {
    std::string out = kHistogramHeader;
    out += '\n';
    for (Eigen::Index b = 0; b < pair.truth.bins(); ++b) {
        out += format_double(pair.truth.lo(b)) + ',' + format_double(pair.truth.hi(b)) + ',' +
               format_double(pair.truth.masses(b)) + ',' + format_double(pair.pseudo.masses(b)) + '\n';
    }
    return out;
}

std::vector<fs::path> emit_histograms(std::span<const IterationRecord> trace, const RunConfig& config,
                                      int cap, const fs::path& prefix) {
    if (trace.empty()) throw std::invalid_argument("emit_histograms: empty trace");
    const int available = static_cast<int>(trace.size());
    std::vector<int> wanted;
    if (config.histogram_iters.empty()) {
        for (int t : {1, 10, 50, 100, cap})
            if (t >= 1 && t <= available) wanted.push_back(t);
    } else {
        for (int t : config.histogram_iters) {
            if (t < 1 || t > available)
                throw std::out_of_range("histogram iteration " + std::to_string(t) +
                                        " outside the " + std::to_string(available) +
                                        " iterations that ran");
            wanted.push_back(t);
        }
    }
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

    std::vector<fs::path> written;
    for (int t : wanted) {
        const auto pair = histograms_for(trace[t - 1], config.histogram_delta, config.histogram_origin);
        fs::path path = prefix;
        path += "_hist_t" + std::to_string(t) + ".csv";
        write_file(path, histogram_csv(pair));
        written.push_back(path);
    }
    return written;
}

Params resolve_params(const RunConfig& config, Mode mode, int cities, std::uint64_t seed) {
    Params p = config.params;
    p.ants = config.ants.value_or(cities);
    p.seed = seed;
    if (mode == Mode::Fixed) p.nc_max = config.fixed_iterations;
    p.validate();
    return p;
}

ComparisonSummary compare_modes(const RunConfig& config, const Instance& inst) {
    if (config.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec || !fs::is_directory(config.output_dir))
        throw IoError("cannot create output directory " + config.output_dir.string());

    const std::string name = inst.name.empty() ? config.instance_path.stem().string() : inst.name;
    ComparisonSummary summary;
    summary.instance_name = name;
    summary.repeats = config.repeats;

    std::vector<Mode> modes;
    if (config.mode != Mode::Entropy) modes.push_back(Mode::Fixed);
    if (config.mode != Mode::Fixed) modes.push_back(Mode::Entropy);

    // Repeats are independent; each run owns its state and streams.
    for (int r = 0; r < config.repeats; ++r) {
        const std::uint64_t seed = config.params.seed + static_cast<std::uint64_t>(r);
        for (Mode mode : modes) {
            const Params p = resolve_params(config, mode, inst.dimension(), seed);
            const RunResult res =
                mode == Mode::Fixed ? run_fixed(inst, p) : run_entropy_terminated(inst, p, config.patience);

            const fs::path prefix =
                config.output_dir / (name + "_" + mode_name(mode) + "_seed" + std::to_string(seed));
            fs::path trace_path = prefix;
            trace_path += "_trace.csv";
            write_trace(res.trace, trace_path);
            emit_histograms(res.trace, config, p.nc_max, prefix);

            RunOutcome o{seed, res.best_tour.length, res.iterations_run, res.wall_time.count(),
                         res.termination};
            (mode == Mode::Fixed ? summary.fixed_runs : summary.entropy_runs).push_back(o);
        }
    }

    if (!summary.fixed_runs.empty()) summary.fixed = aggregate(summary.fixed_runs);
    if (!summary.entropy_runs.empty()) summary.entropy = aggregate(summary.entropy_runs);
    if (summary.fixed && summary.entropy) {
        summary.iteration_ratio = summary.fixed->avg_iters / summary.entropy->avg_iters;
        summary.quality_gap = (summary.entropy->avg_best - summary.fixed->avg_best) / summary.fixed->avg_best;
    }

    write_file(config.output_dir / "summary.json", summary_json(summary));
    write_file(config.output_dir / "summary.txt", summary_table(summary));
    return summary;
}

std::string summary_json(const ComparisonSummary& s) {
    using nlohmann::json;
    auto block = [](const ModeAggregate& a) {
        return json{{"avg_best", a.avg_best}, {"avg_iters", a.avg_iters}, {"avg_seconds", a.avg_seconds}};
    };
    json j;
    j["instance"] = s.instance_name;
    j["repeats"] = s.repeats;
    j["mode_fixed"] = s.fixed ? block(*s.fixed) : json(nullptr);
    j["mode_entropy"] = s.entropy ? block(*s.entropy) : json(nullptr);
    j["iteration_ratio"] = s.iteration_ratio ? json(*s.iteration_ratio) : json(nullptr);
    j["quality_gap"] = s.quality_gap ? json(*s.quality_gap) : json(nullptr);
    return j.dump(2) + "\n";
}

std::string summary_table(const ComparisonSummary& s) {
    std::ostringstream out;
    char line[160];
    out << "instance " << s.instance_name << ", " << s.repeats << " repeat(s)\n";
    std::snprintf(line, sizeof line, "%-8s %14s %12s %12s\n", "mode", "avg best", "avg iters", "avg sec");
    out << line;
    auto row = [&](const char* label, const std::optional<ModeAggregate>& a) {
        if (!a) return;
        std::snprintf(line, sizeof line, "%-8s %14.1f %12.1f %12.3f\n", label, a->avg_best, a->avg_iters,
                      a->avg_seconds);
        out << line;
    };
    row("fixed", s.fixed);
    row("entropy", s.entropy);
    if (s.iteration_ratio) {
        std::snprintf(line, sizeof line, "iteration ratio %.3f, quality gap %.2f%%\n", *s.iteration_ratio,
                      100.0 * *s.quality_gap);
        out << line;
    }
    return out.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    Params& p = config.params;
    std::string mode = "compare";
    std::string log_base = "natural";
    std::string hist_iters;
    int ants = 0;
    bool keep_starts = false;

    CLI::App app{"Ant-Cycle ACO for TSPLIB instances with entropy-based termination", "aco-entropy"};
    app.add_option("--instance", config.instance_path, "TSPLIB file (EUC_2D)")->required();
    app.add_option("--mode", mode, "fixed, entropy or compare")
        ->check(CLI::IsMember({"fixed", "entropy", "compare"}))
        ->capture_default_str();
    app.add_option("--alpha", p.alpha, "pheromone exponent")->capture_default_str();
    app.add_option("--beta", p.beta, "heuristic exponent")->capture_default_str();
    app.add_option("--rho", p.rho, "evaporated fraction per iteration")->capture_default_str();
    app.add_option("--q", p.q, "deposit constant")->capture_default_str();
    app.add_option("--tau0", p.tau0, "initial pheromone")->capture_default_str();
    app.add_option("--ants", ants, "ant count (default: number of cities)");
    app.add_option("--iters", config.fixed_iterations, "iterations in fixed mode")->capture_default_str();
    app.add_option("--max-iters", p.nc_max, "iteration cap in entropy mode")->capture_default_str();
    app.add_option("--epsilon", p.epsilon, "relative entropy change threshold")->capture_default_str();
    app.add_option("--patience", config.patience, "consecutive satisfied checks needed to stop")
        ->capture_default_str();
    app.add_option("--seed", p.seed, "base seed; repeat r uses seed + r")->capture_default_str();
    app.add_option("--repeats", config.repeats, "runs per mode")->capture_default_str();
    app.add_option("--log-base", log_base, "two or natural")
        ->check(CLI::IsMember({"two", "natural"}))
        ->capture_default_str();
    app.add_option("--hist-delta", config.histogram_delta, "histogram bin width");
    app.add_option("--hist-origin", config.histogram_origin, "histogram left edge");
    app.add_option("--hist-iters", hist_iters, "comma-separated iterations to bin");
    app.add_flag("--keep-start-cities", keep_starts, "place ants once instead of every iteration");
    app.add_option("--out", config.output_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    config.mode = mode == "fixed" ? Mode::Fixed : mode == "entropy" ? Mode::Entropy : Mode::Compare;
    p.log_base = log_base == "two" ? LogBase::Two : LogBase::Natural;
    p.replace_each_iteration = !keep_starts;
    if (ants != 0) config.ants = ants;
    try {
        std::string_view rest = hist_iters;
        while (!rest.empty()) {
            const auto c = rest.find(',');
            const auto tok = rest.substr(0, c);
            int t = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), t);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw std::invalid_argument("--hist-iters: bad entry \"" + std::string(tok) + "\"");
            config.histogram_iters.push_back(t);
            if (c == std::string_view::npos) break;
            rest.remove_prefix(c + 1);
        }
        if (config.repeats < 1) throw std::invalid_argument("--repeats must be >= 1");
        if (config.patience < 1) throw std::invalid_argument("--patience must be >= 1");
        if (config.histogram_delta && !(*config.histogram_delta > 0))
            throw std::invalid_argument("--hist-delta must be positive");
        resolve_params(config, Mode::Fixed, 3, p.seed);
        resolve_params(config, Mode::Entropy, 3, p.seed);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Instance inst;
    try {
        inst = load_instance(config.instance_path);
    } catch (const std::exception& e) {
        err << "error: " << config.instance_path.string() << ": " << e.what() << "\n";
        return 3;
    }

    try {
        const ComparisonSummary summary = compare_modes(config, inst);
        out << summary_table(summary);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace aco
