#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aco/solver.hpp"

namespace aco {

enum class Mode { Fixed, Entropy, Compare };

struct RunConfig {
    std::filesystem::path instance_path;
    Mode mode = Mode::Compare;
    /// `params.ants` is replaced by the city count unless `ants` is set.
    /// `params.nc_max` is the entropy-mode safety cap.
    Params params;
    std::optional<int> ants;
    /// Iterations for fixed mode.
    int fixed_iterations = 500;
    int repeats = 1;
    int patience = 1;
    std::filesystem::path output_dir = "out";
    std::optional<double> histogram_delta;
    std::optional<double> histogram_origin;
    /// Empty means {1, 10, 50, 100, cap} restricted to iterations that ran.
    std::vector<int> histogram_iters;
};

struct ModeAggregate {
    double avg_best = 0.0;
    double avg_iters = 0.0;
    double avg_seconds = 0.0;
};

struct RunOutcome {
    std::uint64_t seed = 0;
    Length best = 0;
    int iterations = 0;
    double seconds = 0.0;
    Termination termination = Termination::IterationCap;
};

struct ComparisonSummary {
    std::string instance_name;
    int repeats = 0;
    std::optional<ModeAggregate> fixed;
    std::optional<ModeAggregate> entropy;
    std::vector<RunOutcome> fixed_runs;
    std::vector<RunOutcome> entropy_runs;
    /// fixed avg iterations / entropy avg iterations (compare mode only).
    std::optional<double> iteration_ratio;
    /// (entropy avg best - fixed avg best) / fixed avg best (compare mode only).
    std::optional<double> quality_gap;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits; parses back to the same double.
std::string format_double(double value);

inline constexpr const char* kTraceHeader =
    "iteration,best_length,mean_length,std_dev,pseudo_mean,pseudo_std_dev,entropy,entropy_rel_change";
inline constexpr const char* kHistogramHeader = "bin_lo,bin_hi,mass_true,mass_pseudo";

std::string trace_csv(std::span<const IterationRecord> trace);
void write_trace(std::span<const IterationRecord> trace, const std::filesystem::path& path);

/// Parsed trace CSV row, used to check emitted files.
struct TraceRow {
    int iteration = 0;
    Length best_length = 0;
    double mean_length = 0.0;
    double std_dev = 0.0;
    double pseudo_mean = 0.0;
    double pseudo_std_dev = 0.0;
    double entropy = 0.0;
    double entropy_rel_change = 0.0;
};
std::vector<TraceRow> read_trace(const std::filesystem::path& path);

/// True and pseudo histograms of one iteration on a shared geometry.
struct HistogramPair {
    Histogram truth;
    Histogram pseudo;
};
HistogramPair histograms_for(const IterationRecord& rec, std::optional<double> delta,
                             std::optional<double> origin);
std::string histogram_csv(const HistogramPair& pair);

/// Writes `<prefix>_hist_t<t>.csv` for each requested iteration and returns
/// the paths. Throws std::out_of_range for an iteration that did not run.
std::vector<std::filesystem::path> emit_histograms(std::span<const IterationRecord> trace,
                                                   const RunConfig& config, int cap,
                                                   const std::filesystem::path& prefix);

/// Params actually used for a run of `mode` on an instance with `cities` cities.
Params resolve_params(const RunConfig& config, Mode mode, int cities, std::uint64_t seed);

/// Runs the configured mode(s) for every repeat (seed = base seed + r), writes
/// traces, histograms, summary.json and summary.txt under config.output_dir.
ComparisonSummary compare_modes(const RunConfig& config, const Instance& inst);

std::string summary_json(const ComparisonSummary& summary);
std::string summary_table(const ComparisonSummary& summary);

/// Exit status: 0 ok, 2 bad flags, 3 instance failure, 4 I/O failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aco
