#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "aco/colony.hpp"
#include "aco/entropy.hpp"
#include "aco/stats.hpp"

namespace aco {

enum class Termination { EntropyConverged, IterationCap };

/// H_0, H_1, ... with H_0 = log(m).
struct EntropyTrace {
    std::vector<double> values;
    LogBase log_base = LogBase::Natural;
    double epsilon = 0.0;
    /// First t >= 1 whose single-step relative change is below epsilon.
    std::optional<int> converged_at;
};

struct RunResult {
    Tour best_tour;
    int iterations_run = 0;
    Termination termination = Termination::IterationCap;
    std::vector<IterationRecord> trace;
    EntropyTrace entropy;
    std::chrono::duration<double> wall_time{};
};

/// Ant-Cycle for exactly params.nc_max iterations.
RunResult run_fixed(const Instance& inst, const Params& params);

/// Ant-Cycle stopped once the entropy criterion holds on `patience`
/// consecutive iterations, or at params.nc_max.
RunResult run_entropy_terminated(const Instance& inst, const Params& params, int patience = 1);

const char* to_string(Termination t);

}  // namespace aco
