#include "aco/solver.hpp"

#include <stdexcept>

namespace aco {

namespace {

RunResult run(const Instance& inst, const Params& params, std::optional<int> patience) {
    const auto started = std::chrono::steady_clock::now();
    ColonyState state = init_colony(inst, params);

    RunResult result;
    result.entropy.log_base = params.log_base;
    result.entropy.epsilon = params.epsilon;
    result.entropy.values.push_back(max_entropy(params.ants, params.log_base));
    result.trace.reserve(static_cast<std::size_t>(params.nc_max));

    int streak = 0;
    while (state.t < params.nc_max) {
        const std::vector<Tour> tours = run_iteration(state, params);
        IterationRecord rec = build_record(state.t, tours, state, params);

        const double prev = result.entropy.values.back();
        rec.entropy_rel_change = relative_change(prev, rec.entropy);
        const bool ok = converged(prev, rec.entropy, params.epsilon);
        result.entropy.values.push_back(rec.entropy);
        result.trace.push_back(std::move(rec));

        if (ok && !result.entropy.converged_at) result.entropy.converged_at = state.t;
        streak = ok ? streak + 1 : 0;
        if (patience && streak >= *patience) {
            result.termination = Termination::EntropyConverged;
            break;
        }
    }

    result.best_tour = *state.best;
    result.iterations_run = state.t;
    result.wall_time = std::chrono::steady_clock::now() - started;
    return result;
}

}  // namespace

RunResult run_fixed(const Instance& inst, const Params& params) {
    return run(inst, params, std::nullopt);
}

RunResult run_entropy_terminated(const Instance& inst, const Params& params, int patience) {
    if (patience < 1) throw std::invalid_argument("patience must be >= 1");
    return run(inst, params, patience);
}

const char* to_string(Termination t) {
    return t == Termination::EntropyConverged ? "entropy-converged" : "iteration-cap";
}

}  // namespace aco
