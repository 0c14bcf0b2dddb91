#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "aco/tsplib.hpp"

namespace aco {

enum class LogBase { Two, Natural };

/// Ant-Cycle tunables. `rho` is the evaporated fraction: old trail is scaled by
/// (1 - rho) on every update.
struct Params {
    double alpha = 1.0;
    double beta = 8.0;
    double rho = 0.4;
    double q = 100.0;
    double tau0 = 1.0;
    int ants = 1;
    int nc_max = 1000;
    double epsilon = 1e-3;
    LogBase log_base = LogBase::Natural;
    std::uint64_t seed = 0;
    /// Draw fresh start cities every iteration; otherwise keep the initial ones.
    bool replace_each_iteration = true;

    /// Throws std::invalid_argument naming the first violated bound.
    void validate() const;
};

/// Published experiment settings with m = n.
Params standard_params(int cities);

/// Pheromone never drops below this after an update.
inline constexpr double kMinPheromone = 1e-12;

struct Tour {
    std::vector<int> order;
    Length length = 0;
};

struct ColonyState {
    Eigen::MatrixXd pheromone;
    Eigen::MatrixXd heuristic;
    DistanceMatrix distances;
    /// pheromone^alpha .* heuristic^beta, refreshed whenever pheromone changes.
    Eigen::MatrixXd choice;
    int t = 0;
    std::uint64_t seed = 0;
    std::optional<Tour> best;
    std::vector<int> start_cities;

    int cities() const { return static_cast<int>(distances.rows()); }
};

ColonyState init_colony(const Instance& inst, const Params& params);

/// Start cities for iteration `t`: distinct while cities remain, then with
/// replacement once m exceeds n.
std::vector<int> place_ants(std::uint64_t seed, int t, int ants, int cities);

/// Selection probabilities of each city in `allowed`, in the same order.
/// Throws std::invalid_argument for an empty set and std::domain_error if the
/// weights are not a finite positive sum.
Eigen::VectorXd transition_probabilities(const ColonyState& state, const Params& params,
                                         int current, std::span<const int> allowed);

/// Builds one closed tour for `ant` from the (seed, t, ant) stream.
Tour construct_tour(const ColonyState& state, const Params& params, int ant);

/// Closed length including the return edge. Throws std::invalid_argument if
/// `order` is not a permutation of 0..n-1.
Length tour_length(const DistanceMatrix& distances, std::span<const int> order);
Length tour_length(const Instance& inst, std::span<const int> order);

bool is_permutation(std::span<const int> order, int cities);

/// Sum of Q / L_k over every ant whose tour uses edge {i, j}.
Eigen::MatrixXd deposit_matrix(std::span<const Tour> tours, const Params& params, int cities);

/// tau <- max((1 - rho) * tau + deposits, kMinPheromone), then refreshes `choice`.
void update_pheromone(ColonyState& state, const Eigen::MatrixXd& deposits, const Params& params);

void refresh_choice(ColonyState& state, const Params& params);

/// Constructs m tours on the current snapshot, updates pheromone, advances t and
/// the incumbent (lowest ant index wins ties).
std::vector<Tour> run_iteration(ColonyState& state, const Params& params);

}  // namespace aco
