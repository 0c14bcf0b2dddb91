#include "aco/colony.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "aco/rng.hpp"

namespace aco {

void Params::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("invalid params: " + what); };
    if (!(alpha >= 0) || !std::isfinite(alpha)) fail("alpha must be >= 0");
    if (!(beta >= 0) || !std::isfinite(beta)) fail("beta must be >= 0");
    if (!(rho >= 0 && rho < 1)) fail("rho must lie in [0, 1)");
    if (!(q > 0) || !std::isfinite(q)) fail("q must be > 0");
    if (!(tau0 > 0) || !std::isfinite(tau0)) fail("tau0 must be > 0");
    if (ants < 1) fail("ants must be >= 1");
    if (nc_max < 1) fail("nc_max must be >= 1");
    if (!(epsilon > 0)) fail("epsilon must be > 0");
}

Params standard_params(int cities) {
    Params p;
    p.ants = cities;
    return p;
}

std::vector<int> place_ants(std::uint64_t seed, int t, int ants, int cities) {
    Stream rng(seed, static_cast<std::uint64_t>(t), Stream::kPlacement);
    std::vector<int> pool(cities);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> starts;
    starts.reserve(ants);
    const int distinct = std::min(ants, cities);
    for (int k = 0; k < distinct; ++k) {
        const auto pick = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(cities - k)));
        std::swap(pool[k], pool[pick]);
        starts.push_back(pool[k]);
    }
    for (int k = distinct; k < ants; ++k)
        starts.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(cities))));
    return starts;
}

void refresh_choice(ColonyState& state, const Params& params) {
    state.choice = state.pheromone.array().pow(params.alpha) * state.heuristic.array().pow(params.beta);
}

ColonyState init_colony(const Instance& inst, const Params& params) {
    params.validate();
    ColonyState state;
    const int n = inst.dimension();
    state.distances = build_distance_matrix(inst);
    state.heuristic = heuristic_matrix(state.distances);
    state.pheromone = Eigen::MatrixXd::Constant(n, n, params.tau0);
    state.seed = params.seed;
    state.start_cities = place_ants(params.seed, 0, params.ants, n);
    refresh_choice(state, params);
    return state;
}

Eigen::VectorXd transition_probabilities(const ColonyState& state, const Params& params,
                                         int current, std::span<const int> allowed) {
    if (allowed.empty()) throw std::invalid_argument("transition_probabilities: empty allowed set");
    Eigen::VectorXd p(static_cast<Eigen::Index>(allowed.size()));
    for (std::size_t k = 0; k < allowed.size(); ++k) {
        const int j = allowed[k];
        if (j == current)
            throw std::invalid_argument("transition_probabilities: current city is in allowed set");
        p(static_cast<Eigen::Index>(k)) = std::pow(state.pheromone(current, j), params.alpha) *
                                          std::pow(state.heuristic(current, j), params.beta);
    }
    const double total = p.sum();
    if (!std::isfinite(total) || !(total > 0))
        throw std::domain_error("transition_probabilities: degenerate weight sum " +
                                std::to_string(total));
    return p / total;
}

Tour construct_tour(const ColonyState& state, const Params& params, int ant) {
    (void)params;
    const int n = state.cities();
    Stream rng(state.seed, static_cast<std::uint64_t>(state.t), static_cast<std::uint64_t>(ant));

    Tour tour;
    tour.order.reserve(n);
    int current = state.start_cities.at(static_cast<std::size_t>(ant));
    tour.order.push_back(current);

    std::vector<int> unvisited;
    unvisited.reserve(n - 1);
    for (int c = 0; c < n; ++c)
        if (c != current) unvisited.push_back(c);

    std::vector<double> weights(unvisited.size());
    while (!unvisited.empty()) {
        const std::size_t count = unvisited.size();
        double total = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            weights[k] = state.choice(current, unvisited[k]);
            total += weights[k];
        }
        if (!std::isfinite(total) || !(total > 0))
            throw std::domain_error("construct_tour: degenerate weight sum " + std::to_string(total));

        // Inverse transform on the running sum; rounding falls back to the last city.
        const double target = rng.uniform() * total;
        std::size_t pick = count - 1;
        double running = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            running += weights[k];
            if (target < running) {
                pick = k;
                break;
            }
        }
        current = unvisited[pick];
        tour.order.push_back(current);
        unvisited.erase(unvisited.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    tour.length = tour_length(state.distances, tour.order);
    return tour;
}

bool is_permutation(std::span<const int> order, int cities) {
    if (static_cast<int>(order.size()) != cities) return false;
    std::vector<bool> seen(cities, false);
    for (int c : order) {
        if (c < 0 || c >= cities || seen[c]) return false;
        seen[c] = true;
    }
    return true;
}

Length tour_length(const DistanceMatrix& distances, std::span<const int> order) {
    const int n = static_cast<int>(distances.rows());
    if (!is_permutation(order, n))
        throw std::invalid_argument("tour_length: order is not a permutation of " +
                                    std::to_string(n) + " cities");
    Length total = 0;
    for (int k = 0; k + 1 < n; ++k) total += distances(order[k], order[k + 1]);
    return total + distances(order[n - 1], order[0]);
}

Length tour_length(const Instance& inst, std::span<const int> order) {
    return tour_length(build_distance_matrix(inst), order);
}

Eigen::MatrixXd deposit_matrix(std::span<const Tour> tours, const Params& params, int cities) {
    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(cities, cities);
    for (const Tour& tour : tours) {
        const double amount = params.q / static_cast<double>(tour.length);
        const auto& o = tour.order;
        for (std::size_t k = 0; k < o.size(); ++k) {
            const int a = o[k];
            const int b = o[(k + 1) % o.size()];
            delta(a, b) += amount;
            if (a != b) delta(b, a) += amount;
        }
    }
    return delta;
}

void update_pheromone(ColonyState& state, const Eigen::MatrixXd& deposits, const Params& params) {
    state.pheromone = ((1.0 - params.rho) * state.pheromone + deposits).cwiseMax(kMinPheromone);
    refresh_choice(state, params);
}

std::vector<Tour> run_iteration(ColonyState& state, const Params& params) {
    const int n = state.cities();
    if (params.replace_each_iteration)
        state.start_cities = place_ants(state.seed, state.t, params.ants, n);

    // Every ant reads the same snapshot and its own stream, so this loop may be
    // split across threads without changing the result.
    std::vector<Tour> tours;
    tours.reserve(params.ants);
    for (int k = 0; k < params.ants; ++k) tours.push_back(construct_tour(state, params, k));

    update_pheromone(state, deposit_matrix(tours, params, n), params);
    ++state.t;

    for (const Tour& tour : tours)
        if (!state.best || tour.length < state.best->length) state.best = tour;
    return tours;
}

}  // namespace aco
