#include "aco/stats.hpp"

#include <algorithm>
#include <cmath>

#include "aco/entropy.hpp"

namespace aco {

double route_pheromone(const Eigen::MatrixXd& pheromone, std::span<const int> order) {
    double f = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k)
        f += pheromone(order[k], order[(k + 1) % order.size()]);
    return f;
}

namespace {

Histogram bin_masses(const Eigen::VectorXd& lengths, const Eigen::VectorXd* probs, double bin_width,
                     double origin, std::optional<Eigen::Index> bins) {
    if (lengths.size() == 0) throw std::invalid_argument("histogram: empty input");
    if (!(bin_width > 0) || !std::isfinite(bin_width))
        throw std::invalid_argument("histogram: bin width must be positive");
    if (lengths.minCoeff() < origin)
        throw std::invalid_argument("histogram: origin lies above the smallest length");
    if (bins && *bins < 1) throw std::invalid_argument("histogram: bin count must be positive");

    auto index_of = [&](double x) {
        return static_cast<Eigen::Index>(std::floor((x - origin) / bin_width));
    };
    const Eigen::Index count = bins ? *bins : index_of(lengths.maxCoeff()) + 1;

    Histogram h;
    h.origin = origin;
    h.bin_width = bin_width;
    h.masses = Eigen::VectorXd::Zero(count);
    const double unit = 1.0 / static_cast<double>(lengths.size());
    for (Eigen::Index i = 0; i < lengths.size(); ++i) {
        const Eigen::Index b = std::min(index_of(lengths(i)), count - 1);
        h.masses(b) += probs ? (*probs)(i) : unit;
    }
    return h;
}

}  // namespace

Histogram histogram(const Eigen::VectorXd& lengths, double bin_width, double origin,
                    std::optional<Eigen::Index> bins) {
    return bin_masses(lengths, nullptr, bin_width, origin, bins);
}

Histogram pseudo_histogram(const Eigen::VectorXd& lengths, const Eigen::VectorXd& probs,
                           double bin_width, double origin, std::optional<Eigen::Index> bins) {
    detail::require_aligned(lengths, probs, "pseudo_histogram");
    return bin_masses(lengths, &probs, bin_width, origin, bins);
}

BinGeometry default_geometry(const Eigen::VectorXd& lengths) {
    if (lengths.size() == 0) throw std::invalid_argument("default_geometry: empty input");
    const double lo = lengths.minCoeff();
    const double hi = lengths.maxCoeff();
    if (hi == lo) return {lo, 1.0, Eigen::Index{1}};
    const auto count =
        static_cast<Eigen::Index>(std::ceil(std::sqrt(static_cast<double>(lengths.size()))));
    return {lo, (hi - lo) / static_cast<double>(count), count};
}

IterationRecord build_record(int t, std::span<const Tour> tours, const ColonyState& state,
                             const Params& params) {
    const auto m = static_cast<Eigen::Index>(tours.size());
    IterationRecord rec;
    rec.t = t;
    rec.lengths.resize(m);
    Eigen::VectorXd f(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        rec.lengths(i) = static_cast<double>(tours[i].length);
        f(i) = route_pheromone(state.pheromone, tours[i].order);
    }
    rec.pheromone_probs = pheromone_probabilities(f);
    rec.mean = expectation(rec.lengths);
    rec.std_dev = std_deviation(rec.lengths, rec.mean);
    rec.pseudo_mean = pseudo_expectation(rec.lengths, rec.pheromone_probs);
    rec.pseudo_std_dev = pseudo_deviation(rec.lengths, rec.pheromone_probs, rec.pseudo_mean);
    rec.entropy = entropy(rec.pheromone_probs, params.log_base);
    Length best = static_cast<Length>(rec.lengths.minCoeff());
    if (state.best) best = std::min(best, state.best->length);
    rec.best_length = best;
    return rec;
}

}  // namespace aco
