#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>

#include <Eigen/Core>

#include "aco/colony.hpp"

namespace aco {

/// One row of the per-iteration trace.
struct IterationRecord {
    int t = 0;
    Eigen::VectorXd lengths;          // route length set, one entry per ant
    Eigen::VectorXd pheromone_probs;  // pheromone probability set, aligned with lengths
    double mean = 0.0;
    double std_dev = 0.0;
    double pseudo_mean = 0.0;
    double pseudo_std_dev = 0.0;
    double entropy = 0.0;
    /// |H_t - H_{t-1}| / H_{t-1}; filled in by the run loop.
    double entropy_rel_change = 0.0;
    Length best_length = 0;
};

/// Equal-width bins starting at `origin`. Bin b covers
/// [origin + b * bin_width, origin + (b + 1) * bin_width).
struct Histogram {
    double origin = 0.0;
    double bin_width = 1.0;
    Eigen::VectorXd masses;

    Eigen::Index bins() const { return masses.size(); }
    double lo(Eigen::Index b) const { return origin + static_cast<double>(b) * bin_width; }
    double hi(Eigen::Index b) const { return origin + static_cast<double>(b + 1) * bin_width; }
};

/// Bin geometry used when the caller does not fix one: ceil(sqrt(m)) bins
/// spanning [min, max], the last bin closed on top.
struct BinGeometry {
    double origin = 0.0;
    double bin_width = 1.0;
    std::optional<Eigen::Index> bins;
};

/// Sum of pheromone on the tour's n edges, closing edge included.
double route_pheromone(const Eigen::MatrixXd& pheromone, std::span<const int> order);

namespace detail {

template <typename A, typename B>
void require_aligned(const Eigen::DenseBase<A>& a, const Eigen::DenseBase<B>& b, const char* who) {
    if (a.size() == 0) throw std::invalid_argument(std::string(who) + ": empty input");
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(who) + ": lengths and probabilities differ in size");
}

}  // namespace detail

/// p_i = f_i / sum_j f_j. Duplicate routes keep one entry per ant.
template <typename Derived>
Eigen::VectorXd pheromone_probabilities(const Eigen::MatrixBase<Derived>& f) {
    if (f.size() == 0) throw std::invalid_argument("pheromone_probabilities: empty input");
    if (!(f.array() > 0.0).all())
        throw std::invalid_argument("pheromone_probabilities: non-positive route pheromone");
    return f / f.sum();
}

template <typename Derived>
double expectation(const Eigen::MatrixBase<Derived>& lengths) {
    if (lengths.size() == 0) throw std::invalid_argument("expectation: empty input");
    return lengths.mean();
}

/// Population form, divisor m.
template <typename Derived>
double std_deviation(const Eigen::MatrixBase<Derived>& lengths, double mean) {
    if (lengths.size() == 0) throw std::invalid_argument("std_deviation: empty input");
    return std::sqrt((lengths.array() - mean).square().mean());
}

template <typename Derived>
double std_deviation(const Eigen::MatrixBase<Derived>& lengths) {
    return std_deviation(lengths, expectation(lengths));
}

template <typename L, typename P>
double pseudo_expectation(const Eigen::MatrixBase<L>& lengths, const Eigen::MatrixBase<P>& probs) {
    detail::require_aligned(lengths, probs, "pseudo_expectation");
    return lengths.dot(probs);
}

template <typename L, typename P>
double pseudo_deviation(const Eigen::MatrixBase<L>& lengths, const Eigen::MatrixBase<P>& probs,
                        double pseudo_mean) {
    detail::require_aligned(lengths, probs, "pseudo_deviation");
    return std::sqrt((probs.array() * (lengths.array() - pseudo_mean).square()).sum());
}

/// Fraction of lengths per bin. With `bins` unset the bin count is just
/// large enough to hold max(lengths) in a half-open bin; with `bins` set,
/// values past the top edge land in the last bin.
Histogram histogram(const Eigen::VectorXd& lengths, double bin_width, double origin,
                    std::optional<Eigen::Index> bins = std::nullopt);

/// Sum of pheromone probability per bin, same binning rules as histogram().
Histogram pseudo_histogram(const Eigen::VectorXd& lengths, const Eigen::VectorXd& probs,
                           double bin_width, double origin,
                           std::optional<Eigen::Index> bins = std::nullopt);

BinGeometry default_geometry(const Eigen::VectorXd& lengths);

/// Aggregates one iteration. `tours` come from iteration `t` and `state` holds
/// the pheromone after that iteration's update.
IterationRecord build_record(int t, std::span<const Tour> tours, const ColonyState& state,
                             const Params& params);

}  // namespace aco
