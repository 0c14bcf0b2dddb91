#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "aco/colony.hpp"

namespace aco {

inline double log_in(double x, LogBase base) {
    return base == LogBase::Two ? std::log2(x) : std::log(x);
}

/// log(m) in the given base: the entropy of m equally likely routes.
inline double max_entropy(Eigen::Index m, LogBase base) {
    return log_in(static_cast<double>(m), base);
}

/// Shannon entropy -sum p log p of a pheromone probability set, with
/// 0 log 0 = 0. Throws std::invalid_argument for negative entries or a sum
/// further than 1e-9 from one.
template <typename Derived>
double entropy(const Eigen::MatrixBase<Derived>& probs, LogBase base) {
    if (probs.size() == 0) throw std::invalid_argument("entropy: empty probability set");
    if ((probs.array() < 0.0).any()) throw std::invalid_argument("entropy: negative probability");
    const double total = probs.sum();
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("entropy: probabilities sum to " + std::to_string(total));
    double h = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        const double p = probs(i);
        if (p > 0.0) h -= p * log_in(p, base);
    }
    // Rounding can push a near-uniform set a few ulps past the bound.
    return std::clamp(h, 0.0, max_entropy(probs.size(), base));
}

/// Below this magnitude an entropy is treated as zero.
inline constexpr double kEntropyFloor = 1e-12;

/// |h_curr - h_prev| / h_prev < epsilon. When h_prev is (near) zero the
/// ratio is undefined and two consecutive zero entropies count as converged.
bool converged(double h_prev, double h_curr, double epsilon);

/// The quantity compared against epsilon by converged(); +inf when h_prev is
/// (near) zero and h_curr is not.
double relative_change(double h_prev, double h_curr);

}  // namespace aco
