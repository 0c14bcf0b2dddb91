#include "aco/entropy.hpp"

#include <limits>

namespace aco {

double relative_change(double h_prev, double h_curr) {
    if (h_prev <= kEntropyFloor)
        return std::abs(h_curr) <= kEntropyFloor ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(h_curr - h_prev) / h_prev;
}

bool converged(double h_prev, double h_curr, double epsilon) {
    if (h_prev <= kEntropyFloor) return std::abs(h_curr) <= kEntropyFloor;
    return std::abs(h_curr - h_prev) / h_prev < epsilon;
}

}  // namespace aco
