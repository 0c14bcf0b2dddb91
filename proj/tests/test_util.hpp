#pragma once

// Test-only helpers and oracles. Nothing here calls into the code paths the
// oracles check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "aco/rng.hpp"
#include "aco/tsplib.hpp"

namespace test {

inline aco::Length nint_distance(double x1, double y1, double x2, double y2) {
    return static_cast<aco::Length>(std::lround(std::hypot(x1 - x2, y1 - y2)));
}

/// Closed tour length straight from coordinates.
inline aco::Length naive_length(const aco::Instance& inst, std::span<const int> order) {
    aco::Length total = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int a = order[k];
        const int b = order[(k + 1) % order.size()];
        total += nint_distance(inst.coords(a, 0), inst.coords(a, 1), inst.coords(b, 0), inst.coords(b, 1));
    }
    return total;
}

inline aco::Instance random_instance(int n, std::uint64_t seed, double scale = 1000.0,
                                     bool integral = true) {
    aco::Instance inst;
    inst.name = "rand" + std::to_string(n) + "_" + std::to_string(seed);
    inst.coords.resize(n, 2);
    aco::Stream rng(seed, 0xC0FFEE, static_cast<std::uint64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 2; ++c) {
            const double v = rng.uniform() * scale;
            inst.coords(i, c) = integral ? std::floor(v) : v;
        }
    return inst;
}

struct Optimum {
    aco::Length length = 0;
    long distinct_tours = 0;
};

/// Exhaustive search over undirected tours with city 0 fixed first and the
/// mirror image skipped: (n - 1)! / 2 tours.
inline Optimum brute_force_optimum(const aco::Instance& inst) {
    const int n = inst.dimension();
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    Optimum best{-1, 0};
    std::vector<int> order(n);
    do {
        if (rest.front() > rest.back()) continue;
        order[0] = 0;
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        const aco::Length len = naive_length(inst, order);
        ++best.distinct_tours;
        if (best.length < 0 || len < best.length) best.length = len;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

inline std::string rectangle_tsplib() {
    return "NAME: rect4\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n"
           "1 0 0\n2 0 3\n3 4 3\n4 4 0\nEOF\n";
}

}  // namespace test
