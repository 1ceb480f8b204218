#pragma once

#include <stdexcept>
#include <vector>

#include "pfd/rational.hpp"

namespace pfd {

/// Problem parameters. The decomposition guarantee applies for
/// 2 <= d <= 2k+2 when mad(G) stays under density_bound; other d are
/// accepted best-effort.
struct Params {
    int k = 1;
    int d = 1;
    bool guarantee = false;
    Rational troublesome_threshold;  // d/(d+k+1)
    Rational density_bound;          // 2k + 2d/(d+k+1)

    static Params make(int k, int d);
};

/// k+1 edge-disjoint pseudoforests covering E(G); parts[special_index] is
/// the one whose components stay at or below d edges.
struct Decomposition {
    std::vector<std::vector<int>> parts;  // edge ids
    int special_index = 0;
};

/// A vertex set whose induced average degree exceeds claimed_bound,
/// refuting the decomposition hypothesis for that bound.
struct DensityCertificate {
    std::vector<int> vertices;  // sorted
    long long edge_count = 0;
    Rational density;        // 2*edge_count/|vertices|
    Rational claimed_bound;  // density > claimed_bound
};

inline Params Params::make(int k, int d) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    Params p;
    p.k = k;
    p.d = d;
    p.guarantee = d >= 2 && d <= 2 * k + 2;
    p.troublesome_threshold = Rational(d, (long long)d + k + 1);
    p.density_bound = Rational(2 * (long long)k) + Rational(2 * (long long)d, (long long)d + k + 1);
    return p;
}

}  // namespace pfd
