#pragma once

#include <optional>
#include <vector>

#include "pfd/multigraph.hpp"
#include "pfd/rational.hpp"

namespace pfd {

/// A vertex subset together with its induced edge count and exact average
/// degree 2*e(G[S])/|S|.
struct DensityWitness {
    std::vector<int> vertices;  // sorted
    long long edge_count = 0;
    Rational density;           // 2*edge_count/|vertices|
};

/// 2k + 2d/(d+k+1), exactly. Throws std::invalid_argument for k < 1 or d < 1.
Rational threshold(int k, int d);

/// Exhaustive maximum over all nonempty vertex subsets. Guarded to
/// v(g) <= 20; throws std::invalid_argument beyond that.
DensityWitness mad_bruteforce(const Multigraph& g);

/// Exact maximum average degree via feasibility max-flow tests binary
/// searched over the finite candidate set {e'/v'}. Throws on the empty
/// graph; an edgeless graph yields witness {0} with density 0.
DensityWitness mad_exact(const Multigraph& g);

/// nullopt when mad(g) <= bound; otherwise a witness with density > bound.
std::optional<DensityWitness> check_mad_at_most(const Multigraph& g, const Rational& bound);

}  // namespace pfd
