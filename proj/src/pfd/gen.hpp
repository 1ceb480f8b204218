#pragma once

#include <cstdint>
#include <optional>

#include "pfd/density.hpp"
#include "pfd/multigraph.hpp"
#include "pfd/types.hpp"

namespace pfd {

/// A generated instance together with whatever the construction proves
/// about it: a planted decomposition, or a density witness.
struct GeneratedInstance {
    Multigraph graph;
    std::optional<Decomposition> planted;
    std::optional<DensityWitness> witness;
};

/// Sampler parameters: a multigraph on n vertices with roughly
/// n*target_density/2 edges; each edge duplicates an existing one with
/// probability multi_edge_prob, otherwise joins a fresh random pair.
struct GenSpec {
    int n = 2;
    Rational target_density;
    uint64_t seed = 0;
    Rational multi_edge_prob = Rational(3, 20);
};

Multigraph sample_multigraph(const GenSpec& spec);

/// Union of k random pseudoforests plus one whose components all have at
/// most d edges; the planted decomposition is kept as metadata.
GeneratedInstance gen_pseudoforest_union(int n, int k, int d, uint64_t seed);

/// Rejection-samples multigraphs around n*threshold/2 edges until the
/// exact mad gate accepts; the witness records the achieved density.
/// Throws std::runtime_error when tries are exhausted.
GeneratedInstance gen_below_threshold(int n, int k, int d, uint64_t seed, int tries = 200);

/// A dense core of parallel edges glued to a sparse fringe; the witness
/// (the core) exceeds threshold(k, d).
GeneratedInstance gen_above_threshold(int n, int k, int d, uint64_t seed);

}  // namespace pfd
