#pragma once

#include <cstdint>
#include <optional>

#include "pfd/density.hpp"
#include "pfd/multigraph.hpp"
#include "pfd/oriented_state.hpp"

namespace pfd {

/// Either an all-blue orientation with max out-degree <= cap, or a vertex
/// set witnessing density > 2*cap (so no such orientation exists).
struct OrientationResult {
    std::optional<OrientedState> state;
    std::optional<DensityWitness> witness;
};

/// Incremental insertion with out-degree repair: each edge is oriented as
/// listed, then while the tail exceeds cap, a directed path to a vertex of
/// out-degree < cap is reversed. When no such vertex is reachable, the
/// reachable set is overloaded and becomes the witness.
OrientationResult hakimi_orient(const Multigraph& g, int cap);

/// Assigns colours for parameter k: each vertex of out-degree k+1 gets one
/// seeded-random red out-arc, everything else blue. Requires max
/// out-degree <= k+1.
OrientedState colour(const OrientedState& oriented, int k, uint64_t seed);

/// Reverses directed paths from out-degree-(k+1) vertices to vertices of
/// out-degree < k, repainting along the path so the red-blue invariant is
/// kept; each reversal removes exactly one red arc. Runs to fixpoint.
/// Returns the number of reversals performed.
int saturate(OrientedState& state, int k);

/// True when no directed path leads from a vertex of out-degree k+1 to a
/// vertex of out-degree < k.
bool saturation_fixpoint(const OrientedState& state, int k);

}  // namespace pfd
