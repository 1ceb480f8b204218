#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pfd/multigraph.hpp"
#include "pfd/oriented_state.hpp"
#include "pfd/types.hpp"

namespace pfd {

/// Induced subgraph reached from a root red component by following blue
/// arcs forward and red edges in either direction. Closed under blue
/// out-arcs and red adjacency.
struct ExploredSubgraph {
    int root_comp = 0;            // index into RedComponents::comps
    std::vector<char> in_h;       // per vertex
    std::vector<int> vertices;    // ascending
    std::vector<int> comp_ids;    // component indices inside H, ascending
};

/// Ordering of the red components of an explored subgraph in which every
/// non-root component receives a blue arc from an earlier one. Built
/// greedily (fewest edges first, ties by smallest component id).
struct LegalOrder {
    std::vector<int> seq;                           // component indices, seq[0] = root
    std::vector<int> pos;                           // comp -> position, -1 outside H
    std::vector<int> parent;                        // comp -> comp, -1 for root/outside
    std::vector<int> parent_arc;                    // comp -> blue edge id, -1 for root
    std::vector<std::vector<int>> determiners;      // comp -> vertices (sorted)
    std::vector<std::vector<int>> children;         // comp -> designated children
};

/// Lexicographic descent measure: total red arcs, red cycles, residue,
/// then the edge-count vector of the current canonical legal order.
struct Potential {
    long long red_arcs = 0;
    long long cycles = 0;
    long long residue = 0;
    std::vector<long long> order_vector;

    bool operator<(const Potential& o) const;
    bool operator==(const Potential& o) const;
};

/// An improvement move: either a single flip (recolour a blue arc red and
/// a red edge blue, absorbing the arc head's red out-path), or a chain
/// move that also reverses a blue path up the ancestor chain.
///
/// Moves that improve the order alone (red arcs, cycles and residue all
/// unchanged) carry a witness: the order position whose component shrinks
/// and a vertex inside its strictly smaller replacement. The caller pins
/// the order prefix up to that position in the next iteration so the
/// lexicographic descent is explicit.
struct Move {
    enum class Kind { CycleBreak, SmallPair, SmallPairChain, ChildrenReduction };
    Kind kind = Kind::CycleBreak;
    int blue_arc = -1;               // (x, y)
    int red_edge = -1;               // e, incident to x (or to the chain top)
    std::vector<int> chain_arcs;     // blue arcs top ... bottom, empty for flips
    int witness_pos = -1;            // order slot that shrinks, -1 if a
                                     // higher potential field drops instead
    int witness_anchor = -1;         // vertex inside the shrunken component
};

struct DecomposeOptions {
    uint64_t max_iterations = 0;  // 0 means the default 10 * e(G)^2
    bool assert_potential = false;
    bool check_terminal_state = false;
};

struct DecomposeStats {
    uint64_t iterations = 0;
    uint64_t moves = 0;
    uint64_t flips = 0;
    uint64_t chain_moves = 0;
    uint64_t saturation_reversals = 0;
    uint64_t deficiency_repairs = 0;
    uint64_t terminal_checks = 0;
    uint64_t seed = 0;
};

struct DecomposeResult {
    std::optional<Decomposition> decomposition;
    std::optional<DensityCertificate> certificate;
    DecomposeStats stats;
};

struct IterationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- building blocks, exposed for tests and instrumentation ---

long long residue(const RedComponents& rc, int d);

bool is_troublesome(long long red_edges, long long vertices, const Params& p);
bool is_troublesome(const RedComponent& comp, const Params& p);

ExploredSubgraph explore(const OrientedState& state, const RedComponents& rc, int root_comp);

LegalOrder canonical_legal_order(const OrientedState& state, const RedComponents& rc,
                                 const ExploredSubgraph& h);

/// Like canonical_legal_order, but the components containing the given
/// vertices are placed first, in the given sequence, before the greedy
/// completion takes over. Throws std::logic_error when the forced prefix
/// is not a legal start.
LegalOrder legal_order_with_prefix(const OrientedState& state, const RedComponents& rc,
                                   const ExploredSubgraph& h,
                                   const std::vector<int>& prefix_vertices);

/// The elementary exchange: reverse the maximal directed red path out of
/// y, recolour the blue arc (x, y) red as (y, x), recolour the red edge e
/// blue oriented away from x. Preserves every out-degree band and the red
/// arc count. Throws std::invalid_argument on precondition violations (arc
/// not blue, e not a red edge at the arc tail, y on a red cycle).
void flip(OrientedState& state, int red_edge, int blue_arc);

void apply_move(OrientedState& state, const Move& move);

std::optional<Move> find_cycle_break(const OrientedState& state, const RedComponents& rc,
                                     const ExploredSubgraph& h, const LegalOrder& order);

std::optional<Move> find_small_pair_move(const OrientedState& state, const RedComponents& rc,
                                         const ExploredSubgraph& h, const LegalOrder& order,
                                         const Params& p);

std::optional<Move> find_children_reduction_move(const OrientedState& state,
                                                 const RedComponents& rc,
                                                 const ExploredSubgraph& h,
                                                 const LegalOrder& order, const Params& p);

struct ExtractionResult {
    std::optional<DensityCertificate> certificate;
    std::optional<int> deficient_vertex;
};

/// Final counting step once no move applies: either certifies the explored
/// subgraph denser than the bound, or reports a vertex whose blue out-degree
/// is still short of k (caller re-saturates). Inconsistent counting throws
/// std::logic_error — it signals a bug, not a recoverable state.
ExtractionResult extract_certificate(const OrientedState& state, const RedComponents& rc,
                                     const ExploredSubgraph& h, const LegalOrder& order,
                                     const Params& p);

/// Terminal-state checks used by instrumentation: with no move available,
/// every parent/child pair joined by a blue arc with an acyclic child has
/// combined size >= d, and no adequately sized component keeps more than k
/// troublesome children. Throws std::logic_error on violation.
void check_terminal_properties(const OrientedState& state, const RedComponents& rc,
                               const ExploredSubgraph& h, const LegalOrder& order,
                               const Params& p);

DecomposeResult decompose(const Multigraph& g, const Params& p, uint64_t seed,
                          const DecomposeOptions& options = {});

}  // namespace pfd
