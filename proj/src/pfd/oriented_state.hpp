#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfd/multigraph.hpp"

namespace pfd {

enum class Colour : uint8_t { Blue, Red };

/// Orientation plus red/blue colouring of every edge of a multigraph.
///
/// The state maintains the generalized red-blue invariant for a parameter
/// k (checked by validate, not enforced on every mutation): each vertex v
/// has red out-degree d+(v) - min(d+(v), k), which also forces d+(v) <= k+1.
/// Single-writer: no internal locking.
class OrientedState {
public:
    /// Every edge starts oriented u -> v and coloured blue.
    explicit OrientedState(const Multigraph& g);

    const Multigraph& graph() const { return *g_; }

    int tail(int edge_id) const { return tail_[edge_id]; }
    int head(int edge_id) const { return g_->other_endpoint(edge_id, tail_[edge_id]); }
    bool is_red(int edge_id) const { return colour_[edge_id] == Colour::Red; }
    Colour colour(int edge_id) const { return colour_[edge_id]; }

    void reverse(int edge_id);
    void set_colour(int edge_id, Colour c);

    int out_degree(int v) const { return out_degree_[v]; }
    int red_out_degree(int v) const { return red_out_[v]; }
    int blue_out_degree(int v) const { return out_degree_[v] - red_out_[v]; }

    /// Red edges incident to v, any orientation.
    int red_degree(int v) const;

    int red_edge_count() const { return red_edges_; }
    int max_out_degree() const;

    /// Out-arc edge ids of v, ascending by edge id.
    std::vector<int> out_arcs(int v) const;
    /// Blue out-arc edge ids of v, ascending by edge id.
    std::vector<int> blue_out_arcs(int v) const;
    /// The red out-arc of v, if any.
    std::optional<int> red_out_arc(int v) const;

private:
    const Multigraph* g_;
    std::vector<int> tail_;
    std::vector<Colour> colour_;
    std::vector<int> out_degree_;
    std::vector<int> red_out_;
    int red_edges_ = 0;
};

/// A connected component of the red subgraph. Vertices with no incident
/// red edge form singleton components. id is the smallest member vertex.
struct RedComponent {
    int id = 0;
    std::vector<int> vertices;
    std::vector<int> edges;
    bool has_cycle = false;

    int edge_count() const { return (int)edges.size(); }
    int vertex_count() const { return (int)vertices.size(); }
};

/// Partition of V into red components.
struct RedComponents {
    std::vector<RedComponent> comps;  // sorted by id
    std::vector<int> comp_of;         // vertex -> index into comps
};

RedComponents red_components(const OrientedState& state);

/// Marks the vertices lying on the unique cycle of their red component.
std::vector<char> red_cycle_vertices(const OrientedState& state, const RedComponents& rc);

struct Violation {
    std::string what;
};

/// Checks the generalized red-blue invariant for parameter k; returns the
/// first violation found, or nullopt when the state is consistent.
std::optional<Violation> validate(const OrientedState& state, int k);

}  // namespace pfd
