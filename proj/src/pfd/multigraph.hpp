#pragma once

#include <utility>
#include <vector>

namespace pfd {

struct Edge {
    int id;
    int u;
    int v;
};

/// Loop-free multigraph over vertices 0..n-1. Parallel edges are allowed
/// and distinguished by their dense edge ids (0..m-1, in construction
/// order). Immutable after construction; safe to share across threads.
class Multigraph {
public:
    Multigraph() = default;
    Multigraph(int n, const std::vector<std::pair<int, int>>& edge_list);

    int vertex_count() const { return n_; }
    int edge_count() const { return (int)edges_.size(); }

    const Edge& edge(int id) const { return edges_[id]; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Edge ids incident to v (both endpoints), ascending by id.
    const std::vector<int>& incident(int v) const { return incident_[v]; }

    int other_endpoint(int edge_id, int v) const {
        const Edge& e = edges_[edge_id];
        return e.u == v ? e.v : e.u;
    }

    /// Number of edges with both endpoints inside the given vertex set.
    long long edges_inside(const std::vector<int>& vertices) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
};

}  // namespace pfd
