#include "pfd/multigraph.hpp"

#include <stdexcept>
#include <string>

namespace pfd {

Multigraph::Multigraph(int n, const std::vector<std::pair<int, int>>& edge_list) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    edges_.reserve(edge_list.size());
    incident_.resize(n);
    for (size_t i = 0; i < edge_list.size(); ++i) {
        auto [u, v] = edge_list[i];
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge " + std::to_string(i) + " endpoint out of range");
        if (u == v)
            throw std::invalid_argument("edge " + std::to_string(i) + " is a loop");
        int id = (int)i;
        edges_.push_back(Edge{id, u, v});
        incident_[u].push_back(id);
        incident_[v].push_back(id);
    }
}

long long Multigraph::edges_inside(const std::vector<int>& vertices) const {
    std::vector<char> in(n_, 0);
    for (int v : vertices) in[v] = 1;
    long long count = 0;
    for (const Edge& e : edges_)
        if (in[e.u] && in[e.v]) ++count;
    return count;
}

}  // namespace pfd
