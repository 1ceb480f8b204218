#include "pfd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pfd {

namespace {

struct Dsu {
    std::vector<int> parent, size;
    explicit Dsu(int n) : parent(n), size(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

// per-component edge counts of the sub-multigraph, keyed by DSU root
std::vector<std::pair<int, int>> component_edge_counts(const Multigraph& g,
                                                       const std::vector<int>& edge_ids) {
    Dsu dsu(g.vertex_count());
    for (int e : edge_ids) dsu.unite(g.edge(e).u, g.edge(e).v);
    std::vector<int> count(g.vertex_count(), 0);
    for (int e : edge_ids) ++count[dsu.find(g.edge(e).u)];
    std::vector<std::pair<int, int>> result;  // (root, edges)
    for (int v = 0; v < g.vertex_count(); ++v)
        if (count[v] > 0) result.emplace_back(v, count[v]);
    return result;
}

}  // namespace

bool is_pseudoforest(const Multigraph& g, const std::vector<int>& edge_ids) {
    Dsu dsu(g.vertex_count());
    for (int e : edge_ids) dsu.unite(g.edge(e).u, g.edge(e).v);
    std::vector<int> edges(g.vertex_count(), 0);
    for (int e : edge_ids) ++edges[dsu.find(g.edge(e).u)];
    for (int v = 0; v < g.vertex_count(); ++v) {
        int root = dsu.find(v);
        if (root == v && edges[v] > dsu.size[v]) return false;
    }
    return true;
}

std::optional<VerifyViolation> verify_decomposition(const Multigraph& g, const Decomposition& dec,
                                                    const Params& p) {
    if ((int)dec.parts.size() != p.k + 1)
        return VerifyViolation{"expected " + std::to_string(p.k + 1) + " parts, got " +
                               std::to_string(dec.parts.size())};
    if (dec.special_index < 0 || dec.special_index >= (int)dec.parts.size())
        return VerifyViolation{"special_index out of range"};

    std::vector<int> assigned(g.edge_count(), 0);
    for (const auto& part : dec.parts) {
        for (int e : part) {
            if (e < 0 || e >= g.edge_count())
                return VerifyViolation{"edge id " + std::to_string(e) + " out of range"};
            if (++assigned[e] > 1)
                return VerifyViolation{"edge " + std::to_string(e) + " appears in two parts"};
        }
    }
    for (int e = 0; e < g.edge_count(); ++e)
        if (!assigned[e]) return VerifyViolation{"edge " + std::to_string(e) + " is unassigned"};

    for (size_t i = 0; i < dec.parts.size(); ++i)
        if (!is_pseudoforest(g, dec.parts[i]))
            return VerifyViolation{"part " + std::to_string(i) + " is not a pseudoforest"};

    for (auto [root, edges] : component_edge_counts(g, dec.parts[dec.special_index]))
        if (edges > p.d)
            return VerifyViolation{"special component at vertex " + std::to_string(root) +
                                   " has " + std::to_string(edges) + " edges (limit " +
                                   std::to_string(p.d) + ")"};
    return std::nullopt;
}

std::optional<VerifyViolation> verify_certificate(const Multigraph& g,
                                                  const DensityCertificate& cert,
                                                  const Params& p) {
    if (cert.vertices.empty()) return VerifyViolation{"empty vertex set"};
    std::vector<char> seen(g.vertex_count(), 0);
    for (int v : cert.vertices) {
        if (v < 0 || v >= g.vertex_count())
            return VerifyViolation{"vertex " + std::to_string(v) + " out of range"};
        if (seen[v]) return VerifyViolation{"vertex " + std::to_string(v) + " repeated"};
        seen[v] = 1;
    }
    long long inside = g.edges_inside(cert.vertices);
    if (inside != cert.edge_count)
        return VerifyViolation{"edge recount " + std::to_string(inside) + " != claimed " +
                               std::to_string(cert.edge_count)};
    Rational density(2 * inside, (long long)cert.vertices.size());
    if (density != cert.density)
        return VerifyViolation{"density recount " + density.str() + " != claimed " +
                               cert.density.str()};
    if (cert.claimed_bound != p.density_bound)
        return VerifyViolation{"claimed bound " + cert.claimed_bound.str() + " != threshold " +
                               p.density_bound.str()};
    if (!(density > p.density_bound))
        return VerifyViolation{"density " + density.str() + " does not exceed " +
                               p.density_bound.str()};
    return std::nullopt;
}

bool bruteforce_decomposition_exists(const Multigraph& g, const Params& p) {
    int m = g.edge_count();
    int base = p.k + 1;
    double total = std::pow((double)base, (double)m);
    if (total > 1e7)
        throw std::invalid_argument("bruteforce_decomposition_exists: search space too large");

    std::vector<int> slot(m, 0);
    Decomposition dec;
    dec.special_index = p.k;
    while (true) {
        dec.parts.assign(base, {});
        for (int e = 0; e < m; ++e) dec.parts[slot[e]].push_back(e);
        if (!verify_decomposition(g, dec, p)) return true;
        int i = 0;
        while (i < m && slot[i] == base - 1) slot[i++] = 0;
        if (i == m) return false;
        ++slot[i];
    }
}

}  // namespace pfd
