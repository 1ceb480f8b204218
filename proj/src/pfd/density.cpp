#include "pfd/density.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace pfd {

Rational threshold(int k, int d) {
    if (k < 1) throw std::invalid_argument("threshold: k must be >= 1");
    if (d < 1) throw std::invalid_argument("threshold: d must be >= 1");
    return Rational(2 * (long long)k) + Rational(2 * (long long)d, (long long)d + k + 1);
}

DensityWitness mad_bruteforce(const Multigraph& g) {
    int n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("mad of the empty graph is undefined");
    if (n > 20) throw std::invalid_argument("mad_bruteforce is guarded to at most 20 vertices");

    int m = g.edge_count();
    std::vector<uint32_t> edge_mask(m);
    for (const Edge& e : g.edges()) edge_mask[e.id] = (1u << e.u) | (1u << e.v);

    DensityWitness best;
    best.vertices = {0};
    best.edge_count = 0;
    best.density = Rational(0);
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        long long inside = 0;
        for (int e = 0; e < m; ++e)
            if ((edge_mask[e] & mask) == edge_mask[e]) ++inside;
        int size = __builtin_popcount(mask);
        Rational density(2 * inside, size);
        if (density > best.density) {
            best.density = density;
            best.edge_count = inside;
            best.vertices.clear();
            for (int v = 0; v < n; ++v)
                if (mask & (1u << v)) best.vertices.push_back(v);
        }
    }
    return best;
}

namespace {

// Dinic max-flow on integer capacities.
struct FlowNetwork {
    struct Arc {
        int to;
        long long cap;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> adj;
    std::vector<int> level, iter;

    explicit FlowNetwork(int nodes) : adj(nodes), level(nodes), iter(nodes) {}

    void add_arc(int from, int to, long long cap) {
        adj[from].push_back((int)arcs.size());
        arcs.push_back({to, cap});
        adj[to].push_back((int)arcs.size());
        arcs.push_back({from, 0});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : adj[v]) {
                const Arc& a = arcs[id];
                if (a.cap > 0 && level[a.to] < 0) {
                    level[a.to] = level[v] + 1;
                    q.push(a.to);
                }
            }
        }
        return level[t] >= 0;
    }

    long long dfs(int v, int t, long long pushed) {
        if (v == t) return pushed;
        for (int& i = iter[v]; i < (int)adj[v].size(); ++i) {
            int id = adj[v][i];
            Arc& a = arcs[id];
            if (a.cap > 0 && level[a.to] == level[v] + 1) {
                long long got = dfs(a.to, t, std::min(pushed, a.cap));
                if (got > 0) {
                    a.cap -= got;
                    arcs[id ^ 1].cap += got;
                    return got;
                }
            }
        }
        return 0;
    }

    long long max_flow(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            std::fill(iter.begin(), iter.end(), 0);
            while (long long pushed = dfs(s, t, INT64_MAX)) flow += pushed;
        }
        return flow;
    }

    std::vector<char> source_side(int s) {
        std::vector<char> seen(adj.size(), 0);
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : adj[v]) {
                const Arc& a = arcs[id];
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = 1;
                    q.push(a.to);
                }
            }
        }
        return seen;
    }
};

// Does some vertex set S have e(G[S])/|S| > a/b? If so returns S.
// Standard selection network: source -> edge nodes (cap b), edge node ->
// endpoint nodes (cap inf), vertex node -> sink (cap a). The min cut
// equals m*b - max_S (b*e(S) - a*|S|).
std::optional<std::vector<int>> denser_than(const Multigraph& g, long long a, long long b) {
    int n = g.vertex_count();
    int m = g.edge_count();
    int source = 0, sink = 1 + m + n;
    FlowNetwork net(m + n + 2);
    long long inf = (long long)m * b + a + 1;
    for (const Edge& e : g.edges()) {
        net.add_arc(source, 1 + e.id, b);
        net.add_arc(1 + e.id, 1 + m + e.u, inf);
        net.add_arc(1 + e.id, 1 + m + e.v, inf);
    }
    for (int v = 0; v < n; ++v) net.add_arc(1 + m + v, sink, a);
    long long flow = net.max_flow(source, sink);
    if (flow >= (long long)m * b) return std::nullopt;
    std::vector<char> side = net.source_side(source);
    std::vector<int> vertices;
    for (int v = 0; v < n; ++v)
        if (side[1 + m + v]) vertices.push_back(v);
    return vertices;
}

DensityWitness witness_for(const Multigraph& g, std::vector<int> vertices) {
    DensityWitness w;
    std::sort(vertices.begin(), vertices.end());
    w.vertices = std::move(vertices);
    w.edge_count = g.edges_inside(w.vertices);
    w.density = Rational(2 * w.edge_count, (long long)w.vertices.size());
    return w;
}

}  // namespace

DensityWitness mad_exact(const Multigraph& g) {
    int n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("mad of the empty graph is undefined");
    int m = g.edge_count();
    if (m == 0) {
        DensityWitness w;
        w.vertices = {0};
        w.edge_count = 0;
        w.density = Rational(0);
        return w;
    }

    // candidate densities e'/v', deduplicated and sorted
    std::vector<Rational> candidates;
    candidates.reserve((size_t)n * m);
    for (int vv = 1; vv <= n; ++vv)
        for (int ee = 1; ee <= m; ++ee) candidates.emplace_back(ee, vv);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // smallest candidate c with "no subgraph denser than c" is the maximum
    int lo = 0, hi = (int)candidates.size() - 1;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (denser_than(g, candidates[mid].num(), candidates[mid].den()))
            lo = mid + 1;
        else
            hi = mid;
    }
    // a probe strictly below the maximum yields an achieving subgraph
    long long pa = 0, pb = 1;
    if (lo > 0) { pa = candidates[lo - 1].num(); pb = candidates[lo - 1].den(); }
    auto vertices = denser_than(g, pa, pb);
    assert(vertices && !vertices->empty());
    DensityWitness w = witness_for(g, *vertices);
    assert(w.density == Rational(2) * candidates[lo]);
    return w;
}

std::optional<DensityWitness> check_mad_at_most(const Multigraph& g, const Rational& bound) {
    if (g.vertex_count() == 0) return std::nullopt;
    if (bound < Rational(0)) return witness_for(g, {0});
    if (g.edge_count() == 0) return std::nullopt;
    // mad > bound iff some S has e(S)/|S| > bound/2
    Rational half = bound / Rational(2);
    auto vertices = denser_than(g, half.num(), half.den());
    if (!vertices) return std::nullopt;
    DensityWitness w = witness_for(g, *vertices);
    assert(w.density > bound);
    return w;
}

}  // namespace pfd
