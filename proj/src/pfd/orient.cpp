#include "pfd/orient.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <random>
#include <stdexcept>

namespace pfd {

OrientationResult hakimi_orient(const Multigraph& g, int cap) {
    if (cap < 1) throw std::invalid_argument("hakimi_orient: cap must be >= 1");
    int n = g.vertex_count();
    int m = g.edge_count();

    std::vector<int> tail(m);
    std::vector<std::vector<int>> out(n);  // inserted out-arc ids per vertex
    std::vector<int> outdeg(n, 0);

    std::vector<int> parent_arc(n);
    std::vector<char> seen(n);

    for (const Edge& e : g.edges()) {
        tail[e.id] = e.u;
        out[e.u].push_back(e.id);
        ++outdeg[e.u];
        if (outdeg[e.u] <= cap) continue;

        // BFS along inserted arcs for a vertex that can absorb one more
        std::fill(seen.begin(), seen.end(), 0);
        std::fill(parent_arc.begin(), parent_arc.end(), -1);
        std::queue<int> q;
        seen[e.u] = 1;
        q.push(e.u);
        int relief = -1;
        while (!q.empty() && relief < 0) {
            int v = q.front();
            q.pop();
            for (int a : out[v]) {
                int h = g.other_endpoint(a, v);
                if (seen[h]) continue;
                seen[h] = 1;
                parent_arc[h] = a;
                if (outdeg[h] < cap) {
                    relief = h;
                    break;
                }
                q.push(h);
            }
        }

        if (relief < 0) {
            // everything reachable already emits >= cap arcs into the same
            // set, so the set is denser than 2*cap
            std::vector<int> vertices;
            for (int v = 0; v < n; ++v)
                if (seen[v]) vertices.push_back(v);
            DensityWitness w;
            w.vertices = std::move(vertices);
            w.edge_count = g.edges_inside(w.vertices);
            w.density = Rational(2 * w.edge_count, (long long)w.vertices.size());
            assert(w.density > Rational(2 * (long long)cap));
            return OrientationResult{std::nullopt, std::move(w)};
        }

        // reverse the path from e.u to relief
        for (int v = relief; v != e.u;) {
            int a = parent_arc[v];
            int t = tail[a];
            out[t].erase(std::find(out[t].begin(), out[t].end(), a));
            out[v].push_back(a);
            tail[a] = v;
            v = t;
        }
        --outdeg[e.u];
        ++outdeg[relief];
    }

    OrientedState state(g);
    for (int e = 0; e < m; ++e)
        if (state.tail(e) != tail[e]) state.reverse(e);
    return OrientationResult{std::move(state), std::nullopt};
}

OrientedState colour(const OrientedState& oriented, int k, uint64_t seed) {
    if (oriented.max_out_degree() > k + 1)
        throw std::invalid_argument("colour: max out-degree exceeds k+1");
    OrientedState state = oriented;
    for (int e = 0; e < state.graph().edge_count(); ++e) state.set_colour(e, Colour::Blue);
    std::mt19937_64 rng(seed);
    for (int v = 0; v < state.graph().vertex_count(); ++v) {
        if (state.out_degree(v) != k + 1) continue;
        std::vector<int> arcs = state.out_arcs(v);
        state.set_colour(arcs[rng() % arcs.size()], Colour::Red);
    }
    return state;
}

namespace {

// One reversal attempt: multi-source BFS from the (k+1)-vertices along
// arcs of any colour. Returns false when no deficient vertex is reachable.
bool saturation_step(OrientedState& state, int k, bool apply) {
    const Multigraph& g = state.graph();
    int n = g.vertex_count();
    std::vector<int> parent_arc(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    for (int v = 0; v < n; ++v) {
        if (state.out_degree(v) == k + 1) {
            seen[v] = 1;
            q.push(v);
        }
    }
    int target = -1;
    while (!q.empty() && target < 0) {
        int v = q.front();
        q.pop();
        for (int a : state.out_arcs(v)) {
            int h = state.head(a);
            if (seen[h]) continue;
            seen[h] = 1;
            parent_arc[h] = a;
            if (state.out_degree(h) < k) {
                target = h;
                break;
            }
            q.push(h);
        }
    }
    if (target < 0) return false;
    if (!apply) return true;

    std::vector<int> path;  // arcs from some overloaded source down to target
    for (int v = target; parent_arc[v] != -1; v = state.tail(parent_arc[v]))
        path.push_back(parent_arc[v]);
    std::reverse(path.begin(), path.end());
    int source = state.tail(path.front());
    assert(state.out_degree(source) == k + 1);

    // Reverse the path and shift each arc's colour one step toward the
    // source; the final arc turns blue since target stays at or below k.
    std::vector<Colour> old(path.size());
    for (size_t i = 0; i < path.size(); ++i) old[i] = state.colour(path[i]);
    for (int a : path) state.reverse(a);
    for (size_t i = 0; i + 1 < path.size(); ++i) state.set_colour(path[i], old[i + 1]);
    state.set_colour(path.back(), Colour::Blue);
    if (old.front() == Colour::Blue) {
        // the source kept its red out-arc but dropped to out-degree k
        auto red = state.red_out_arc(source);
        assert(red);
        state.set_colour(*red, Colour::Blue);
    }
    return true;
}

}  // namespace

int saturate(OrientedState& state, int k) {
    int reversals = 0;
    int before = state.red_edge_count();
    while (saturation_step(state, k, true)) {
        ++reversals;
        assert(state.red_edge_count() == before - reversals);
    }
    (void)before;
    return reversals;
}

bool saturation_fixpoint(const OrientedState& state, int k) {
    return !saturation_step(const_cast<OrientedState&>(state), k, false);
}

}  // namespace pfd
