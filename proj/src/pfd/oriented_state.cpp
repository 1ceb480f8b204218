#include "pfd/oriented_state.hpp"

#include <algorithm>

namespace pfd {

OrientedState::OrientedState(const Multigraph& g)
    : g_(&g),
      tail_(g.edge_count()),
      colour_(g.edge_count(), Colour::Blue),
      out_degree_(g.vertex_count(), 0),
      red_out_(g.vertex_count(), 0) {
    for (const Edge& e : g.edges()) {
        tail_[e.id] = e.u;
        ++out_degree_[e.u];
    }
}

void OrientedState::reverse(int edge_id) {
    int t = tail_[edge_id];
    int h = g_->other_endpoint(edge_id, t);
    --out_degree_[t];
    ++out_degree_[h];
    if (colour_[edge_id] == Colour::Red) {
        --red_out_[t];
        ++red_out_[h];
    }
    tail_[edge_id] = h;
}

void OrientedState::set_colour(int edge_id, Colour c) {
    if (colour_[edge_id] == c) return;
    colour_[edge_id] = c;
    int t = tail_[edge_id];
    if (c == Colour::Red) {
        ++red_out_[t];
        ++red_edges_;
    } else {
        --red_out_[t];
        --red_edges_;
    }
}

int OrientedState::red_degree(int v) const {
    int count = 0;
    for (int e : g_->incident(v))
        if (colour_[e] == Colour::Red) ++count;
    return count;
}

int OrientedState::max_out_degree() const {
    int m = 0;
    for (int d : out_degree_) m = std::max(m, d);
    return m;
}

std::vector<int> OrientedState::out_arcs(int v) const {
    std::vector<int> arcs;
    for (int e : g_->incident(v))
        if (tail_[e] == v) arcs.push_back(e);
    return arcs;
}

std::vector<int> OrientedState::blue_out_arcs(int v) const {
    std::vector<int> arcs;
    for (int e : g_->incident(v))
        if (tail_[e] == v && colour_[e] == Colour::Blue) arcs.push_back(e);
    return arcs;
}

std::optional<int> OrientedState::red_out_arc(int v) const {
    for (int e : g_->incident(v))
        if (tail_[e] == v && colour_[e] == Colour::Red) return e;
    return std::nullopt;
}

RedComponents red_components(const OrientedState& state) {
    const Multigraph& g = state.graph();
    int n = g.vertex_count();
    RedComponents rc;
    rc.comp_of.assign(n, -1);

    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (rc.comp_of[start] != -1) continue;
        int idx = (int)rc.comps.size();
        RedComponent comp;
        comp.id = start;
        rc.comp_of[start] = idx;
        stack.push_back(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.vertices.push_back(v);
            for (int e : g.incident(v)) {
                if (!state.is_red(e)) continue;
                int w = g.other_endpoint(e, v);
                if (rc.comp_of[w] == -1) {
                    rc.comp_of[w] = idx;
                    stack.push_back(w);
                }
            }
        }
        rc.comps.push_back(std::move(comp));
    }
    for (const Edge& e : g.edges()) {
        if (state.is_red(e.id)) rc.comps[rc.comp_of[e.u]].edges.push_back(e.id);
    }
    for (RedComponent& comp : rc.comps) {
        std::sort(comp.vertices.begin(), comp.vertices.end());
        std::sort(comp.edges.begin(), comp.edges.end());
        // the red class has out-degree <= 1 per vertex, so e <= v and
        // e == v pins down exactly one cycle
        comp.has_cycle = comp.edge_count() == comp.vertex_count();
    }
    return rc;
}

std::vector<char> red_cycle_vertices(const OrientedState& state, const RedComponents& rc) {
    const Multigraph& g = state.graph();
    int n = g.vertex_count();
    std::vector<char> on_cycle(n, 0);
    std::vector<int> red_deg(n, 0);
    for (const Edge& e : g.edges()) {
        if (state.is_red(e.id)) {
            ++red_deg[e.u];
            ++red_deg[e.v];
        }
    }
    // peel red leaves; whatever survives in a cyclic component is its cycle
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (red_deg[v] == 1) queue.push_back(v);
    std::vector<char> removed(n, 0);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        removed[v] = 1;
        for (int e : g.incident(v)) {
            if (!state.is_red(e)) continue;
            int w = g.other_endpoint(e, v);
            if (removed[w]) continue;
            if (--red_deg[w] == 1) queue.push_back(w);
        }
    }
    for (int v = 0; v < n; ++v) {
        if (removed[v]) continue;
        if (rc.comps[rc.comp_of[v]].has_cycle && red_deg[v] >= 2) on_cycle[v] = 1;
    }
    return on_cycle;
}

std::optional<Violation> validate(const OrientedState& state, int k) {
    const Multigraph& g = state.graph();
    for (int v = 0; v < g.vertex_count(); ++v) {
        int out = state.out_degree(v);
        int red = state.red_out_degree(v);
        if (red > 1)
            return Violation{"vertex " + std::to_string(v) + " has " + std::to_string(red) +
                             " red out-arcs"};
        int expected = out - std::min(out, k);
        if (red != expected)
            return Violation{"vertex " + std::to_string(v) + " has out-degree " +
                             std::to_string(out) + " but red out-degree " + std::to_string(red) +
                             " (expected " + std::to_string(expected) + ")"};
    }
    return std::nullopt;
}

}  // namespace pfd
