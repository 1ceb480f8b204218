#include "pfd/decomposer.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <queue>
#include <set>

#include "pfd/density.hpp"
#include "pfd/orient.hpp"
#include "pfd/verify.hpp"

namespace pfd {

bool Potential::operator<(const Potential& o) const {
    if (red_arcs != o.red_arcs) return red_arcs < o.red_arcs;
    if (cycles != o.cycles) return cycles < o.cycles;
    if (residue != o.residue) return residue < o.residue;
    return std::lexicographical_compare(order_vector.begin(), order_vector.end(),
                                        o.order_vector.begin(), o.order_vector.end());
}

bool Potential::operator==(const Potential& o) const {
    return red_arcs == o.red_arcs && cycles == o.cycles && residue == o.residue &&
           order_vector == o.order_vector;
}

long long residue(const RedComponents& rc, int d) {
    long long sum = 0;
    for (const RedComponent& comp : rc.comps)
        sum += std::max<long long>(comp.edge_count() - d, 0);
    return sum;
}

bool is_troublesome(long long red_edges, long long vertices, const Params& p) {
    return Rational(red_edges, vertices) < p.troublesome_threshold;
}

bool is_troublesome(const RedComponent& comp, const Params& p) {
    return is_troublesome(comp.edge_count(), comp.vertex_count(), p);
}

ExploredSubgraph explore(const OrientedState& state, const RedComponents& rc, int root_comp) {
    const Multigraph& g = state.graph();
    ExploredSubgraph h;
    h.root_comp = root_comp;
    h.in_h.assign(g.vertex_count(), 0);

    std::queue<int> q;
    for (int v : rc.comps[root_comp].vertices) {
        h.in_h[v] = 1;
        q.push(v);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : g.incident(v)) {
            int w = g.other_endpoint(e, v);
            // blue arcs are walked tail->head only, red edges both ways
            if (!state.is_red(e) && state.tail(e) != v) continue;
            if (!h.in_h[w]) {
                h.in_h[w] = 1;
                q.push(w);
            }
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (h.in_h[v]) h.vertices.push_back(v);

    std::vector<char> comp_seen(rc.comps.size(), 0);
    for (int v : h.vertices) {
        int c = rc.comp_of[v];
        if (!comp_seen[c]) {
            comp_seen[c] = 1;
            h.comp_ids.push_back(c);
        }
    }
    std::sort(h.comp_ids.begin(), h.comp_ids.end());
    return h;
}

LegalOrder legal_order_with_prefix(const OrientedState& state, const RedComponents& rc,
                                   const ExploredSubgraph& h,
                                   const std::vector<int>& prefix_vertices) {
    int nc = (int)rc.comps.size();
    LegalOrder order;
    order.pos.assign(nc, -1);
    order.parent.assign(nc, -1);
    order.parent_arc.assign(nc, -1);
    order.determiners.assign(nc, {});
    order.children.assign(nc, {});

    std::vector<int> avail_arc(nc, -1);  // smallest blue in-arc from the placed prefix

    auto place = [&](int comp) {
        order.pos[comp] = (int)order.seq.size();
        order.seq.push_back(comp);
        for (int v : rc.comps[comp].vertices) {
            for (int a : state.blue_out_arcs(v)) {
                int w = state.head(a);
                int cw = rc.comp_of[w];
                if (cw == comp || order.pos[cw] != -1) continue;
                if (avail_arc[cw] == -1 || a < avail_arc[cw]) avail_arc[cw] = a;
            }
        }
    };

    auto append = [&](int comp) {
        int arc = avail_arc[comp];
        if (arc == -1) throw std::logic_error("component appended without an in-arc");
        order.parent[comp] = rc.comp_of[state.tail(arc)];
        order.parent_arc[comp] = arc;
        order.children[order.parent[comp]].push_back(comp);
        place(comp);
    };

    place(h.root_comp);
    for (int v : prefix_vertices) {
        if (!h.in_h[v]) throw std::logic_error("forced prefix left the explored subgraph");
        int c = rc.comp_of[v];
        if (order.pos[c] != -1) continue;  // root, or two anchors in one component
        append(c);
    }

    size_t total = h.comp_ids.size();
    while (order.seq.size() < total) {
        int best = -1;
        for (int c : h.comp_ids) {
            if (order.pos[c] != -1 || avail_arc[c] == -1) continue;
            if (best == -1 || rc.comps[c].edge_count() < rc.comps[best].edge_count() ||
                (rc.comps[c].edge_count() == rc.comps[best].edge_count() &&
                 rc.comps[c].id < rc.comps[best].id))
                best = c;
        }
        if (best == -1) throw std::logic_error("explored subgraph is not blue-connected");
        append(best);
    }

    // all heads of blue arcs that jump forward in the order
    for (int c : h.comp_ids) {
        for (int v : rc.comps[c].vertices) {
            for (int a : state.blue_out_arcs(v)) {
                int w = state.head(a);
                int cw = rc.comp_of[w];
                if (cw != c && order.pos[cw] > order.pos[c]) order.determiners[cw].push_back(w);
            }
        }
    }
    for (int c : h.comp_ids) {
        auto& det = order.determiners[c];
        std::sort(det.begin(), det.end());
        det.erase(std::unique(det.begin(), det.end()), det.end());
    }
    return order;
}

LegalOrder canonical_legal_order(const OrientedState& state, const RedComponents& rc,
                                 const ExploredSubgraph& h) {
    return legal_order_with_prefix(state, rc, h, {});
}

namespace {

// Reverses the maximal directed red path leaving v. Throws when the walk
// revisits a vertex (v sits in or ahead of a red cycle).
void absorb_red_out_path(OrientedState& state, int v) {
    std::vector<int> arcs;
    std::vector<char> seen(state.graph().vertex_count(), 0);
    int cur = v;
    seen[cur] = 1;
    while (auto a = state.red_out_arc(cur)) {
        arcs.push_back(*a);
        cur = state.head(*a);
        if (seen[cur]) throw std::invalid_argument("flip: head reaches a red cycle");
        seen[cur] = 1;
    }
    for (int a : arcs) state.reverse(a);
}

}  // namespace

void flip(OrientedState& state, int red_edge, int blue_arc) {
    if (state.is_red(blue_arc)) throw std::invalid_argument("flip: arc is not blue");
    if (!state.is_red(red_edge)) throw std::invalid_argument("flip: edge is not red");
    int x = state.tail(blue_arc);
    const Edge& e = state.graph().edge(red_edge);
    if (e.u != x && e.v != x) throw std::invalid_argument("flip: red edge not incident to arc tail");
    int y = state.head(blue_arc);

    absorb_red_out_path(state, y);
    state.set_colour(blue_arc, Colour::Red);
    state.reverse(blue_arc);  // now (y, x), red
    state.set_colour(red_edge, Colour::Blue);
    if (state.tail(red_edge) != x) state.reverse(red_edge);  // oriented away from x
}

void apply_move(OrientedState& state, const Move& move) {
    if (move.chain_arcs.empty()) {
        flip(state, move.red_edge, move.blue_arc);
        return;
    }
    // chain move: same exchange as a flip at (x, y), but the freed colour
    // travels up the reversed blue ancestor path to a red edge at the top
    int top = state.tail(move.chain_arcs.front());
    int x = state.tail(move.blue_arc);
    absorb_red_out_path(state, state.head(move.blue_arc));
    for (int a : move.chain_arcs) state.reverse(a);
    state.set_colour(move.blue_arc, Colour::Red);
    state.reverse(move.blue_arc);  // (y, x), red
    state.set_colour(move.red_edge, Colour::Blue);
    if (state.tail(move.red_edge) != top) state.reverse(move.red_edge);
    (void)x;
}

namespace {

// First red edge on the path from `from` to `to` inside one red component.
int first_edge_on_red_path(const OrientedState& state, int from, int to) {
    const Multigraph& g = state.graph();
    std::vector<int> parent_edge(g.vertex_count(), -1);
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<int> q;
    seen[from] = 1;
    q.push(from);
    while (!q.empty() && !seen[to]) {
        int v = q.front();
        q.pop();
        for (int e : g.incident(v)) {
            if (!state.is_red(e)) continue;
            int w = g.other_endpoint(e, v);
            if (seen[w]) continue;
            seen[w] = 1;
            parent_edge[w] = e;
            q.push(w);
        }
    }
    if (!seen[to]) throw std::logic_error("no red path between vertices of one component");
    int cur = to, last = -1;
    while (cur != from) {
        last = parent_edge[cur];
        cur = g.other_endpoint(last, cur);
    }
    return last;
}

// Red edge count of the side of comp - cut_edge containing anchor.
long long red_side_edges(const OrientedState& state, const RedComponent& comp, int cut_edge,
                         int anchor) {
    const Multigraph& g = state.graph();
    std::vector<char> in_side(g.vertex_count(), 0);
    std::vector<int> stack{anchor};
    in_side[anchor] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : g.incident(v)) {
            if (!state.is_red(e) || e == cut_edge) continue;
            int w = g.other_endpoint(e, v);
            if (!in_side[w]) {
                in_side[w] = 1;
                stack.push_back(w);
            }
        }
    }
    long long count = 0;
    for (int e : comp.edges)
        if (e != cut_edge && in_side[g.edge(e).u] && in_side[g.edge(e).v]) ++count;
    return count;
}

int min_red_edge_at(const OrientedState& state, int v) {
    for (int e : state.graph().incident(v))
        if (state.is_red(e)) return e;
    throw std::logic_error("vertex has no incident red edge");
}

}  // namespace

std::optional<Move> find_cycle_break(const OrientedState& state, const RedComponents& rc,
                                     const ExploredSubgraph& h, const LegalOrder& order) {
    std::vector<char> on_cycle = red_cycle_vertices(state, rc);
    for (int c : order.seq) {
        if (!rc.comps[c].has_cycle) continue;
        for (int x : rc.comps[c].vertices) {
            if (!on_cycle[x]) continue;
            for (int a : state.blue_out_arcs(x)) {
                int y = state.head(a);
                int cy = rc.comp_of[y];
                if (cy == c || rc.comps[cy].has_cycle) continue;
                // cycle edge at x: a red edge joining two cycle vertices
                for (int e : state.graph().incident(x)) {
                    if (!state.is_red(e)) continue;
                    if (on_cycle[state.graph().other_endpoint(e, x)]) {
                        Move mv;
                        mv.kind = Move::Kind::CycleBreak;
                        mv.blue_arc = a;
                        mv.red_edge = e;
                        return mv;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<Move> find_small_pair_move(const OrientedState& state, const RedComponents& rc,
                                         const ExploredSubgraph& h, const LegalOrder& order,
                                         const Params& p) {
    for (size_t j = 1; j < order.seq.size(); ++j) {
        int child = order.seq[j];
        if (rc.comps[child].has_cycle) continue;
        int parent = order.parent[child];
        if (rc.comps[parent].edge_count() + rc.comps[child].edge_count() >= p.d) continue;

        // smallest blue arc from the parent into this child
        int arc = -1;
        for (int v : rc.comps[parent].vertices)
            for (int a : state.blue_out_arcs(v)) {
                if (rc.comp_of[state.head(a)] != child) continue;
                if (arc == -1 || a < arc) arc = a;
            }
        if (arc == -1) throw std::logic_error("designated parent has no arc into child");
        int x = state.tail(arc);

        const auto& det = order.determiners[parent];
        int w = -1;
        for (int v : det)
            if (v != x) {
                w = v;
                break;
            }
        if (w != -1) {
            // some other vertex justifies the parent's position: shrink it
            Move mv;
            mv.kind = Move::Kind::SmallPair;
            mv.blue_arc = arc;
            mv.red_edge = first_edge_on_red_path(state, x, w);
            mv.witness_pos = order.pos[parent];
            mv.witness_anchor = w;
            return mv;
        }

        // every in-arc of the parent lands on x: walk designated parents up
        // to the first ancestor carrying a red edge (all skipped components
        // are single vertices) and pull a colour down that path
        std::vector<int> chain;
        int cur = parent;
        int top_comp;
        while (true) {
            chain.push_back(order.parent_arc[cur]);
            int up = order.parent[cur];
            if (up == -1) throw std::logic_error("ancestor chain left the explored subgraph");
            if (rc.comps[up].edge_count() >= 1) {
                top_comp = up;
                break;
            }
            cur = up;
        }
        std::reverse(chain.begin(), chain.end());
        Move mv;
        mv.kind = Move::Kind::SmallPairChain;
        mv.blue_arc = arc;
        mv.red_edge = min_red_edge_at(state, state.tail(chain.front()));
        mv.chain_arcs = std::move(chain);
        if (top_comp != h.root_comp) {
            // the top component loses an edge at its own slot; when it is
            // the root the residue drops instead (e(root) > d)
            mv.witness_pos = order.pos[top_comp];
            mv.witness_anchor = state.head(order.parent_arc[top_comp]);
        }
        return mv;
    }
    return std::nullopt;
}

namespace {

// Both fragments of splitting comp at cut (one keeping the troublesome
// child) would exceed d edges; such a flip is withheld unless no
// alternative candidate exists (applying it would only shrink the residue).
bool split_makes_two_large(const OrientedState& state, const RedComponents& rc,
                           const RedComponent& comp, int cut, int anchor, int child_comp,
                           int d) {
    long long anchor_side = red_side_edges(state, comp, cut, anchor);
    long long other_side = comp.edge_count() - 1 - anchor_side;
    long long with_child = anchor_side + 1 + rc.comps[child_comp].edge_count();
    return with_child > d && other_side > d;
}

struct ChildrenScan {
    const OrientedState& state;
    const RedComponents& rc;
    const LegalOrder& order;
    const Params& p;
    std::optional<Move> fallback;  // first candidate withheld by the split guard

    // best blue arc from v into a troublesome child of comp (smallest child
    // edge count, then smallest arc id); -1 if none
    int tc_arc_from(int v, const std::vector<char>& is_tc) const {
        int best = -1;
        for (int a : state.blue_out_arcs(v)) {
            int cw = rc.comp_of[state.head(a)];
            if (cw < 0 || !is_tc[cw]) continue;
            if (best == -1 ||
                rc.comps[cw].edge_count() < rc.comps[rc.comp_of[state.head(best)]].edge_count())
                best = a;
        }
        return best;
    }

    std::optional<Move> consider(int blue_arc, int red_edge, int comp, int anchor,
                                 int child_comp, int witness_pos = -1, int witness_anchor = -1) {
        Move mv;
        mv.kind = Move::Kind::ChildrenReduction;
        mv.blue_arc = blue_arc;
        mv.red_edge = red_edge;
        mv.witness_pos = witness_pos;
        mv.witness_anchor = witness_anchor;
        if (split_makes_two_large(state, rc, rc.comps[comp], red_edge, anchor, child_comp,
                                  p.d)) {
            if (!fallback) fallback = mv;
            return std::nullopt;
        }
        return mv;
    }
};

}  // namespace

std::optional<Move> find_children_reduction_move(const OrientedState& state,
                                                 const RedComponents& rc,
                                                 const ExploredSubgraph& h,
                                                 const LegalOrder& order, const Params& p) {
    std::vector<char> is_tc(rc.comps.size(), 0);
    ChildrenScan scan{state, rc, order, p, std::nullopt};

    for (int t : order.seq) {
        const RedComponent& T = rc.comps[t];
        std::vector<int> tc;
        for (int c : order.children[t])
            if (is_troublesome(rc.comps[c], p)) tc.push_back(c);
        if ((int)tc.size() <= p.k) continue;

        std::fill(is_tc.begin(), is_tc.end(), 0);
        for (int c : tc) is_tc[c] = 1;

        // designated arcs of more than k children cannot share one tail
        std::vector<int> sources;
        for (int c : tc) sources.push_back(state.tail(order.parent_arc[c]));
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
        if (sources.size() < 2) throw std::logic_error("over-quota children share one source");

        if (t == h.root_comp) {
            // a leaf source sheds its own edge onto the child
            for (int s : sources) {
                if (state.red_degree(s) != 1) continue;
                Move mv;
                mv.kind = Move::Kind::ChildrenReduction;
                mv.blue_arc = scan.tc_arc_from(s, is_tc);
                mv.red_edge = min_red_edge_at(state, s);
                return mv;
            }
            // all sources branch: cut between two of them, on whichever
            // side leaves the root fragment strictly smaller
            for (size_t i = 0; i < sources.size(); ++i) {
                for (size_t j = 0; j < sources.size(); ++j) {
                    if (i == j) continue;
                    int x = sources[i], w = sources[j];
                    int arc = scan.tc_arc_from(x, is_tc);
                    int e = first_edge_on_red_path(state, x, w);
                    int child = rc.comp_of[state.head(arc)];
                    long long x_side = red_side_edges(state, T, e, x);
                    long long merged = x_side + 1 + rc.comps[child].edge_count();
                    long long rest = T.edge_count() - 1 - x_side;
                    long long after = std::max<long long>(merged - p.d, 0) +
                                      std::max<long long>(rest - p.d, 0);
                    if (after >= T.edge_count() - p.d) continue;  // dead cut, try the mirror
                    auto mv = scan.consider(arc, e, t, x, child);
                    if (mv) return mv;
                }
            }
            if (p.guarantee && !scan.fallback)
                throw std::logic_error("no residue-reducing cut at the root");
        } else {
            const auto& det = order.determiners[t];
            if (det.empty()) throw std::logic_error("non-root component without determiner");
            for (int x : sources) {
                std::vector<int> others;
                for (int z : det)
                    if (z != x) others.push_back(z);
                if (others.empty()) continue;
                int x_arc = scan.tc_arc_from(x, is_tc);

                // a branching determiner keeps its side large enough
                for (int z : others) {
                    if (state.red_degree(z) < 2) continue;
                    int e = first_edge_on_red_path(state, x, z);
                    auto mv = scan.consider(x_arc, e, t, x, rc.comp_of[state.head(x_arc)],
                                            order.pos[t], z);
                    if (mv) return mv;
                }

                bool all_leaves = true;
                for (int z : others)
                    if (state.red_degree(z) >= 2) all_leaves = false;
                if (!all_leaves) continue;

                for (int z : others) {
                    int z_arc = scan.tc_arc_from(z, is_tc);
                    if (z_arc != -1) {
                        // the determiner hands its single edge to its own child
                        int q = rc.comp_of[state.head(z_arc)];
                        if (rc.comps[q].edge_count() + 1 < T.edge_count()) {
                            Move mv;
                            mv.kind = Move::Kind::ChildrenReduction;
                            mv.blue_arc = z_arc;
                            mv.red_edge = min_red_edge_at(state, z);
                            mv.witness_pos = order.pos[t];
                            mv.witness_anchor = z;
                            return mv;
                        }
                    } else {
                        // cut toward z from whichever source leaves z an edge
                        int e = first_edge_on_red_path(state, x, z);
                        if (red_side_edges(state, T, e, z) >= 1) {
                            auto mv = scan.consider(x_arc, e, t, x, rc.comp_of[state.head(x_arc)],
                                                    order.pos[t], z);
                            if (mv) return mv;
                        } else {
                            int w = -1;
                            for (int s : sources)
                                if (s != x) {
                                    w = s;
                                    break;
                                }
                            int w_arc = scan.tc_arc_from(w, is_tc);
                            int e2 = first_edge_on_red_path(state, w, z);
                            if (red_side_edges(state, T, e2, z) < 1)
                                throw std::logic_error("determiner isolated from both sources");
                            auto mv = scan.consider(w_arc, e2, t, w, rc.comp_of[state.head(w_arc)],
                                                    order.pos[t], z);
                            if (mv) return mv;
                        }
                    }
                }

                // small component whose leaf determiners all feed equally
                // small children: shrinking past the determiner still works
                // because every piece stays at or below d
                if (T.edge_count() < p.d) {
                    int z = others.front();
                    Move mv;
                    mv.kind = Move::Kind::ChildrenReduction;
                    mv.blue_arc = x_arc;
                    mv.red_edge = first_edge_on_red_path(state, x, z);
                    mv.witness_pos = order.pos[t];
                    mv.witness_anchor = z;
                    return mv;
                }
            }
        }
    }
    if (scan.fallback) return scan.fallback;
    return std::nullopt;
}

ExtractionResult extract_certificate(const OrientedState& state, const RedComponents& rc,
                                     const ExploredSubgraph& h, const LegalOrder& order,
                                     const Params& p) {
    for (int v : h.vertices)
        if (state.blue_out_degree(v) < p.k) return ExtractionResult{std::nullopt, v};

    long long total_red = 0, total_vertices = 0;
    std::vector<long long> group_edges(rc.comps.size(), 0), group_vertices(rc.comps.size(), 0);
    std::vector<char> is_leader(rc.comps.size(), 0);

    for (int c : h.comp_ids) {
        total_red += rc.comps[c].edge_count();
        total_vertices += rc.comps[c].vertex_count();
        int leader = c;
        if (is_troublesome(rc.comps[c], p)) {
            leader = order.parent[c];
            if (leader == -1) throw std::logic_error("troublesome root component");
            if (is_troublesome(rc.comps[leader], p))
                throw std::logic_error("troublesome component with troublesome parent");
        }
        is_leader[leader] = 1;
        group_edges[leader] += rc.comps[c].edge_count();
        group_vertices[leader] += rc.comps[c].vertex_count();
    }

    for (int c : h.comp_ids) {
        if (!is_leader[c]) continue;
        Rational ratio(group_edges[c], group_vertices[c]);
        if (c == h.root_comp) {
            if (!(ratio > p.troublesome_threshold))
                throw std::logic_error("root group not strictly above the threshold");
        } else if (ratio < p.troublesome_threshold) {
            throw std::logic_error("component group below the threshold");
        }
    }

    long long inside = state.graph().edges_inside(h.vertices);
    if (inside != total_red + (long long)p.k * total_vertices)
        throw std::logic_error("explored subgraph edge count mismatch");

    DensityCertificate cert;
    cert.vertices = h.vertices;
    cert.edge_count = inside;
    cert.density = Rational(2 * inside, total_vertices);
    cert.claimed_bound = p.density_bound;
    if (!(cert.density > cert.claimed_bound))
        throw std::logic_error("extracted subgraph does not exceed the density bound");
    return ExtractionResult{std::move(cert), std::nullopt};
}

void check_terminal_properties(const OrientedState& state, const RedComponents& rc,
                               const ExploredSubgraph& h, const LegalOrder& order,
                               const Params& p) {
    // parent/child pairs joined by a blue arc, acyclic child: combined size
    for (int c : h.comp_ids) {
        for (int v : rc.comps[c].vertices) {
            for (int a : state.blue_out_arcs(v)) {
                int cw = rc.comp_of[state.head(a)];
                if (cw == c || order.parent[cw] != c) continue;
                if (rc.comps[cw].has_cycle) continue;
                if (rc.comps[c].edge_count() + rc.comps[cw].edge_count() < p.d)
                    throw std::logic_error("terminal state violates the pair-size property");
            }
        }
    }
    // troublesome-children quota for components large enough to shed edges
    bool half_or_less = p.troublesome_threshold <= Rational(1, 2);
    for (int c : h.comp_ids) {
        long long e = rc.comps[c].edge_count();
        if (half_or_less ? e < 2 : e < 3) continue;
        int count = 0;
        for (int child : order.children[c])
            if (is_troublesome(rc.comps[child], p)) ++count;
        if (count > p.k)
            throw std::logic_error("terminal state violates the children quota");
    }
}

namespace {

Decomposition build_decomposition(const OrientedState& state, int k) {
    Decomposition dec;
    dec.parts.assign(k + 1, {});
    dec.special_index = k;
    for (int v = 0; v < state.graph().vertex_count(); ++v) {
        int slot = 0;
        for (int a : state.blue_out_arcs(v)) dec.parts[slot++].push_back(a);
    }
    for (int e = 0; e < state.graph().edge_count(); ++e)
        if (state.is_red(e)) dec.parts[k].push_back(e);
    for (auto& part : dec.parts) std::sort(part.begin(), part.end());
    return dec;
}

Potential measure(const OrientedState& state, const RedComponents& rc, const LegalOrder& order,
                  int d) {
    Potential pot;
    pot.red_arcs = state.red_edge_count();
    for (const RedComponent& comp : rc.comps)
        if (comp.has_cycle) ++pot.cycles;
    pot.residue = residue(rc, d);
    pot.order_vector.reserve(order.seq.size());
    for (int c : order.seq) pot.order_vector.push_back(rc.comps[c].edge_count());
    return pot;
}

DensityCertificate certificate_from_witness(const DensityWitness& w, const Params& p) {
    DensityCertificate cert;
    cert.vertices = w.vertices;
    cert.edge_count = w.edge_count;
    cert.density = w.density;
    cert.claimed_bound = p.density_bound;
    if (!(cert.density > cert.claimed_bound))
        throw std::logic_error("orientation witness does not exceed the density bound");
    return cert;
}

}  // namespace

DecomposeResult decompose(const Multigraph& g, const Params& p, uint64_t seed,
                          const DecomposeOptions& options) {
    DecomposeResult result;
    result.stats.seed = seed;
    uint64_t cap = options.max_iterations
                       ? options.max_iterations
                       : 10ull * (uint64_t)g.edge_count() * (uint64_t)g.edge_count();

    OrientationResult oriented = hakimi_orient(g, p.k + 1);
    if (oriented.witness) {
        // density > 2(k+1) >= the bound: refutation without any search
        result.certificate = certificate_from_witness(*oriented.witness, p);
        if (auto v = verify_certificate(g, *result.certificate, p))
            throw std::logic_error("emitted certificate failed verification: " + v->what);
        return result;
    }

    OrientedState state = colour(*oriented.state, p.k, seed);
    result.stats.saturation_reversals += saturate(state, p.k);

    auto triple = [&](const RedComponents& rc) {
        long long cycles = 0;
        for (const RedComponent& comp : rc.comps) cycles += comp.has_cycle;
        return std::array<long long, 3>{state.red_edge_count(), cycles, residue(rc, p.d)};
    };

    // After a move that improves only the order, the next iteration keeps
    // the same root and pins the order prefix up to the shrunken slot, so
    // the order vectors of consecutive iterations compare slot by slot.
    std::optional<std::vector<int>> pinned_prefix;
    std::optional<Potential> previous;

    while (true) {
        RedComponents rc = red_components(state);
        int root = -1;
        for (int i = 0; i < (int)rc.comps.size(); ++i) {
            if (rc.comps[i].edge_count() <= p.d) continue;
            if (root == -1 || rc.comps[i].edge_count() > rc.comps[root].edge_count()) root = i;
        }
        if (root == -1) {
            result.decomposition = build_decomposition(state, p.k);
            if (auto v = verify_decomposition(g, *result.decomposition, p))
                throw std::logic_error("emitted decomposition failed verification: " + v->what);
            return result;
        }
        if (++result.stats.iterations > cap)
            throw IterationCapExceeded("iteration cap exceeded (" + std::to_string(cap) + ")");

        if (pinned_prefix) {
            root = rc.comp_of[pinned_prefix->front()];
            if (rc.comps[root].edge_count() <= p.d)
                throw std::logic_error("pinned root no longer exceeds d");
        }
        ExploredSubgraph h = explore(state, rc, root);
        LegalOrder order =
            pinned_prefix ? legal_order_with_prefix(state, rc, h,
                                                    {pinned_prefix->begin() + 1,
                                                     pinned_prefix->end()})
                          : canonical_legal_order(state, rc, h);

        if (options.assert_potential && p.guarantee) {
            Potential pot = measure(state, rc, order, p.d);
            if (previous && !(pot < *previous))
                throw std::logic_error("potential did not strictly decrease");
            previous = std::move(pot);
        }

        std::optional<Move> mv = find_cycle_break(state, rc, h, order);
        if (!mv) mv = find_small_pair_move(state, rc, h, order, p);
        if (!mv) mv = find_children_reduction_move(state, rc, h, order, p);

        if (mv) {
            auto before = triple(rc);
            apply_move(state, *mv);
            ++result.stats.moves;
            if (mv->kind == Move::Kind::SmallPairChain)
                ++result.stats.chain_moves;
            else
                ++result.stats.flips;
            if (auto v = validate(state, p.k))
                throw std::logic_error("state invalid after move: " + v->what);
            result.stats.saturation_reversals += saturate(state, p.k);

            auto after = triple(red_components(state));
            if (after < before) {
                pinned_prefix.reset();
            } else if (after == before && mv->witness_pos >= 0) {
                std::vector<int> pins;
                pins.reserve(mv->witness_pos + 1);
                for (int i = 0; i < mv->witness_pos; ++i)
                    pins.push_back(rc.comps[order.seq[i]].vertices.front());
                pins.push_back(mv->witness_anchor);
                pinned_prefix = std::move(pins);
            } else if (p.guarantee) {
                // inside the proven range every move drops the triple or
                // carries an order witness; anything else is a bug
                throw std::logic_error(after == before
                                           ? "move changed neither arcs, cycles nor residue"
                                           : "move increased the potential");
            } else {
                pinned_prefix.reset();  // best-effort range: cap bounds the loop
            }
            continue;
        }

        ExtractionResult ex;
        try {
            if (options.check_terminal_state) {
                check_terminal_properties(state, rc, h, order, p);
                ++result.stats.terminal_checks;
            }
            ex = extract_certificate(state, rc, h, order, p);
        } catch (const std::logic_error& e) {
            if (p.guarantee) throw;
            throw IterationCapExceeded(std::string("stuck outside the guaranteed range: ") +
                                       e.what());
        }
        if (ex.deficient_vertex) {
            ++result.stats.deficiency_repairs;
            int reversals = saturate(state, p.k);
            if (reversals == 0)
                throw std::logic_error("deficient vertex although saturation is at a fixpoint");
            result.stats.saturation_reversals += reversals;
            pinned_prefix.reset();
            continue;
        }
        result.certificate = std::move(ex.certificate);
        if (auto v = verify_certificate(g, *result.certificate, p))
            throw std::logic_error("emitted certificate failed verification: " + v->what);
        return result;
    }
}

}  // namespace pfd
