#include <doctest.h>

#include <random>
#include <tuple>

#include "pfd/decomposer.hpp"
#include "pfd/density.hpp"
#include "pfd/io.hpp"
#include "pfd/orient.hpp"
#include "pfd/verify.hpp"

using namespace pfd;

namespace {

// Builds a state with the given arcs (tail first) and per-edge colours.
OrientedState make_state(int n, const std::vector<std::tuple<int, int, Colour>>& arcs,
                         Multigraph& storage) {
    std::vector<std::pair<int, int>> edges;
    for (auto& [u, v, c] : arcs) edges.push_back({u, v});
    storage = Multigraph(n, edges);
    OrientedState st(storage);
    for (size_t e = 0; e < arcs.size(); ++e) st.set_colour((int)e, std::get<2>(arcs[e]));
    return st;
}

constexpr Colour R = Colour::Red;
constexpr Colour B = Colour::Blue;

}  // namespace

TEST_CASE("residue sums the overshoot of each component") {
    Multigraph g;
    // components with 5, 1 and 3 red edges
    OrientedState st = make_state(
        12, {{1, 0, R}, {2, 1, R}, {3, 2, R}, {4, 3, R}, {5, 4, R},  // 5-edge path
             {7, 6, R},                                              // 1 edge
             {9, 8, R}, {10, 9, R}, {11, 10, R}},                    // 3-edge path
        g);
    RedComponents rc = red_components(st);
    CHECK(residue(rc, 2) == 4);
    CHECK(residue(rc, 3) == 2);
    CHECK(residue(rc, 7) == 0);

    OrientedState single = make_state(8, {{1, 0, R}, {2, 1, R}, {3, 2, R}, {4, 3, R},
                                          {5, 4, R}, {6, 5, R}, {7, 6, R}},
                                      g);
    CHECK(residue(red_components(single), 3) == 4);
}

TEST_CASE("troublesome components compare exactly against d/(d+k+1)") {
    Params p12 = Params::make(1, 2);
    Params p13 = Params::make(1, 3);
    CHECK(is_troublesome(0, 1, p12));        // single vertex, any parameters
    CHECK(is_troublesome(0, 1, p13));
    CHECK_FALSE(is_troublesome(1, 2, p12));  // K2 at 1/2 vs 2/4: not strict
    CHECK(is_troublesome(1, 2, p13));        // 1/2 < 3/5
    CHECK_FALSE(is_troublesome(2, 4, p12));  // a T_C group: 2/4 >= 2/4
}

TEST_CASE("explore stops at the root component when nothing leaves it") {
    Multigraph g;
    OrientedState st = make_state(4, {{1, 0, R}, {2, 1, R}, {3, 2, B}}, g);
    // arc (3,2) is blue INTO the component; closure must not pull 3 in
    RedComponents rc = red_components(st);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
    CHECK(h.vertices == std::vector<int>{0, 1, 2});
}

TEST_CASE("explore follows blue arcs forward and red edges both ways") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 3 + (int)(rng() % 10);
        int m = (int)(rng() % 26);
        std::vector<std::pair<int, int>> es;
        for (int i = 0; i < m; ++i) {
            int u = (int)(rng() % n), v = (int)(rng() % (n - 1));
            if (v >= u) ++v;
            es.push_back({u, v});
        }
        Multigraph g(n, es);
        int k = 1 + (int)(rng() % 2);
        auto orc = hakimi_orient(g, k + 1);
        if (!orc.state) continue;
        OrientedState st = colour(*orc.state, k, rng());
        saturate(st, k);
        RedComponents rc = red_components(st);
        ExploredSubgraph h = explore(st, rc, rc.comp_of[(int)(rng() % n)]);
        for (int v : h.vertices) {
            for (int a : st.blue_out_arcs(v)) CHECK(h.in_h[st.head(a)]);
            for (int e : g.incident(v))
                if (st.is_red(e)) CHECK(h.in_h[g.other_endpoint(e, v)]);
        }
    }
}

TEST_CASE("canonical order is greedy by edge count") {
    Multigraph g;
    SUBCASE("root alone") {
        OrientedState st = make_state(3, {{1, 0, R}, {2, 1, R}}, g);
        RedComponents rc = red_components(st);
        ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
        LegalOrder order = canonical_legal_order(st, rc, h);
        CHECK(order.seq.size() == 1);
        CHECK(order.parent[order.seq[0]] == -1);
    }
    SUBCASE("children sorted by edge count, not discovery") {
        // root {0,1} with arcs to a 3-edge child {2..5} and a 1-edge child {6,7}
        OrientedState st = make_state(8, {{0, 1, R},
                                          {0, 2, B},
                                          {1, 6, B},
                                          {3, 2, R}, {4, 3, R}, {5, 4, R},
                                          {7, 6, R}},
                                      g);
        RedComponents rc = red_components(st);
        ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
        LegalOrder order = canonical_legal_order(st, rc, h);
        REQUIRE(order.seq.size() == 3);
        CHECK(rc.comps[order.seq[1]].edge_count() == 1);
        CHECK(rc.comps[order.seq[2]].edge_count() == 3);
        CHECK(order.parent[order.seq[1]] == order.seq[0]);
        CHECK(order.determiners[order.seq[1]] == std::vector<int>{6});
        CHECK(order.determiners[order.seq[2]] == std::vector<int>{2});
    }
}

TEST_CASE("flip reproduces the four-vertex picture") {
    // x=0, v=1, y=2, w=3: red x-v, blue (x,y), red (y,w)
    Multigraph g;
    OrientedState st = make_state(4, {{0, 1, R}, {0, 2, B}, {2, 3, R}}, g);
    flip(st, 0, 1);
    CHECK(st.colour(0) == B);
    CHECK(st.tail(0) == 0);  // reoriented away from x (already was)
    CHECK(st.colour(1) == R);
    CHECK(st.tail(1) == 2);  // now (y, x)
    CHECK(st.colour(2) == R);
    CHECK(st.tail(2) == 3);  // path arc reversed to (w, y)
    CHECK(st.red_edge_count() == 2);

    // same picture with the red edge pointing into x: it must be reoriented
    OrientedState st2 = make_state(4, {{1, 0, R}, {0, 2, B}, {2, 3, R}}, g);
    flip(st2, 0, 1);
    CHECK(st2.colour(0) == B);
    CHECK(st2.tail(0) == 0);
}

TEST_CASE("flip with an empty red path only swaps the pair") {
    Multigraph g;
    OrientedState st = make_state(3, {{0, 1, R}, {0, 2, B}}, g);
    flip(st, 0, 1);
    CHECK(st.colour(0) == B);
    CHECK(st.colour(1) == R);
    CHECK(st.tail(1) == 2);
    CHECK(st.red_edge_count() == 1);
}

TEST_CASE("flip rejects bad preconditions") {
    Multigraph g;
    OrientedState st = make_state(4, {{0, 1, R}, {0, 2, B}, {2, 3, R}}, g);
    CHECK_THROWS_AS(flip(st, 0, 2), std::invalid_argument);   // arc not blue
    CHECK_THROWS_AS(flip(st, 1, 1), std::invalid_argument);   // edge not red
    CHECK_THROWS_AS(flip(st, 2, 1), std::invalid_argument);   // red edge not at tail

    // y inside a red cycle
    OrientedState cyc = make_state(3, {{0, 1, R}, {1, 2, R}, {2, 0, R}, {0, 1, B}}, g);
    CHECK_THROWS_AS(flip(cyc, 0, 3), std::invalid_argument);
}

TEST_CASE("cycle break merges a red cycle into a tree child") {
    Multigraph g;
    OrientedState st = make_state(4, {{0, 1, R}, {1, 2, R}, {2, 0, R},
                                      {0, 3, B}, {1, 3, B}, {2, 3, B}, {3, 1, B}},
                                  g);
    REQUIRE_FALSE(validate(st, 1).has_value());
    RedComponents rc = red_components(st);
    Params p = Params::make(1, 2);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
    LegalOrder order = canonical_legal_order(st, rc, h);

    auto mv = find_cycle_break(st, rc, h, order);
    REQUIRE(mv.has_value());
    CHECK(mv->kind == Move::Kind::CycleBreak);
    int red_before = st.red_edge_count();
    apply_move(st, *mv);
    CHECK_FALSE(validate(st, 1).has_value());
    CHECK(st.red_edge_count() == red_before);
    RedComponents after = red_components(st);
    long long cycles = 0;
    for (auto& c : after.comps) cycles += c.has_cycle;
    CHECK(cycles == 0);
    CHECK(residue(after, p.d) <= residue(rc, p.d));
}

TEST_CASE("cycle break finds nothing without red cycles") {
    Multigraph g;
    OrientedState st = make_state(4, {{1, 0, R}, {2, 1, R}, {3, 2, R}}, g);
    RedComponents rc = red_components(st);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
    LegalOrder order = canonical_legal_order(st, rc, h);
    CHECK_FALSE(find_cycle_break(st, rc, h, order).has_value());
}

TEST_CASE("small-pair case 1 shrinks the parent at its slot") {
    // root: 4-edge red path {0..4}; child {5,6} with one red edge, entered
    // at its determiner 6; grandchild {7} hanging from x=5
    Multigraph g;
    OrientedState st = make_state(8, {{1, 0, R}, {2, 1, R}, {3, 2, R}, {4, 3, R},
                                      {1, 2, B}, {2, 3, B}, {3, 4, B}, {4, 0, B},
                                      {5, 6, R}, {5, 7, B}, {0, 6, B}, {7, 0, B}},
                                  g);
    REQUIRE_FALSE(validate(st, 1).has_value());
    Params p = Params::make(1, 3);
    RedComponents rc = red_components(st);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
    LegalOrder order = canonical_legal_order(st, rc, h);
    std::vector<long long> before;
    for (int c : order.seq) before.push_back(rc.comps[c].edge_count());
    CHECK(before == std::vector<long long>{4, 1, 0});

    CHECK_FALSE(find_cycle_break(st, rc, h, order).has_value());
    auto mv = find_small_pair_move(st, rc, h, order, p);
    REQUIRE(mv.has_value());
    CHECK(mv->kind == Move::Kind::SmallPair);
    CHECK(mv->chain_arcs.empty());
    CHECK(mv->witness_pos == 1);
    CHECK(mv->witness_anchor == 6);

    int red_before = st.red_edge_count();
    apply_move(st, *mv);
    CHECK_FALSE(validate(st, 1).has_value());
    CHECK(st.red_edge_count() == red_before);

    RedComponents rc2 = red_components(st);
    CHECK(residue(rc2, p.d) == residue(rc, p.d));
    ExploredSubgraph h2 = explore(st, rc2, rc2.comp_of[0]);
    LegalOrder order2 = canonical_legal_order(st, rc2, h2);
    std::vector<long long> after;
    for (int c : order2.seq) after.push_back(rc2.comps[c].edge_count());
    CHECK(std::lexicographical_compare(after.begin(), after.end(), before.begin(),
                                       before.end()));
}

TEST_CASE("small-pair case 2 pulls a colour down a one-step chain") {
    // root: 3-edge red path {4..7}; singleton {3} under it; component
    // {0,1} whose only determiner is 0; singleton child {2} under 0
    Multigraph g;
    OrientedState st = make_state(8, {{0, 1, R},              // component {0,1}
                                      {0, 2, B},
                                      {3, 0, B},              // singleton 3 determines {0,1} at 0
                                      {4, 3, B},              // root reaches the singleton
                                      {5, 4, R}, {6, 5, R}, {7, 6, R},
                                      {5, 6, B}, {6, 7, B}, {7, 5, B},
                                      {2, 1, B}, {1, 2, B}},
                                  g);
    REQUIRE_FALSE(validate(st, 1).has_value());
    Params p = Params::make(1, 2);
    RedComponents rc = red_components(st);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[4]);
    CHECK(h.vertices == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
    LegalOrder order = canonical_legal_order(st, rc, h);

    CHECK_FALSE(find_cycle_break(st, rc, h, order).has_value());
    // first trigger in order position: parent {3} (0 edges), child {0,1}
    // (1 edge); every in-arc of {3} lands on vertex 3, so the chain climbs
    // to the root and frees one of its red edges
    auto mv = find_small_pair_move(st, rc, h, order, p);
    REQUIRE(mv.has_value());
    CHECK(mv->kind == Move::Kind::SmallPairChain);
    CHECK(mv->blue_arc == 2);                       // (3, 0)
    CHECK(mv->chain_arcs == std::vector<int>{3});   // the root's arc into 3
    CHECK(mv->red_edge == 4);                       // red edge at the chain top 4

    int red_before = st.red_edge_count();
    long long res_before = residue(rc, p.d);
    apply_move(st, *mv);
    CHECK_FALSE(validate(st, 1).has_value());
    CHECK(st.red_edge_count() == red_before);

    CHECK(st.colour(2) == R);
    CHECK(st.tail(2) == 0);   // (y, x) with y = 0, x = 3
    CHECK(st.colour(3) == B);
    CHECK(st.tail(3) == 3);   // reversed: 3 -> 4
    CHECK(st.colour(4) == B);
    CHECK(st.tail(4) == 4);   // e oriented away from the top vertex 4
    RedComponents rc2 = red_components(st);
    CHECK(residue(rc2, p.d) < res_before);
}

TEST_CASE("small-pair case 2 hops across singletons below a cyclic component") {
    // k = 2, d = 6. Root: 7-edge red path {0..7}. Singleton {8}. Component
    // P = {9,10,11,12}: red triangle plus a pendant at 9, entered only at
    // 9, so the (singleton, P) pair is skipped (P has a cycle) and the
    // (P, {13}) trigger walks the chain 0 -> 8 -> 9.
    Multigraph g;
    OrientedState st = make_state(
        14,
        {{1, 0, R}, {2, 1, R}, {3, 2, R}, {4, 3, R}, {5, 4, R}, {6, 5, R}, {7, 6, R},
         {0, 8, B},                                    // 7: root -> singleton
         {8, 9, B},                                    // 8: singleton -> x
         {9, 13, B},                                   // 9: trigger (x, y)
         {9, 10, R},                                   // 10: pendant into the triangle
         {10, 11, R}, {11, 12, R}, {12, 10, R},        // 11..13: red triangle
         {1, 2, B}, {1, 3, B}, {2, 3, B}, {2, 4, B}, {3, 4, B}, {3, 5, B},
         {4, 5, B}, {4, 6, B}, {5, 6, B}, {5, 7, B}, {6, 7, B}, {6, 0, B},
         {7, 0, B}, {7, 1, B},
         {9, 11, B}, {10, 12, B}, {10, 9, B}, {11, 9, B}, {11, 10, B},
         {12, 9, B}, {12, 11, B},
         {13, 9, B}, {13, 10, B}},
        g);
    REQUIRE_FALSE(validate(st, 2).has_value());
    Params p = Params::make(2, 6);
    RedComponents rc = red_components(st);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
    LegalOrder order = canonical_legal_order(st, rc, h);

    CHECK_FALSE(find_cycle_break(st, rc, h, order).has_value());
    auto mv = find_small_pair_move(st, rc, h, order, p);
    REQUIRE(mv.has_value());
    CHECK(mv->kind == Move::Kind::SmallPairChain);
    CHECK(mv->blue_arc == 9);
    CHECK(mv->chain_arcs == std::vector<int>{7, 8});
    CHECK(mv->red_edge == 0);  // red edge at the chain top, vertex 0

    long long res_before = residue(rc, p.d);
    int red_before = st.red_edge_count();
    apply_move(st, *mv);
    CHECK_FALSE(validate(st, 2).has_value());
    CHECK(st.red_edge_count() == red_before);

    CHECK(st.colour(9) == R);
    CHECK(st.tail(9) == 13);  // (y, x)
    CHECK(st.colour(8) == B);
    CHECK(st.tail(8) == 9);   // x -> singleton
    CHECK(st.colour(7) == B);
    CHECK(st.tail(7) == 8);   // singleton -> root vertex
    CHECK(st.colour(0) == B);
    CHECK(st.tail(0) == 0);   // freed edge points away from the top vertex
    RedComponents rc2 = red_components(st);
    CHECK(residue(rc2, p.d) < res_before);
}

TEST_CASE("children reduction fires only above the quota") {
    // non-root path component with 2 edges and two singleton children
    // hanging from different vertices; (k, d) = (1, 2)
    Multigraph g;
    OrientedState st = make_state(
        9,
        {{1, 0, R}, {2, 1, R}, {3, 2, R},             // root path {0..3}
         {1, 2, B}, {2, 3, B}, {3, 0, B},
         {4, 5, R}, {5, 6, R},                        // component T = {4,5,6}
         {4, 7, B}, {5, 8, B},                        // arcs to singleton children {7}, {8}
         {0, 6, B},                                   // root determines T at 6
         {7, 4, B}, {8, 4, B}, {6, 0, B}},
        g);
    REQUIRE_FALSE(validate(st, 1).has_value());
    Params p = Params::make(1, 2);
    RedComponents rc = red_components(st);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
    LegalOrder order = canonical_legal_order(st, rc, h);

    CHECK_FALSE(find_cycle_break(st, rc, h, order).has_value());
    CHECK_FALSE(find_small_pair_move(st, rc, h, order, p).has_value());
    auto mv = find_children_reduction_move(st, rc, h, order, p);
    REQUIRE(mv.has_value());
    CHECK(mv->kind == Move::Kind::ChildrenReduction);

    Potential before;
    before.red_arcs = st.red_edge_count();
    before.residue = residue(rc, p.d);
    for (int c : order.seq) before.order_vector.push_back(rc.comps[c].edge_count());

    apply_move(st, *mv);
    CHECK_FALSE(validate(st, 1).has_value());
    RedComponents rc2 = red_components(st);
    CHECK(st.red_edge_count() == before.red_arcs);
    CHECK(residue(rc2, p.d) <= before.residue);
}

TEST_CASE("children reduction stays quiet at or below k children") {
    Multigraph g;
    OrientedState st = make_state(6, {{1, 0, R}, {2, 1, R}, {3, 2, R},
                                      {1, 2, B}, {2, 3, B}, {3, 4, B},
                                      {4, 0, B}, {5, 0, B}},
                                  g);
    Params p = Params::make(1, 2);
    RedComponents rc = red_components(st);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
    LegalOrder order = canonical_legal_order(st, rc, h);
    CHECK_FALSE(find_children_reduction_move(st, rc, h, order, p).has_value());
}

TEST_CASE("extraction reports a deficient vertex for repair") {
    Multigraph g;
    OrientedState st = make_state(5, {{1, 0, R}, {2, 1, R}, {3, 2, R},
                                      {1, 2, B}, {2, 3, B}, {3, 4, B}, {0, 1, B}},
                                  g);
    REQUIRE_FALSE(validate(st, 1).has_value());
    Params p = Params::make(1, 2);
    RedComponents rc = red_components(st);
    ExploredSubgraph h = explore(st, rc, rc.comp_of[0]);
    LegalOrder order = canonical_legal_order(st, rc, h);
    ExtractionResult ex = extract_certificate(st, rc, h, order, p);
    REQUIRE(ex.deficient_vertex.has_value());
    CHECK(*ex.deficient_vertex == 4);
}

TEST_CASE("decompose handles the canonical instances") {
    Params p12 = Params::make(1, 2);

    SUBCASE("K4 sits exactly on the threshold and decomposes") {
        Multigraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        CHECK(mad_exact(k4).density == p12.density_bound);
        DecomposeOptions opt;
        opt.assert_potential = true;
        DecomposeResult r = decompose(k4, p12, 1, opt);
        REQUIRE(r.decomposition.has_value());
        CHECK_FALSE(verify_decomposition(k4, *r.decomposition, p12).has_value());
        CHECK(bruteforce_decomposition_exists(k4, p12));
    }

    SUBCASE("a single vertex yields k+1 empty parts") {
        Multigraph one(1, {});
        DecomposeResult r = decompose(one, Params::make(2, 3), 0, {});
        REQUIRE(r.decomposition.has_value());
        CHECK(r.decomposition->parts.size() == 3);
        for (auto& part : r.decomposition->parts) CHECK(part.empty());
    }

    SUBCASE("five parallel edges fail at the orientation stage") {
        Multigraph bundle(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}});
        DecomposeResult r = decompose(bundle, p12, 0, {});
        REQUIRE(r.certificate.has_value());
        CHECK(r.certificate->density == Rational(5));
        CHECK_FALSE(verify_certificate(bundle, *r.certificate, p12).has_value());
    }

    SUBCASE("the doubled triangle is certified through the search") {
        Multigraph dt(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 2}, {0, 2}});
        CHECK(mad_exact(dt).density == Rational(4));   // orientable at cap 2
        CHECK_FALSE(bruteforce_decomposition_exists(dt, p12));
        DecomposeOptions opt;
        opt.assert_potential = true;
        opt.check_terminal_state = true;
        DecomposeResult r = decompose(dt, p12, 3, opt);
        REQUIRE(r.certificate.has_value());
        CHECK(r.certificate->density > p12.density_bound);
        CHECK_FALSE(verify_certificate(dt, *r.certificate, p12).has_value());
    }

    SUBCASE("results are reproducible under a fixed seed") {
        Multigraph g(6, {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0},
                         {1, 3}, {2, 4}, {0, 3}});
        Params p = Params::make(1, 3);
        DecomposeResult a = decompose(g, p, 42, {});
        DecomposeResult b = decompose(g, p, 42, {});
        CHECK(result_to_json(make_result_document(p, a)) ==
              result_to_json(make_result_document(p, b)));
    }
}

TEST_CASE("iteration cap surfaces as its own error") {
    // d = 1 carries no guarantee; a tiny cap must abort cleanly either way
    Multigraph bundle(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
    Params p = Params::make(1, 1);
    DecomposeOptions opt;
    opt.max_iterations = 2;
    try {
        DecomposeResult r = decompose(bundle, p, 0, opt);
        CHECK(r.certificate.has_value());  // legitimate alternative outcome
    } catch (const IterationCapExceeded&) {
        CHECK(true);
    }
}
