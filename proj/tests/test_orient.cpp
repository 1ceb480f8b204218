#include <doctest.h>

#include <random>

#include "pfd/density.hpp"
#include "pfd/orient.hpp"

using namespace pfd;

namespace {

Multigraph k4() { return Multigraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

Multigraph random_multigraph(std::mt19937_64& rng, int max_n, int max_m) {
    int n = 2 + (int)(rng() % (max_n - 1));
    int m = (int)(rng() % (max_m + 1));
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < m; ++i) {
        int u = (int)(rng() % n), v = (int)(rng() % (n - 1));
        if (v >= u) ++v;
        es.push_back({u, v});
    }
    return Multigraph(n, es);
}

}  // namespace

TEST_CASE("hakimi orients a 5-cycle with cap 1") {
    Multigraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    OrientationResult r = hakimi_orient(c5, 1);
    REQUIRE(r.state.has_value());
    for (int v = 0; v < 5; ++v) CHECK(r.state->out_degree(v) == 1);
}

TEST_CASE("hakimi returns a witness exactly when the graph is too dense") {
    OrientationResult r = hakimi_orient(k4(), 1);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->vertices == std::vector<int>{0, 1, 2, 3});
    CHECK(r.witness->density == Rational(3));
    CHECK(r.witness->density > Rational(2));

    r = hakimi_orient(k4(), 2);
    REQUIRE(r.state.has_value());
    CHECK(r.state->max_out_degree() <= 2);
}

TEST_CASE("orientation branch iff mad at most twice the cap") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 120; ++trial) {
        Multigraph g = random_multigraph(rng, 8, 16);
        for (int cap = 1; cap <= 3; ++cap) {
            OrientationResult r = hakimi_orient(g, cap);
            bool feasible =
                g.edge_count() == 0 || mad_exact(g).density <= Rational(2 * (long long)cap);
            CHECK(r.state.has_value() == feasible);
            if (r.state) {
                CHECK(r.state->max_out_degree() <= cap);
                CHECK(r.state->red_edge_count() == 0);
            } else {
                CHECK(r.witness->density > Rational(2 * (long long)cap));
            }
        }
    }
}

TEST_CASE("colour assigns one red out-arc per overloaded vertex") {
    // two vertices with 4 parallel edges: cap-2 orientation gives both
    // vertices out-degree 2 = k+1 for k=1
    Multigraph bundle(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
    OrientationResult r = hakimi_orient(bundle, 2);
    REQUIRE(r.state.has_value());
    OrientedState st = colour(*r.state, 1, 5);
    CHECK(st.red_edge_count() == 2);  // one per vertex
    CHECK(st.red_out_degree(0) == 1);
    CHECK(st.red_out_degree(1) == 1);

    // all out-degrees at most k: everything stays blue
    Multigraph path(3, {{0, 1}, {1, 2}});
    OrientedState sp = colour(OrientedState(path), 1, 5);
    CHECK(sp.red_edge_count() == 0);

    CHECK_THROWS_AS(colour(OrientedState(bundle), 1, 5), std::invalid_argument);  // out-deg 4

    // determinism under a fixed seed
    OrientedState a = colour(*r.state, 1, 99), b = colour(*r.state, 1, 99);
    for (int e = 0; e < bundle.edge_count(); ++e) CHECK(a.colour(e) == b.colour(e));
}

TEST_CASE("saturate reverses a two-edge path out of the middle vertex") {
    Multigraph g(3, {{1, 0}, {1, 2}});  // arcs (b,a) and (b,c) out of b=1
    OrientedState st = colour(OrientedState(g), 1, 0);
    CHECK(st.red_edge_count() == 1);
    int reversals = saturate(st, 1);
    CHECK(reversals == 1);
    CHECK(st.red_edge_count() == 0);
    CHECK(st.out_degree(0) == 1);
    CHECK(st.out_degree(1) == 1);
    CHECK(st.out_degree(2) == 0);
    CHECK_FALSE(validate(st, 1).has_value());
}

TEST_CASE("saturate leaves already-saturated states alone") {
    Multigraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    OrientedState st = colour(*hakimi_orient(c5, 2).state, 1, 7);
    std::vector<int> tails;
    for (int e = 0; e < 5; ++e) tails.push_back(st.tail(e));
    CHECK(saturate(st, 1) == 0);
    for (int e = 0; e < 5; ++e) CHECK(st.tail(e) == tails[e]);
}

TEST_CASE("saturation reaches its fixpoint and never adds red arcs") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 80; ++trial) {
        Multigraph g = random_multigraph(rng, 10, 24);
        int k = 1 + (int)(rng() % 3);
        OrientationResult r = hakimi_orient(g, k + 1);
        if (!r.state) continue;
        OrientedState st = colour(*r.state, k, rng());
        int red_before = st.red_edge_count();
        int reversals = saturate(st, k);
        CHECK(st.red_edge_count() == red_before - reversals);
        CHECK(saturation_fixpoint(st, k));
        CHECK_FALSE(validate(st, k).has_value());
        // every vertex still holding a red out-arc is at out-degree k+1
        for (int v = 0; v < g.vertex_count(); ++v)
            if (st.red_out_degree(v) == 1) CHECK(st.out_degree(v) == k + 1);
    }
}
