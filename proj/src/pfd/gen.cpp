#include "pfd/gen.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>

namespace pfd {

namespace {

std::pair<int, int> random_pair(std::mt19937_64& rng, int n) {
    int u = (int)(rng() % n);
    int v = (int)(rng() % (n - 1));
    if (v >= u) ++v;
    return {u, v};
}

}  // namespace

GeneratedInstance gen_pseudoforest_union(int n, int k, int d, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_pseudoforest_union: n must be >= 1");
    if (k < 0 || d < 1) throw std::invalid_argument("gen_pseudoforest_union: bad parameters");
    std::mt19937_64 rng(seed);

    std::vector<std::pair<int, int>> edges;
    Decomposition planted;
    planted.parts.assign(k + 1, {});
    planted.special_index = k;

    // k free pseudoforests: out-degree <= 1 per vertex
    for (int part = 0; part < k; ++part) {
        for (int v = 0; v < n; ++v) {
            if (n < 2 || rng() % 10 < 3) continue;
            int w = (int)(rng() % (n - 1));
            if (w >= v) ++w;
            planted.parts[part].push_back((int)edges.size());
            edges.emplace_back(v, w);
        }
    }

    // special part: disjoint chunks, each a tree or unicyclic with <= d edges
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    size_t at = 0;
    while (at < perm.size()) {
        int remaining = (int)(perm.size() - at);
        int size = 1 + (int)(rng() % std::min(remaining, d + 1));
        for (int i = 1; i < size; ++i) {
            int child = perm[at + i];
            int parent = perm[at + rng() % i];
            planted.parts[k].push_back((int)edges.size());
            edges.emplace_back(child, parent);
        }
        if (size >= 2 && size - 1 < d && rng() % 2 == 0) {
            auto [a, b] = random_pair(rng, size);
            planted.parts[k].push_back((int)edges.size());
            edges.emplace_back(perm[at + a], perm[at + b]);
        }
        at += size;
    }

    GeneratedInstance out;
    out.graph = Multigraph(n, edges);
    out.planted = std::move(planted);
    return out;
}

Multigraph sample_multigraph(const GenSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("sample_multigraph: n must be >= 2");
    if (spec.multi_edge_prob < Rational(0) || spec.multi_edge_prob > Rational(1))
        throw std::invalid_argument("sample_multigraph: probability out of range");
    std::mt19937_64 rng(spec.seed);
    long long m =
        std::max<long long>(1, (long long)spec.n * spec.target_density.num() /
                                   (2 * spec.target_density.den()));
    long long prob_num = spec.multi_edge_prob.num(), prob_den = spec.multi_edge_prob.den();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (long long i = 0; i < m; ++i) {
        if (!edges.empty() && (long long)(rng() % prob_den) < prob_num)
            edges.push_back(edges[rng() % edges.size()]);
        else
            edges.push_back(random_pair(rng, spec.n));
    }
    return Multigraph(spec.n, edges);
}

GeneratedInstance gen_below_threshold(int n, int k, int d, uint64_t seed, int tries) {
    if (n < 2) throw std::invalid_argument("gen_below_threshold: n must be >= 2");
    Rational bound = threshold(k, d);
    std::mt19937_64 rng(seed);

    for (int attempt = 0; attempt < tries; ++attempt) {
        GenSpec spec;
        spec.n = n;
        // 50..95 percent of the bound, denser retries drifting sparser
        spec.target_density = bound * Rational(50 + (long long)(rng() % 46), 100);
        spec.seed = rng();
        Multigraph g = sample_multigraph(spec);
        DensityWitness w = mad_exact(g);
        if (w.density <= bound) {
            GeneratedInstance out;
            out.graph = std::move(g);
            out.witness = std::move(w);
            return out;
        }
    }
    throw std::runtime_error("gen_below_threshold: tries exhausted");
}

GeneratedInstance gen_above_threshold(int n, int k, int d, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_above_threshold: n must be >= 2");
    Rational bound = threshold(k, d);
    std::mt19937_64 rng(seed);

    int core = 2 + (int)(rng() % std::min(3, n - 1));  // 2..4 vertices
    // smallest edge count with 2*e/core strictly above the bound
    long long needed = (bound.num() * core) / (2 * bound.den()) + 1;
    std::vector<std::pair<int, int>> edges;
    for (long long i = 0; i < needed; ++i) {
        auto [a, b] = random_pair(rng, core);
        edges.emplace_back(a, b);
    }
    // sparse fringe hanging off the rest
    for (int v = core; v < n; ++v)
        if (rng() % 2 == 0) edges.emplace_back(v, (int)(rng() % v));

    GeneratedInstance out;
    out.graph = Multigraph(n, edges);
    DensityWitness w;
    for (int v = 0; v < core; ++v) w.vertices.push_back(v);
    w.edge_count = out.graph.edges_inside(w.vertices);
    w.density = Rational(2 * w.edge_count, core);
    assert(w.density > bound);
    out.witness = std::move(w);
    return out;
}

}  // namespace pfd
