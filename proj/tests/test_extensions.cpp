#include <doctest.h>

#include <random>

#include "grex/enumerate.hpp"
#include "grex/extensions.hpp"
#include "grex/isomorphism.hpp"
#include "grex/wl.hpp"

using namespace grex;

namespace {

Graph two_cycles(int l) { return disjoint_union(make_cycle(l), make_cycle(l)); }

}  // namespace

TEST_CASE("S3 separates triangle counts, falls back to 1-WL when uniform") {
    // C6 vs 2C3: per-node triangle counts 0 vs 1
    CHECK(extension_distinguishes(ExtensionConfig::s(3), make_cycle(6), two_cycles(3)));

    // C8 vs C4+C4: triangle-free, identical per-node path-of-3 counts; the
    // initial colors are uniform and plain 1-WL cannot split 2-regular
    // graphs of equal size.
    CHECK_FALSE(extension_distinguishes(ExtensionConfig::s(3), make_cycle(8), two_cycles(4)));
    CHECK_FALSE(distinguishes(WlConfig::wl1(), make_cycle(8), two_cycles(4)));

    // S4 sees the induced C4 inside C4+C4 that C8 lacks
    CHECK(extension_distinguishes(ExtensionConfig::s(4), make_cycle(8), two_cycles(4)));
}

TEST_CASE("ego-net classes: vertex-transitive graphs are monochrome") {
    EgoNetClassifier pool;
    auto colors = egonet_init_colors(make_cycle(6), 1, pool);
    for (const auto& c : colors) CHECK(c == colors[0]);
    CHECK(pool.class_count() == 1);

    // path: ends and interior differ
    EgoNetClassifier pool2;
    auto pc = egonet_init_colors(make_path(4), 1, pool2);
    CHECK(pc[0] == pc[3]);
    CHECK(pc[1] == pc[2]);
    CHECK(pc[0] != pc[1]);
}

TEST_CASE("N1 vs N2 on the C8 / C4+C4 pair") {
    CHECK_FALSE(extension_distinguishes(ExtensionConfig::n(1), make_cycle(8), two_cycles(4)));
    CHECK(extension_distinguishes(ExtensionConfig::n(2), make_cycle(8), two_cycles(4)));
}

TEST_CASE("M1 signature properties") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + int(rng() % 6);
        Graph g(n);
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v)
                if (rng() % 3 == 0) g.add_edge(u, v);
        Graph h = apply_permutation(g, Permutation::random(n, rng));
        CHECK(marking_signature(g) == marking_signature(h));
        CHECK_FALSE(extension_distinguishes(ExtensionConfig::m1(), g, h));
    }
    CHECK(extension_distinguishes(ExtensionConfig::m1(), make_cycle(6), two_cycles(3)));
}

TEST_CASE("dominance: S3 within N1, S4 within N2") {
    // over all 1-WL-equal pairs of 7-node graphs plus the classics
    std::vector<std::pair<Graph, Graph>> pairs{
        {make_cycle(6), two_cycles(3)},
        {make_cycle(8), two_cycles(4)},
        {make_cycle(7), disjoint_union(make_cycle(3), make_cycle(4))},
    };
    auto graphs = enumerate_nonisomorphic(6);
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = i + 1; j < graphs.size(); ++j)
            if (!distinguishes(WlConfig::wl1(), graphs[i], graphs[j]) &&
                pairs.size() < 40)
                pairs.emplace_back(graphs[i], graphs[j]);

    for (const auto& [g, h] : pairs) {
        bool s3 = extension_distinguishes(ExtensionConfig::s(3), g, h);
        bool n1 = extension_distinguishes(ExtensionConfig::n(1), g, h);
        bool s4 = extension_distinguishes(ExtensionConfig::s(4), g, h);
        bool n2 = extension_distinguishes(ExtensionConfig::n(2), g, h);
        if (s3) REQUIRE(n1);
        if (s4) REQUIRE(n2);
    }
}

TEST_CASE("whole-graph ego-nets decide exact isomorphism") {
    std::mt19937_64 rng(77);
    int checked = 0;
    while (checked < 8) {
        int n = 5 + int(rng() % 3);
        Graph g(n), h(n);
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v) {
                if (rng() % 2) g.add_edge(u, v);
                if (rng() % 2) h.add_edge(u, v);
            }
        if (!is_connected(g) || !is_connected(h)) continue;
        if (g.edge_count() != h.edge_count()) continue;
        int k = std::max(all_pairs_distances(g).diameter, all_pairs_distances(h).diameter) + 1;
        bool nk = extension_distinguishes(ExtensionConfig::n(k), g, h);
        CHECK(nk == !is_isomorphic(g, h));
        ++checked;
    }
}

TEST_CASE("signatures agree with pairwise verdicts") {
    std::vector<std::pair<Graph, Graph>> pairs{
        {make_cycle(6), two_cycles(3)},
        {make_cycle(8), two_cycles(4)},
        {make_path(5), make_star(4)},
    };
    for (const auto& [g, h] : pairs) {
        for (auto cfg : {ExtensionConfig::s(3), ExtensionConfig::s(4), ExtensionConfig::m1()}) {
            bool dist = extension_distinguishes(cfg, g, h);
            bool sig_differ = extension_signature(cfg, g) != extension_signature(cfg, h);
            REQUIRE(dist == sig_differ);
        }
        EgoNetClassifier pool;
        for (auto cfg : {ExtensionConfig::n(1), ExtensionConfig::n(2)}) {
            bool dist = extension_distinguishes(cfg, g, h);
            bool sig_differ =
                extension_signature(cfg, g, &pool) != extension_signature(cfg, h, &pool);
            REQUIRE(dist == sig_differ);
        }
    }
}

TEST_CASE("extension budgets raise resource errors") {
    CHECK_THROWS_AS(substructure_init_colors(make_complete(8), 4, 10), ResourceError);
    EgoNetClassifier pool;
    CHECK_THROWS_AS(egonet_init_colors(make_complete(8), 2, pool, 4), ResourceError);
    CHECK_THROWS_AS(substructure_init_colors(make_cycle(5), 5), std::invalid_argument);
}
