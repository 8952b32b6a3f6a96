#include <gtest/gtest.h>

#include <sstream>

#include "oddwidth/oddwidth.hpp"
#include "oracles.hpp"

using namespace oddwidth;

namespace {

Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

} // namespace

TEST(GraphIo, RoundTripAndErrors) {
    Graph g = graph_from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
    std::string text = format_graph(g);
    EXPECT_EQ(format_graph(parse_graph(text)), text);
    EXPECT_THROW(parse_graph("p graph 2 1\ne 0 5\n"), InvalidInput);
    EXPECT_THROW(parse_graph("p graph 2 2\ne 0 1\n"), InvalidInput);
    EXPECT_THROW(parse_graph("e 0 1\n"), InvalidInput);
    EXPECT_THROW(parse_graph("p graph 2 1\ne 0 0\n"), InvalidInput);
}

TEST(GraphIo, SignedRoundTrip) {
    SignedGraph s(3);
    s.add_edge(0, 1, 1);
    s.add_edge(0, 1, 0);
    s.add_edge(2, 2, 1);
    std::ostringstream os;
    write_signed_graph(os, s);
    EXPECT_EQ(parse_signed_graph(os.str()), s);
}

TEST(TwoColouring, Examples) {
    auto c = two_colouring(cycle(4));
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, (TwoColouring{0, 1, 0, 1}));
    EXPECT_FALSE(two_colouring(complete(3)));
    EXPECT_FALSE(two_colouring(gen_parity_handle(2).graph));
}

TEST(TwoColouring, MatchesColouringEnumeration) {
    oracle::Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 0, 9), 0.3);
        auto c = two_colouring(g);
        ASSERT_EQ(c.has_value(), oracle::bipartite_by_colourings(g)) << format_graph(g);
        if (!c) continue;
        for (auto [u, v] : g.edges()) EXPECT_NE((*c)[u], (*c)[v]);
    }
}

TEST(ShortestOddCycle, Examples) {
    EXPECT_EQ(shortest_odd_cycle(complete(3))->size(), 3u);
    EXPECT_FALSE(shortest_odd_cycle(cycle(6)));
    Graph g = cycle(5);
    g.add_vertex();
    g.add_edge(0, 5);
    auto c = shortest_odd_cycle(g);
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, (std::vector<Vertex>{0, 1, 2, 3, 4}));
}

TEST(ShortestOddCycle, IsAShortestOddCycle) {
    oracle::Rng rng(12);
    for (int i = 0; i < 300; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 10), 0.3);
        auto c = shortest_odd_cycle(g);
        // smallest vertex count among non-bipartite induced subgraphs that are cycles
        // is the odd girth; compare the length against the subset oracle
        auto nonbip = oracle::non_bipartite_subsets(g);
        int girth = 0;
        for (std::uint32_t s = 0; s < nonbip.size(); ++s)
            if (nonbip[s] && (girth == 0 || std::popcount(s) < girth)) girth = std::popcount(s);
        ASSERT_EQ(c.has_value(), girth > 0);
        if (!c) continue;
        EXPECT_EQ(static_cast<int>(c->size()), girth);
        for (std::size_t j = 0; j < c->size(); ++j) EXPECT_TRUE(g.has_edge((*c)[j], (*c)[(j + 1) % c->size()]));
    }
}

TEST(Ocp, Examples) {
    EXPECT_EQ(ocp_exact(complete(3)), 1);
    Graph three = disjoint_union(disjoint_union(complete(3), complete(3)), complete(3));
    EXPECT_EQ(ocp_exact(three), 3);
    EXPECT_EQ(ocp_exact(gen_parity_handle(2).graph), 2);
    EXPECT_EQ(ocp_exact(cycle(8)), 0);
}

TEST(Ocp, MatchesSubsetOracle) {
    oracle::Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 11), 0.1 * oracle::uniform(rng, 2, 6));
        ASSERT_EQ(ocp_exact(g), oracle::ocp_by_subsets(g)) << format_graph(g);
    }
}

TEST(Ocp, SignedGraphs) {
    // all-odd signed graph: the odd cycles of the underlying graph
    oracle::Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 9), 0.4);
        SignedGraph s(g.num_vertices());
        for (auto [u, v] : g.edges()) s.add_edge(u, v, 1);
        const int expect = oracle::ocp_by_subsets(g);
        ASSERT_EQ(ocp_exact(s), expect);
        // shifting keeps every cycle parity
        std::vector<Vertex> shift;
        for (int v = 0; v < g.num_vertices(); ++v)
            if (oracle::coin(rng)) shift.push_back(v);
        ASSERT_EQ(ocp_exact(shift_at_vertices(s, shift)), expect);
    }
    // parallel edges of opposite parity form an odd 2-cycle, an odd loop is an odd cycle
    SignedGraph p(3);
    p.add_edge(0, 1, 0);
    p.add_edge(0, 1, 1);
    p.add_edge(2, 2, 1);
    EXPECT_EQ(ocp_exact(p), 2);
    SignedGraph q(2);
    q.add_edge(0, 1, 1);
    q.add_edge(0, 1, 1);
    q.add_edge(1, 1, 0);
    EXPECT_EQ(ocp_exact(q), 0);
}

TEST(Ocp, BudgetExceededIsReported) {
    OcpOptions o;
    o.node_budget = 3;
    EXPECT_THROW(ocp_exact(complete(9), o), InstanceTooLarge);
}

TEST(Blocks, Examples) {
    auto path = blocks(graph_from_edges(3, {{0, 1}, {1, 2}}));
    EXPECT_EQ(path.blocks, (std::vector<std::vector<Vertex>>{{0, 1}, {1, 2}}));
    EXPECT_EQ(path.cut_vertices, (std::vector<Vertex>{1}));
    EXPECT_EQ(blocks(complete(4)).blocks.size(), 1u);
    auto bowtie = blocks(graph_from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}));
    EXPECT_EQ(bowtie.blocks, (std::vector<std::vector<Vertex>>{{0, 1, 2}, {2, 3, 4}}));
    EXPECT_EQ(bowtie.tree.size(), 1u);
}

TEST(Blocks, BlocksAreMaximalTwoConnected) {
    oracle::Rng rng(15);
    for (int i = 0; i < 100; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 9), 0.3);
        auto b = blocks(g);
        std::vector<int> covered(g.num_vertices(), 0);
        int edges = 0;
        for (const auto& blk : b.blocks) {
            for (Vertex v : blk) ++covered[v];
            EXPECT_TRUE(blk.size() <= 2 || induces_two_connected(g, blk));
            for (std::size_t x = 0; x < blk.size(); ++x)
                for (std::size_t y = x + 1; y < blk.size(); ++y) edges += g.has_edge(blk[x], blk[y]) ? 1 : 0;
        }
        // every edge lies in exactly one block
        EXPECT_EQ(edges, g.num_edges());
        for (int v = 0; v < g.num_vertices(); ++v) {
            const bool cut = std::count(b.cut_vertices.begin(), b.cut_vertices.end(), v) > 0;
            EXPECT_EQ(covered[v] > 1, cut);
        }
    }
}

TEST(ParityPaths, Examples) {
    auto [odd, even] = parity_paths(complete(3), 0, 1);
    EXPECT_EQ(odd.size(), 2u);
    EXPECT_EQ(even.size(), 3u);
    auto [o4, e4] = parity_paths(complete(4), 2, 3);
    EXPECT_EQ(o4.size() % 2, 0u);
    EXPECT_EQ(e4.size() % 2, 1u);
    EXPECT_TRUE(is_path_in(complete(4), o4) && is_path_in(complete(4), e4));
    EXPECT_THROW(parity_paths(cycle(4), 0, 1), InvalidInput);
}

TEST(ParityPaths, OnRandomBlocks) {
    oracle::Rng rng(16);
    int checked = 0;
    while (checked < 60) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 3, 9), 0.5);
        if (!is_two_connected(g) || is_bipartite(g)) continue;
        Vertex u = oracle::uniform(rng, 0, g.num_vertices() - 1), v = oracle::uniform(rng, 0, g.num_vertices() - 1);
        if (u == v) continue;
        auto [odd, even] = parity_paths(g, u, v);
        ASSERT_TRUE(is_path_in(g, odd) && is_path_in(g, even));
        EXPECT_EQ(odd.front(), u);
        EXPECT_EQ(odd.back(), v);
        EXPECT_EQ(even.front(), u);
        EXPECT_EQ(even.back(), v);
        EXPECT_EQ((odd.size() - 1) % 2, 1u);
        EXPECT_EQ((even.size() - 1) % 2, 0u);
        ++checked;
    }
}

TEST(OddMinor, HandModelOfTriangleInFiveCycle) {
    // C5 on 0..4, branch sets {0}, {1,2}, {3,4}
    OddMinorModel m;
    m.pattern = complete(3);
    m.host = cycle(5);
    m.branch = {{0}, {1, 2}, {3, 4}};
    m.witness = {0, 0, 1, 1, 0};
    m.realization = {{{0, 1}, {0, 1}}, {{0, 2}, {0, 4}}, {{1, 2}, {2, 3}}};
    auto rep = verify_odd_minor_model(m);
    EXPECT_TRUE(rep.ok) << rep.violation;
    auto overlap = m;
    overlap.branch = {{0}, {0, 1, 2}, {3, 4}};
    EXPECT_FALSE(verify_odd_minor_model(overlap).ok);
    auto bad_colour = m;
    bad_colour.witness = {0, 1, 1, 1, 0};
    EXPECT_FALSE(verify_odd_minor_model(bad_colour).ok);
}

TEST(OddMinor, Search) {
    auto m = search_odd_minor(complete(3), cycle(5));
    ASSERT_TRUE(m);
    EXPECT_TRUE(verify_odd_minor_model(*m).ok);
    EXPECT_FALSE(search_odd_minor(complete(3), cycle(6)));
    auto k1 = search_odd_minor(Graph(1), cycle(4));
    ASSERT_TRUE(k1);
    EXPECT_EQ(k1->branch.size(), 1u);
}

TEST(OddMinor, TriangleExactlyInNonBipartiteGraphs) {
    oracle::Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 8), 0.35);
        auto m = search_odd_minor(complete(3), g);
        ASSERT_EQ(m.has_value(), !oracle::bipartite_by_colourings(g)) << format_graph(g);
        if (m) {
            EXPECT_TRUE(verify_odd_minor_model(*m).ok);
        }
    }
}

TEST(OddMinor, EvenSubdivision) {
    Graph c5 = even_subdivide_cut(complete(3), {{0, 1}, {0, 2}});
    EXPECT_EQ(c5.num_vertices(), 5);
    EXPECT_EQ(c5.num_edges(), 5);
    EXPECT_FALSE(is_bipartite(c5));
    Graph p2 = even_subdivide_cut(complete(2), {{0, 1}});
    EXPECT_EQ(p2.num_vertices(), 3);
    EXPECT_EQ(p2.num_edges(), 2);
    EXPECT_THROW(even_subdivide_cut(cycle(4), {{0, 1}}), InvalidInput);
}

TEST(Signed, Shifting) {
    SignedGraph t(3);
    t.add_edge(0, 1, 1);
    t.add_edge(1, 2, 1);
    t.add_edge(0, 2, 1);
    SignedGraph s = shift_at_vertex(t, 1);
    int odd = 0;
    for (const auto& e : s.edges()) odd += e.label;
    EXPECT_EQ(odd, 1);
    EXPECT_EQ(walk_parity(s, {0, 1, 2}), 1);
    SignedGraph iso(1);
    EXPECT_EQ(shift_at_vertex(iso, 0), iso);
    SignedGraph loop(1);
    loop.add_edge(0, 0, 1);
    EXPECT_EQ(shift_at_vertex(loop, 0).edge(0).label, 1);
}

TEST(Signed, Equivalence) {
    auto c4 = [](std::vector<int> labels) {
        SignedGraph s(4);
        for (int i = 0; i < 4; ++i) s.add_edge(i, (i + 1) % 4, labels[i]);
        return s;
    };
    EXPECT_TRUE(shifting_equivalent(c4({1, 1, 0, 0}), c4({0, 0, 0, 0})));
    EXPECT_FALSE(shifting_equivalent(c4({1, 0, 0, 0}), c4({0, 0, 0, 0})));
    EXPECT_TRUE(shifting_equivalent(c4({1, 0, 0, 0}), c4({1, 0, 0, 0})));
}
