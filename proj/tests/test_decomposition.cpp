#include <gtest/gtest.h>

#include <sstream>

#include "oddwidth/io_json.hpp"
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

OcpTreeDecomposition single_bag(int n, VertexSet alpha = {}) {
    OcpTreeDecomposition d;
    VertexSet all;
    for (int v = 0; v < n; ++v) all.push_back(v);
    d.add_node(all, std::move(alpha));
    return d;
}

} // namespace

TEST(Validate, Examples) {
    EXPECT_TRUE(validate(complete(3), single_bag(3)).ok);

    // C4 on 0..3 with bags {0,1,2} and {2,3,0}: both are fine as bags, but
    // vertex 3 joins the ends 0, 2 of bag {0,1,2} outside it
    OcpTreeDecomposition d;
    int a = d.add_node({0, 1, 2}), b = d.add_node({0, 2, 3});
    d.add_edge(a, b);
    auto rep = validate(cycle(4), d);
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.axiom, "OCP3");

    OcpTreeDecomposition bad = single_bag(3, {0});
    bad.apex[0] = {0, 5};
    rep = validate(complete(3), bad);
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.axiom, "OCP2");

    OcpTreeDecomposition missing;
    missing.add_node({0, 1});
    EXPECT_FALSE(validate(complete(3), missing).ok);
}

TEST(Width, Examples) {
    EXPECT_EQ(width(complete(3), single_bag(3)), 1);
    EXPECT_EQ(width(cycle(6), single_bag(6)), 0);
    EXPECT_EQ(width(complete(3), single_bag(3, {0})), 1);
    EXPECT_EQ(width(complete(4), from_tree_decomposition(complete(4), exact_tree_decomposition(complete(4)))), 3);
    Graph path = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    EXPECT_EQ(width(path, from_tree_decomposition(path, exact_tree_decomposition(path))), 1);
    EXPECT_LE(width(cycle(4), from_tree_decomposition(cycle(4), exact_tree_decomposition(cycle(4)))), 2);
}

TEST(Tame, Examples) {
    EXPECT_TRUE(is_tame(single_bag(3)));
    OcpTreeDecomposition d;
    int a = d.add_node({0, 1, 2}), b = d.add_node({0, 1, 3});
    d.add_edge(a, b);
    EXPECT_FALSE(is_tame(d));
    d.apex[a] = {0};
    d.apex[b] = {0};
    EXPECT_TRUE(is_tame(d));
}

TEST(FromTreeDecomposition, ValidTameAndBoundedByTreewidth) {
    oracle::Rng rng(21);
    for (int i = 0; i < 150; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 9), 0.35);
        auto td = exact_tree_decomposition(g);
        ASSERT_EQ(td.width(), oracle::treewidth_by_permutations(g));
        auto d = from_tree_decomposition(g, td);
        auto rep = validate(g, d);
        ASSERT_TRUE(rep.ok) << rep.violation;
        EXPECT_TRUE(is_tame(d));
        EXPECT_LE(width(g, d), std::max(td.width(), 0));
    }
}

TEST(GDelta, Examples) {
    Graph c4d = g_delta(cycle(4));
    EXPECT_EQ(c4d.num_vertices(), 8);
    EXPECT_EQ(c4d.num_edges(), 12);
    Graph k2d = g_delta(complete(2));
    EXPECT_EQ(format_graph(k2d), format_graph(complete(3)));
    EXPECT_THROW(g_delta(complete(3)), InvalidInput);
}

TEST(ExactOcptw, Examples) {
    EXPECT_EQ(exact_ocptw(complete(3)).width, 1);
    EXPECT_EQ(exact_ocptw(cycle(6)).width, 0);
    EXPECT_EQ(exact_ocptw(Graph(0)).width, 0);
    auto k5 = exact_ocptw(complete(5));
    EXPECT_LE(k5.width, treewidth(complete(5)));
    EXPECT_TRUE(validate(complete(5), k5.decomposition).ok);
    EXPECT_EQ(width(complete(5), k5.decomposition), k5.width);
    EXPECT_GE(k5.width, 1);
}

TEST(ExactOcptw, WitnessesAreOptimal) {
    oracle::Rng rng(22);
    for (int i = 0; i < 150; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 0, 7), 0.45);
        auto r = exact_ocptw(g);
        auto rep = validate(g, r.decomposition);
        ASSERT_TRUE(rep.ok) << rep.violation << '\n' << format_graph(g);
        ASSERT_EQ(width(g, r.decomposition), r.width);
        EXPECT_EQ(r.width == 0, oracle::bipartite_by_colourings(g));
        if (r.width > 0) {
            EXPECT_FALSE(decide_ocptw_le(g, r.width - 1));
        }
        EXPECT_LE(r.width, std::max(treewidth(g), 0));
    }
}

TEST(DecideOcptw, Examples) {
    EXPECT_TRUE(decide_ocptw_le(cycle(5), 1));
    EXPECT_TRUE(decide_ocptw_le(cycle(6), 0));
    EXPECT_FALSE(decide_ocptw_le(g_delta(cycle(4)), 1));
    EXPECT_FALSE(decide_ocptw_le(complete(3), -1));
    EXPECT_THROW(decide_ocptw_le(Graph(13), 1), InstanceTooLarge);
}

TEST(UpperBound, ValidDecomposition) {
    auto h = gen_parity_handle(2).graph;
    auto r = ocptw_upper_bound(h);
    EXPECT_TRUE(validate(h, r.decomposition).ok);
    EXPECT_EQ(width(h, r.decomposition), r.width);
}

TEST(Bramble, Examples) {
    OcpBramble k3{{{0, 1, 2}}, 1};
    EXPECT_TRUE(verify_bramble(complete(3), k3).ok);
    OcpBramble bip{{{0, 1}}, 1};
    EXPECT_FALSE(verify_bramble(complete(3), bip).ok);
    // two disjoint triangles do not touch
    Graph two = disjoint_union(complete(3), complete(3));
    OcpBramble apart{{{0, 1, 2}, {3, 4, 5}}, 1};
    EXPECT_FALSE(verify_bramble(two, apart).ok);
    // order too high: one vertex hits the single element
    OcpBramble high{{{0, 1, 2}}, 2};
    EXPECT_FALSE(verify_bramble(complete(3), high).ok);
}

TEST(Bramble, FromParityHandle) {
    for (int k = 1; k <= 2; ++k) {
        auto bi = bramble_from_parity_handle(k);
        EXPECT_EQ(bi.host.k, k * k);
        EXPECT_EQ(bi.bramble.order, k);
        EXPECT_EQ(bi.bramble.elements.size(), static_cast<std::size_t>(k * k));
        auto rep = verify_bramble(bi.host.graph, bi.bramble);
        EXPECT_TRUE(rep.ok) << rep.violation;
        std::ostringstream os;
        write_bramble(os, bi.bramble);
        std::istringstream is(os.str());
        auto back = read_bramble(is);
        EXPECT_EQ(back.elements, bi.bramble.elements);
        EXPECT_EQ(back.order, bi.bramble.order);
    }
}

TEST(DecompositionJson, RoundTripIsByteStable) {
    oracle::Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 9), 0.3);
        auto d = oracle::random_tame_decomposition(rng, g);
        std::ostringstream a;
        write_decomposition(a, d);
        std::istringstream in(a.str());
        auto back = read_decomposition(in);
        std::ostringstream b;
        write_decomposition(b, back);
        EXPECT_EQ(a.str(), b.str());
        EXPECT_TRUE(validate(g, back).ok);
    }
}

TEST(DecompositionJson, Errors) {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_decomposition(in);
    };
    EXPECT_THROW(parse("{"), InvalidInput);
    EXPECT_THROW(parse(R"({"nodes":[0],"edges":[],"bags":{}})"), InvalidInput);
    EXPECT_THROW(parse(R"({"nodes":[0],"edges":[],"bags":{"1":[0]}})"), InvalidInput);
    EXPECT_THROW(parse(R"({"nodes":[0],"edges":[],"bags":{"x":[0]}})"), InvalidInput);
    auto d = parse(R"({"nodes":[0],"edges":[],"bags":{"0":[2,0,1]}})");
    EXPECT_EQ(d.bag(0), (VertexSet{0, 1, 2}));
    EXPECT_TRUE(d.alpha(0).empty());
}

TEST(RandomTameDecompositions, AreValidAndTame) {
    oracle::Rng rng(24);
    for (int i = 0; i < 200; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 12), 0.3);
        auto d = oracle::random_tame_decomposition(rng, g);
        auto rep = validate(g, d);
        ASSERT_TRUE(rep.ok) << rep.violation;
        ASSERT_TRUE(is_tame(d));
    }
}
