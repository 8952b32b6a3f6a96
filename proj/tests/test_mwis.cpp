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

void expect_certified(const WeightedGraph& wg, const MwisResult& r) {
    EXPECT_TRUE(is_independent(wg.graph, r.witness));
    EXPECT_EQ(weight_of(wg, r.witness), r.value);
    EXPECT_TRUE(std::is_sorted(r.witness.begin(), r.witness.end()));
}

} // namespace

TEST(Mwis, BruteForceExamples) {
    WeightedGraph k3(complete(3), {1, 2, 3});
    auto r = mwis_bruteforce(k3);
    EXPECT_EQ(r.value, 3);
    EXPECT_EQ(r.witness, (std::vector<Vertex>{2}));
    EXPECT_EQ(mwis_bruteforce(WeightedGraph(cycle(5), {1, 1, 1, 1, 1})).value, 2);
    EXPECT_EQ(mwis_bruteforce(WeightedGraph(Graph(4), {1, 2, 3, 4})).value, 10);
}

TEST(Mwis, WeightValidation) {
    EXPECT_THROW(WeightedGraph(complete(2), {1}), InvalidInput);
    EXPECT_THROW(WeightedGraph(complete(2), {1, -1}), InvalidInput);
    std::istringstream dup("w 0 1\nw 0 2\n");
    EXPECT_THROW(read_weights(dup, 2), InvalidInput);
    std::istringstream gap("w 0 1\n");
    EXPECT_THROW(read_weights(gap, 2), InvalidInput);
}

TEST(Mwis, BipartiteExamples) {
    Graph k23 = graph_from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    EXPECT_EQ(mwis_bipartite(WeightedGraph(k23, {1, 1, 1, 1, 1})).value, 3);
    Graph p4 = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    auto r = mwis_bipartite(WeightedGraph(p4, {1, 5, 1, 5}));
    EXPECT_EQ(r.value, 10);
    EXPECT_EQ(r.witness, (std::vector<Vertex>{1, 3}));
    EXPECT_EQ(mwis_bipartite(WeightedGraph(complete(2), {7, 7})).value, 7);
    EXPECT_THROW(mwis_bipartite(WeightedGraph(complete(3), {1, 1, 1})), InvalidInput);
}

TEST(Mwis, SolversMatchSubsetOracle) {
    oracle::Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 0, 14), 0.1 * oracle::uniform(rng, 1, 6));
        WeightedGraph wg(g, oracle::random_weights(rng, g.num_vertices(), 20));
        const Weight expect = oracle::mwis_by_subsets(wg);
        auto a = mwis_bruteforce(wg);
        auto b = mwis_bounded_ocp(wg);
        ASSERT_EQ(a.value, expect);
        ASSERT_EQ(b.value, expect) << format_graph(g);
        expect_certified(wg, a);
        expect_certified(wg, b);
        if (oracle::bipartite_by_colourings(g)) {
            auto c = mwis_bipartite(wg);
            ASSERT_EQ(c.value, expect);
            expect_certified(wg, c);
        }
    }
}

TEST(Mwis, BudgetExceededIsReported) {
    MwisOptions o;
    o.node_budget = 1;
    oracle::Rng rng(32);
    Graph g = oracle::random_graph(rng, 20, 0.5);
    EXPECT_THROW(mwis_bounded_ocp(WeightedGraph(g, std::vector<Weight>(20, 1)), o), InstanceTooLarge);
}

TEST(Dp, SingleBagEqualsInnerSolver) {
    oracle::Rng rng(33);
    for (int i = 0; i < 50; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 10), 0.4);
        WeightedGraph wg(g, oracle::random_weights(rng, g.num_vertices(), 20));
        OcpTreeDecomposition d;
        VertexSet all;
        for (int v = 0; v < g.num_vertices(); ++v) all.push_back(v);
        d.add_node(all);
        EXPECT_EQ(dp_solve(wg, d).value, mwis_bounded_ocp(wg).value);
    }
}

TEST(Dp, ParityHandleNaturalDecomposition) {
    Graph h = gen_parity_handle(2).graph;
    WeightedGraph wg(h, std::vector<Weight>(h.num_vertices(), 1));
    auto d = ocptw_upper_bound(h).decomposition;
    auto r = dp_solve(wg, d);
    expect_certified(wg, r);
    EXPECT_EQ(r.value, mwis_bruteforce(wg).value);
}

TEST(Dp, RejectsInvalidOrUntameInput) {
    WeightedGraph wg(cycle(4), {1, 1, 1, 1});
    OcpTreeDecomposition bad;
    int a = bad.add_node({0, 1, 2}), b = bad.add_node({0, 2, 3});
    bad.add_edge(a, b);
    // valid for C4 but with adhesion 2 and empty apex sets: not tame
    EXPECT_THROW(dp_solve(wg, bad), InvalidInput);
    OcpTreeDecomposition partial;
    partial.add_node({0, 1});
    EXPECT_THROW(dp_solve(wg, partial), InvalidInput);
}

TEST(Dp, TablesMatchDefinition) {
    oracle::Rng rng(34);
    int entries = 0;
    for (int i = 0; i < 80; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 11), 0.3);
        WeightedGraph wg(g, oracle::random_weights(rng, g.num_vertices(), 20));
        auto d = oracle::random_tame_decomposition(rng, g);
        DpSolver s(wg, d);
        s.compute();
        const DpTable& tab = s.table();
        // vertices in the bags of the subtree of each node
        std::map<int, VertexSet> below;
        std::function<VertexSet(int)> collect = [&](int t) {
            VertexSet out = d.bag(t);
            for (int c : tab.children.at(t)) {
                auto sub = collect(c);
                out.insert(out.end(), sub.begin(), sub.end());
            }
            return below[t] = normalized(out);
        };
        collect(tab.root);
        for (const auto& [t, row] : tab.entries) {
            const VertexSet& pt = tab.p.at(t);
            ASSERT_EQ(row.size(), std::size_t{1} << pt.size());
            for (std::uint32_t m = 0; m < row.size(); ++m) {
                VertexSet x = DpTable::subset(pt, m);
                ASSERT_EQ(row[m], oracle::table_entry_by_subsets(wg, below[t], pt, x))
                    << "node " << t << " mask " << m;
                ++entries;
            }
        }
        EXPECT_EQ(s.solve().value, oracle::mwis_by_subsets(wg));
    }
    EXPECT_GT(entries, 0);
}
