#include <gtest/gtest.h>

#include <sstream>

#include "oddwidth/oddwidth.hpp"
#include "oracles.hpp"

using namespace oddwidth;

TEST(Cylindrical, Sizes) {
    auto c4 = gen_cylindrical(1, 4);
    EXPECT_EQ(c4.graph.num_vertices(), 4);
    EXPECT_EQ(c4.graph.num_edges(), 4);
    for (auto [k, l] : {std::pair{2, 8}, std::pair{3, 12}, std::pair{4, 5}}) {
        auto g = gen_cylindrical(k, l).graph;
        EXPECT_EQ(g.num_vertices(), k * l);
        EXPECT_EQ(g.num_edges(), k * l + (k - 1) * l);
    }
    EXPECT_THROW(gen_cylindrical(0, 4), InvalidInput);
    EXPECT_THROW(gen_cylindrical(1, 2), InvalidInput);
}

TEST(ParityHandle, SizesAndParity) {
    auto h1 = gen_parity_handle(1);
    EXPECT_EQ(h1.graph.num_vertices(), 4);
    EXPECT_EQ(h1.graph.num_edges(), 5);
    auto h2 = gen_parity_handle(2);
    EXPECT_EQ(h2.graph.num_vertices(), 16);
    EXPECT_EQ(h2.graph.num_edges(), 26);
    EXPECT_EQ(h2.parity_breaking.size(), 2u);
    EXPECT_EQ(ocp_exact(h2.graph), 2);
    // every parity breaking edge joins two vertices of one side of the cylinder
    auto base = two_colouring(gen_cylindrical(2, 8).graph);
    ASSERT_TRUE(base);
    for (auto [u, v] : h2.parity_breaking) EXPECT_EQ((*base)[u], (*base)[v]);
}

TEST(ParityVortex, SizesAndParity) {
    auto v1 = gen_parity_vortex(1);
    EXPECT_EQ(v1.graph.num_edges(), 5);
    auto v2 = gen_parity_vortex(2);
    EXPECT_EQ(v2.graph.num_edges(), 26);
    EXPECT_EQ(v2.parity_breaking.size(), 2u);
    EXPECT_EQ(ocp_exact(v2.graph), 2);
}

TEST(ParityGrids, OcpEqualsOrder) {
    for (int k = 1; k <= 2; ++k)
        for (GridKind kind : {GridKind::handle, GridKind::vortex, GridKind::universal}) {
            auto g = gen_grid(kind, k).graph;
            EXPECT_EQ(ocp_exact(g), k) << to_string(kind) << ' ' << k;
            if (g.num_vertices() <= 16) {
                EXPECT_EQ(oracle::ocp_by_subsets(g), k) << to_string(kind) << ' ' << k;
            }
        }
    EXPECT_EQ(ocp_exact(gen_parity_handle(3).graph), 3);
}

TEST(Universal, Sizes) {
    auto u1 = gen_universal(1);
    EXPECT_EQ(u1.graph.num_vertices(), 7);
    EXPECT_EQ(u1.subdivisions.size(), 1u);
    // 2k rows of 2k+1 columns plus one subdivision vertex per even row
    for (int k = 1; k <= 4; ++k) EXPECT_EQ(gen_universal(k).graph.num_vertices(), 2 * k * (2 * k + 1) + k);
}

TEST(Annotation, ListsStructure) {
    std::ostringstream os;
    write_annotation(os, gen_parity_handle(2));
    const std::string s = os.str();
    EXPECT_NE(s.find("kind handle"), std::string::npos);
    EXPECT_NE(s.find("cycle "), std::string::npos);
    EXPECT_NE(s.find("radial "), std::string::npos);
    int parity = 0;
    for (std::size_t p = s.find("parity "); p != std::string::npos; p = s.find("parity ", p + 1)) ++parity;
    EXPECT_EQ(parity, 2);
}

TEST(Embeddings, VerifiedModels) {
    for (int k = 1; k <= 3; ++k)
        for (GridKind kind : {GridKind::handle, GridKind::vortex}) {
            auto m = embed_in_universal(kind, k);
            EXPECT_EQ(m.host.num_vertices(), gen_universal(3 * k).graph.num_vertices());
            EXPECT_EQ(format_graph(m.pattern), format_graph(gen_grid(kind, k).graph));
            auto rep = verify_odd_minor_model(m);
            EXPECT_TRUE(rep.ok) << to_string(kind) << ' ' << k << ": " << rep.violation;
        }
    EXPECT_THROW(embed_in_universal(GridKind::universal, 1), InvalidInput);
}

TEST(Embeddings, TamperedModelRejected) {
    auto m = embed_in_universal(GridKind::handle, 1);
    for (auto& c : m.witness)
        if (c >= 0) {
            c ^= 1;
            break;
        }
    EXPECT_FALSE(verify_odd_minor_model(m).ok);
}
