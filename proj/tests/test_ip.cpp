#include <gtest/gtest.h>

#include <sstream>

#include "oddwidth/io_json.hpp"
#include "oddwidth/oddwidth.hpp"
#include "oracles.hpp"

using namespace oddwidth;

namespace {

IntegerProgram parse(const std::string& s) {
    std::istringstream in(s);
    return read_ip(in);
}

IntegerProgram triangle_mis() {
    return parse("p ip 3 3\n"
                 "c 1 le 0:1 1:1\n"
                 "c 1 le 1:1 2:1\n"
                 "c 1 le 0:1 2:1\n"
                 "b 0 0 1\nb 1 0 1\nb 2 0 1\n"
                 "o 0:1 1:1 2:1\n");
}

IntMatrix incidence(int n, const std::vector<std::tuple<int, int, int, int>>& rows) {
    IntMatrix a;
    for (auto [i, si, j, sj] : rows) {
        std::vector<mpz_class> r(static_cast<std::size_t>(n), 0);
        r[i] = si;
        r[j] = sj;
        a.push_back(r);
    }
    return a;
}

} // namespace

// ---------------------------------------------------------------------------
// linear programming

TEST(Lp, Examples) {
    LinearProgram a(1);
    a.obj = {1};
    a.rows.push_back({{{0, 1}}, Relation::le, 3});
    auto r = lp_solve(a);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(r.x[0], 3);

    LinearProgram b(1);
    b.obj = {1};
    b.rows.push_back({{{0, 1}}, Relation::ge, 1});
    b.rows.push_back({{{0, 1}}, Relation::le, 0});
    EXPECT_EQ(lp_solve(b).status, LpStatus::infeasible);

    LinearProgram c(2);
    c.obj = {1, 1};
    EXPECT_EQ(lp_solve(c).status, LpStatus::unbounded);

    auto k3 = lp_solve(lp_relaxation(triangle_mis()));
    ASSERT_EQ(k3.status, LpStatus::optimal);
    EXPECT_EQ(k3.value, mpq_class(3, 2));
    for (const auto& x : k3.x) EXPECT_EQ(x, mpq_class(1, 2));
}

TEST(Lp, MatchesVertexEnumeration) {
    oracle::Rng rng(41);
    int optimal = 0;
    for (int i = 0; i < 300; ++i) {
        const int n = oracle::uniform(rng, 1, 4);
        LinearProgram lp(n);
        for (int j = 0; j < n; ++j) {
            int a = oracle::uniform(rng, -4, 4), b = oracle::uniform(rng, -4, 4);
            lp.lo[j] = std::min(a, b);
            lp.hi[j] = std::max(a, b);
            lp.obj[j] = oracle::uniform(rng, -5, 5);
        }
        const int m = oracle::uniform(rng, 0, 5);
        for (int r = 0; r < m; ++r) {
            LpRow row;
            for (int j = 0; j < n; ++j)
                if (oracle::coin(rng, 0.6)) row.coef.emplace_back(j, oracle::uniform(rng, -3, 3));
            row.rel = static_cast<Relation>(oracle::uniform(rng, 0, 2));
            row.rhs = mpq_class(oracle::uniform(rng, -6, 6), oracle::uniform(rng, 1, 2));
            row.rhs.canonicalize();
            lp.rows.push_back(row);
        }
        lp.maximize = oracle::coin(rng);
        auto got = lp_solve(lp);
        auto expect = oracle::lp_by_vertices(lp);
        ASSERT_EQ(got.status == LpStatus::optimal, expect.has_value());
        if (!expect) continue;
        ++optimal;
        EXPECT_EQ(got.value, *expect);
        // the point is feasible and attains the value
        mpq_class v = 0;
        for (int j = 0; j < n; ++j) {
            EXPECT_GE(got.x[j], *lp.lo[j]);
            EXPECT_LE(got.x[j], *lp.hi[j]);
            v += lp.obj[j] * got.x[j];
        }
        EXPECT_EQ(v, got.value);
        for (const auto& row : lp.rows) {
            mpq_class s = 0;
            for (auto [j, c] : row.coef) s += c * got.x[j];
            if (row.rel == Relation::le) {
                EXPECT_LE(s, row.rhs);
            }
            if (row.rel == Relation::ge) {
                EXPECT_GE(s, row.rhs);
            }
            if (row.rel == Relation::eq) {
                EXPECT_EQ(s, row.rhs);
            }
        }
    }
    EXPECT_GT(optimal, 100);
}

// ---------------------------------------------------------------------------
// programs, recognition, subdeterminants

TEST(IpFormat, RoundTripAndErrors) {
    oracle::Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        auto ip = oracle::random_ip(rng);
        std::ostringstream os;
        write_ip(os, ip);
        EXPECT_EQ(parse(os.str()), ip);
    }
    EXPECT_THROW(parse("p ip 1 1\n"), InvalidInput);
    EXPECT_THROW(parse("p ip 1 1\nc 1 ge 0:1\n"), InvalidInput);
    EXPECT_THROW(parse("p ip 1 1\nc 1 le 3:1\n"), InvalidInput);
    EXPECT_THROW(parse("p ip 0 1\nb 0 2 x\n"), InvalidInput);
}

TEST(Recognize, Examples) {
    auto tri = recognize(triangle_mis());
    EXPECT_EQ(tri.graph.num_edges(), 3);
    for (const auto& e : tri.graph.edges()) EXPECT_EQ(e.label, 1);
    auto mixed = parse("p ip 3 3\nc 0 le 0:1 1:-1\nc 4 le 2:1\nc 0 le\n");
    auto s = recognize(mixed);
    ASSERT_EQ(s.graph.num_edges(), 1);
    EXPECT_EQ(s.graph.edge(0).label, 0);
    EXPECT_EQ(s.bound_rows, (std::vector<int>{1}));
    EXPECT_EQ(s.constant_rows, (std::vector<int>{2}));
    EXPECT_THROW(recognize(parse("p ip 1 3\nc 0 le 0:1 1:1 2:1\n")), InvalidInput);
    EXPECT_THROW(recognize(parse("p ip 1 2\nc 0 le 0:2 1:1\n")), InvalidInput);
}

TEST(Subdet, Examples) {
    auto c3 = incidence(3, {{0, 1, 1, 1}, {1, 1, 2, 1}, {0, 1, 2, 1}});
    EXPECT_EQ(subdet_bound(c3), 2);
    EXPECT_EQ(max_abs_subdeterminant(c3), 2);
    auto c4 = incidence(4, {{0, 1, 1, -1}, {1, 1, 2, -1}, {2, 1, 3, -1}, {0, 1, 3, -1}});
    EXPECT_EQ(subdet_bound(c4), 1);
    EXPECT_EQ(max_abs_subdeterminant(c4), 1);
    IntMatrix id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    EXPECT_EQ(max_abs_subdeterminant(id), 1);
    EXPECT_EQ(subdet_bound(id), 1);
    // twice a perfect matching on four vertices: the bound is 2^0 * 2^4,
    // the largest subdeterminant is 2 * 2
    IntMatrix pm = {{2, 2, 0, 0}, {0, 0, 2, 2}};
    auto sa = subdet_analysis(pm);
    EXPECT_EQ(sa.ocp, 0);
    EXPECT_EQ(sa.large_columns, 4);
    EXPECT_EQ(sa.bound, 16);
    EXPECT_EQ(max_abs_subdeterminant(pm), 4);
}

TEST(Subdet, BareissMatchesLeibniz) {
    oracle::Rng rng(43);
    for (int i = 0; i < 200; ++i) {
        const int n = oracle::uniform(rng, 1, 6);
        IntMatrix a(n, std::vector<mpz_class>(n));
        for (auto& r : a)
            for (auto& x : r) x = oracle::uniform(rng, -4, 4);
        ASSERT_EQ(determinant(a), oracle::det_by_permutations(a));
    }
}

TEST(Subdet, SandwichOnRandomMatrices) {
    oracle::Rng rng(44);
    for (int i = 0; i < 200; ++i) {
        auto a = oracle::random_two_per_row_matrix(rng);
        auto sa = subdet_analysis(a);
        const mpz_class delta = max_abs_subdeterminant(a);
        ASSERT_LE(delta, sa.bound);
        ASSERT_LE(sa.norm, delta);
        const mpz_class d1 = delta < 1 ? mpz_class(1) : delta;
        ASSERT_LE(mpz_class(1) << sa.ocp, d1);
    }
}

TEST(Subdet, HadamardBound) {
    EXPECT_EQ(hadamard_bound(0), 1);
    EXPECT_EQ(hadamard_bound(1), 1);
    EXPECT_EQ(hadamard_bound(2), 2);
    EXPECT_EQ(hadamard_bound(3), 6); // ceil(3^1.5) = ceil(5.19...)
    EXPECT_EQ(hadamard_bound(4), 16);
}

// ---------------------------------------------------------------------------
// exact integer search

TEST(IlpBruteforce, MatchesEnumeration) {
    oracle::Rng rng(45);
    for (int i = 0; i < 300; ++i) {
        auto ip = oracle::random_ip(rng);
        auto a = ilp_bruteforce(ip);
        auto b = oracle::ilp_by_enumeration(ip);
        ASSERT_EQ(a.status, b.status);
        if (a.status == IpStatus::optimal) {
            EXPECT_EQ(a.value, b.value);
            EXPECT_TRUE(is_feasible(ip, a.x));
            EXPECT_EQ(objective_value(ip, a.x), a.value);
        }
    }
}

TEST(IlpBruteforce, Limits) {
    auto ip = parse("p ip 0 1\nb 0 0 +inf\no 0:1\n");
    EXPECT_THROW(ilp_bruteforce(ip), InvalidInput);
    auto wide = parse("p ip 0 2\nb 0 0 100000\nb 1 0 100000\n");
    EXPECT_THROW(ilp_bruteforce(wide), InstanceTooLarge);
}

// ---------------------------------------------------------------------------
// reduction stages

TEST(Stages, FoldBoundRows) {
    auto ip = parse("p ip 3 2\nc 3 le 0:1\nc 2 eq 1:-1\nc 0 le 0:1 1:1\nb 0 0 5\n");
    FoldStage fs;
    auto f = fold_bound_rows(ip, fs);
    EXPECT_EQ(f.num_rows(), 1);
    EXPECT_EQ(*f.hi[0], 3);
    EXPECT_EQ(*f.lo[1], -2);
    EXPECT_EQ(*f.hi[1], -2);
    FoldStage bad;
    fold_bound_rows(parse("p ip 1 1\nc -1 le\n"), bad);
    EXPECT_TRUE(bad.infeasible);
}

TEST(Stages, BoundVariables) {
    auto tri = triangle_mis();
    auto br = bound_variables(tri);
    ASSERT_EQ(br.status, IpStatus::optimal);
    for (int j = 0; j < 3; ++j) {
        EXPECT_EQ(*br.program.lo[j], 0);
        EXPECT_EQ(*br.program.hi[j], 1);
    }
    EXPECT_EQ(br.window.ocp, 1);
    auto free_ip = parse("p ip 1 2\nc 0 le 0:1 1:-1\no 0:1 1:1\n");
    EXPECT_EQ(bound_variables(free_ip).status, IpStatus::unbounded);
    auto infeasible = parse("p ip 2 2\nc 0 le 0:1 1:1\nc -1 le 0:-1 1:-1\n");
    EXPECT_EQ(bound_variables(infeasible).status, IpStatus::infeasible);
}

TEST(Stages, PositiveCoefficients) {
    auto diff = to_positive_coefficients(parse("p ip 1 2\nc 2 le 0:1 1:-1\nb 0 0 1\nb 1 0 1\n"));
    EXPECT_EQ(diff.program.n, 3);
    EXPECT_EQ(diff.program.num_rows(), 2);
    EXPECT_EQ(*diff.program.lo[2], -1);
    EXPECT_EQ(*diff.program.hi[2], 0);
    auto neg = to_positive_coefficients(parse("p ip 1 2\nc 0 le 0:-1 1:-1\nb 0 1 2\nb 1 0 3\n"));
    EXPECT_EQ(neg.program.n, 4);
    EXPECT_EQ(neg.program.num_rows(), 3);
    EXPECT_EQ(*neg.program.lo[2], -2);
    EXPECT_EQ(*neg.program.hi[2], -1);
    EXPECT_EQ(*neg.program.lo[3], -3);
    EXPECT_EQ(*neg.program.hi[3], 0);
    for (const auto& r : neg.program.rows)
        for (const auto& [j, c] : r.coef) EXPECT_EQ(c, 1);
    auto tri = triangle_mis();
    EXPECT_EQ(to_positive_coefficients(tri).program, tri);
}

TEST(Stages, PositiveRewritePreservesOptimum) {
    oracle::Rng rng(46);
    for (int i = 0; i < 150; ++i) {
        IntegerProgram ip(oracle::uniform(rng, 2, 4));
        for (int j = 0; j < ip.n; ++j) {
            ip.lo[j] = oracle::uniform(rng, -2, 0);
            ip.hi[j] = oracle::uniform(rng, 0, 2);
            ip.w[j] = oracle::uniform(rng, -3, 3);
        }
        for (int r = 0, m = oracle::uniform(rng, 1, 4); r < m; ++r) {
            int a = oracle::uniform(rng, 0, ip.n - 1), b = (a + oracle::uniform(rng, 1, ip.n - 1)) % ip.n;
            ip.add_row({{a, oracle::coin(rng) ? 1 : -1}, {b, oracle::coin(rng) ? 1 : -1}},
                       oracle::coin(rng, 0.2) ? Relation::eq : Relation::le, oracle::uniform(rng, -2, 2));
        }
        auto pos = to_positive_coefficients(ip).program;
        auto a = oracle::ilp_by_enumeration(ip), b = oracle::ilp_by_enumeration(pos);
        ASSERT_EQ(a.status, b.status);
        if (a.status == IpStatus::optimal) {
            ASSERT_EQ(a.value, b.value);
        }
    }
}

TEST(Stages, EliminateEqualities) {
    auto none = eliminate_equalities(triangle_mis());
    EXPECT_EQ(none.program.w, triangle_mis().w);
    auto eq = eliminate_equalities(parse("p ip 1 2\nc 1 eq 0:1 1:1\nb 0 0 1\nb 1 0 1\n"));
    EXPECT_EQ(eq.trace.mu, 1);
    EXPECT_EQ(eq.program.w, (std::vector<mpz_class>{1, 1}));
    EXPECT_EQ(eq.program.rows[0].rel, Relation::le);
    auto best = oracle::ilp_by_enumeration(eq.program);
    ASSERT_EQ(best.status, IpStatus::optimal);
    EXPECT_EQ(best.x[0] + best.x[1], 1);
}

TEST(Stages, RoundAndClean) {
    auto inf = round_and_clean(parse("p ip 1 2\nc -1 le 0:1 1:1\nb 0 0 1\nb 1 0 1\n"));
    EXPECT_TRUE(inf.infeasible);
    auto zero = round_and_clean(parse("p ip 1 2\nc 0 le 0:1 1:1\nb 0 0 1\nb 1 0 1\no 0:1 1:1\n"));
    EXPECT_FALSE(zero.infeasible);
    EXPECT_EQ(zero.mwis.graph.num_vertices(), 0);
    auto tri = round_and_clean(triangle_mis());
    EXPECT_TRUE(tri.half_integral);
    EXPECT_EQ(tri.shift, (std::vector<mpz_class>{0, 0, 0}));
    EXPECT_EQ(tri.mwis.graph.num_vertices(), 3);
    EXPECT_EQ(tri.mwis.graph.num_edges(), 3);
}

// ---------------------------------------------------------------------------
// full pipeline

TEST(SolveIp, Examples) {
    auto tri = solve_ip(triangle_mis());
    ASSERT_EQ(tri.status, IpStatus::optimal);
    EXPECT_EQ(tri.value, 1);
    auto box = solve_ip(parse("p ip 0 1\nb 0 0 3\no 0:1\n"));
    EXPECT_EQ(box.value, 3);
    EXPECT_EQ(solve_ip(parse("p ip 2 1\nc 0 le 0:1\nc -1 le 0:-1\n")).status, IpStatus::infeasible);
    EXPECT_EQ(solve_ip(parse("p ip 1 2\nc 0 le 0:1 1:-1\no 0:1 1:1\n")).status, IpStatus::unbounded);
}

TEST(SolveIp, EqualityGuard) {
    // x0 + x1 = 1 and x0 - x1 = 0 have the LP solution (1/2, 1/2) but no
    // integer one
    auto ip = parse("p ip 2 2\nc 1 eq 0:1 1:1\nc 0 eq 0:1 1:-1\nb 0 0 1\nb 1 0 1\n");
    ASSERT_EQ(oracle::ilp_by_enumeration(ip).status, IpStatus::infeasible);
    EXPECT_EQ(solve_ip(ip).status, IpStatus::infeasible);
}

TEST(SolveIp, MatchesEnumeration) {
    oracle::Rng rng(47);
    int graphs = 0;
    for (int i = 0; i < 400; ++i) {
        auto ip = oracle::random_ip(rng);
        auto s = solve_ip(ip);
        auto o = oracle::ilp_by_enumeration(ip);
        ASSERT_EQ(s.status, o.status);
        if (o.status != IpStatus::optimal) continue;
        ASSERT_EQ(s.value, o.value);
        ASSERT_TRUE(is_feasible(ip, s.x));
        graphs += s.trace.round.mwis.graph.num_vertices() > 0 ? 1 : 0;
    }
    EXPECT_GT(graphs, 0);
}

TEST(SolveIp, MwisFormulation) {
    oracle::Rng rng(48);
    for (int i = 0; i < 60; ++i) {
        Graph g = oracle::random_graph(rng, oracle::uniform(rng, 1, 12), 0.3);
        WeightedGraph wg(g, oracle::random_weights(rng, g.num_vertices(), 20));
        auto s = solve_ip(oracle::mwis_as_ip(wg));
        ASSERT_EQ(s.status, IpStatus::optimal);
        ASSERT_EQ(s.value, oracle::mwis_by_subsets(wg));
    }
}

TEST(SolveIp, TraceSerializes) {
    auto s = solve_ip(triangle_mis());
    auto j = to_json(s.trace);
    EXPECT_EQ(j["mwis"]["value"], 1);
    EXPECT_EQ(j["round"]["xstar"][0], "1/2");
    EXPECT_TRUE(j["equality_guard_passed"].get<bool>());
}
