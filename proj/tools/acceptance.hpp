#pragma once

// The twelve acceptance criteria. Each returns a pass flag with a short
// detail line; `run_acceptance` runs them all with one seed.

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"

namespace oddwidth::acceptance {

using oracle::Rng;
using oracle::coin;
using oracle::uniform;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace detail {

inline Graph random_small_graph(Rng& rng, int max_n) {
    const int n = uniform(rng, 1, max_n);
    const double p = 0.2 + 0.15 * uniform(rng, 0, 4);
    return oracle::random_graph(rng, n, p);
}

inline std::string describe(const Graph& g) {
    std::ostringstream os;
    os << "n=" << g.num_vertices() << " edges";
    for (auto [u, v] : g.edges()) os << ' ' << u << '-' << v;
    return os.str();
}

inline std::string describe(const IntegerProgram& ip) {
    std::ostringstream os;
    write_ip(os, ip);
    std::string s = os.str();
    for (auto& c : s)
        if (c == '\n') c = ';';
    return s;
}

} // namespace detail

// 1. OCP-tw(g) = 0 exactly for bipartite g.
inline Outcome bipartite_characterization(Rng& rng, int count = 200) {
    int zero = 0;
    for (int i = 0; i < count; ++i) {
        Graph g = detail::random_small_graph(rng, 6);
        const bool w0 = exact_ocptw(g).width == 0;
        const bool bip = two_colouring(g).has_value();
        if (bip != oracle::bipartite_by_colourings(g))
            return {false, "two_colouring disagrees with colouring enumeration on " + detail::describe(g)};
        if (w0 != bip) return {false, "mismatch on " + detail::describe(g)};
        zero += w0 ? 1 : 0;
    }
    return {true, std::to_string(count) + " graphs, " + std::to_string(zero) + " bipartite"};
}

// 2. OCP-tw(g) <= tw(g).
inline Outcome treewidth_upper_bound(Rng& rng, int count = 100) {
    int strict = 0;
    for (int i = 0; i < count; ++i) {
        Graph g = detail::random_small_graph(rng, 6);
        const int tw = treewidth(g);
        if (tw != oracle::treewidth_by_permutations(g))
            return {false, "treewidth disagrees with permutation oracle on " + detail::describe(g)};
        const int w = exact_ocptw(g).width;
        if (w > std::max(tw, 0)) return {false, "OCP-tw " + std::to_string(w) + " > tw " + std::to_string(tw) +
                                                    " on " + detail::describe(g)};
        strict += w < tw ? 1 : 0;
    }
    return {true, std::to_string(count) + " graphs, strict on " + std::to_string(strict)};
}

// 3. OCP-tw does not increase under one odd-minor step.
inline Outcome odd_minor_monotonicity(Rng& rng, int count = 200) {
    for (int i = 0; i < count; ++i) {
        Graph g = detail::random_small_graph(rng, 6);
        Graph h = oracle::random_odd_minor_step(rng, g);
        const int wg = exact_ocptw(g).width, wh = exact_ocptw(h).width;
        if (wh > wg)
            return {false, "minor " + detail::describe(h) + " has width " + std::to_string(wh) + " > " +
                               std::to_string(wg) + " of " + detail::describe(g)};
    }
    return {true, std::to_string(count) + " pairs"};
}

// 4. OCP-tw(g^Delta) = tw(g) = 2 for g in {C4, C6}.
inline Outcome g_delta_gadget() {
    std::string detail;
    for (int len : {4, 6}) {
        Graph c = gen_cylindrical(1, len).graph;
        const std::string name = "C" + std::to_string(len);
        if (treewidth(c) != 2) return {false, "tw(" + name + ") != 2"};
        Graph gd = g_delta(c);
        OcpTreeDecomposition d = from_tree_decomposition(gd, exact_tree_decomposition(gd));
        auto rep = validate(gd, d);
        if (!rep.ok) return {false, "upper-bound decomposition rejected: " + rep.violation};
        const int w = width(gd, d);
        if (w > 2) return {false, "upper-bound decomposition of " + name + "^Delta has width " + std::to_string(w)};
        if (decide_ocptw_le(gd, 1)) return {false, "OCP-tw(" + name + "^Delta) <= 1 was accepted"};
        detail += name + "^Delta: width-" + std::to_string(w) + " decomposition, no width-1; ";
    }
    return {true, detail};
}

// 5. Packing numbers of the parity grids and the bramble certificates.
inline Outcome parity_grid_parameters() {
    std::string detail;
    for (int k : {1, 2}) {
        for (GridKind kind : {GridKind::handle, GridKind::vortex, GridKind::universal}) {
            ParityGrid pg = gen_grid(kind, k);
            OcpOptions o;
            o.vertex_limit = std::max(o.vertex_limit, pg.graph.num_vertices());
            const int v = ocp_exact(pg.graph, o);
            if (v != k) return {false, "OCP(" + to_string(kind) + " " + std::to_string(k) + ") = " + std::to_string(v)};
        }
        BrambleInstance bi = bramble_from_parity_handle(k);
        auto rep = verify_bramble(bi.host.graph, bi.bramble);
        if (!rep.ok || bi.bramble.order != k)
            return {false, "bramble of order " + std::to_string(k) + " rejected: " + rep.violation};
        detail += "k=" + std::to_string(k) + ": OCP=k on handle/vortex/universal, bramble of " +
                  std::to_string(bi.bramble.elements.size()) + " elements in H_" + std::to_string(k * k) + "; ";
    }
    return {true, detail};
}

// 6. Models of the handle and vortex of order k inside the universal grid of order 3k.
inline Outcome universal_embeddings() {
    for (int k : {1, 2})
        for (GridKind kind : {GridKind::handle, GridKind::vortex}) {
            OddMinorModel m = embed_in_universal(kind, k);
            auto rep = verify_odd_minor_model(m);
            if (!rep.ok) return {false, to_string(kind) + " " + std::to_string(k) + ": " + rep.violation};
        }
    return {true, "handle and vortex, k = 1, 2"};
}

// 7. DP on tame decompositions equals brute force.
inline Outcome dp_correctness(Rng& rng, int count = 300) {
    int dp_nodes = 0;
    for (int i = 0; i < count; ++i) {
        Graph g = detail::random_small_graph(rng, 14);
        WeightedGraph wg(g, oracle::random_weights(rng, g.num_vertices(), 20));
        OcpTreeDecomposition d = oracle::random_tame_decomposition(rng, g);
        MwisResult dp = dp_solve(wg, d);
        MwisResult bf = mwis_bruteforce(wg);
        if (!is_independent(g, dp.witness) || weight_of(wg, dp.witness) != dp.value)
            return {false, "invalid witness on " + detail::describe(g)};
        if (dp.value != bf.value)
            return {false, "dp " + std::to_string(dp.value) + " vs brute force " + std::to_string(bf.value) + " on " +
                               detail::describe(g)};
        dp_nodes += static_cast<int>(d.nodes.size());
    }
    return {true, std::to_string(count) + " instances, " + std::to_string(dp_nodes) + " decomposition nodes"};
}

// 8. Branch and bound MWIS equals brute force.
inline Outcome inner_solver_equivalence(Rng& rng, int count = 500) {
    for (int i = 0; i < count; ++i) {
        Graph g = detail::random_small_graph(rng, 14);
        WeightedGraph wg(g, oracle::random_weights(rng, g.num_vertices(), 20));
        MwisResult a = mwis_bounded_ocp(wg);
        MwisResult b = mwis_bruteforce(wg);
        if (!is_independent(g, a.witness) || weight_of(wg, a.witness) != a.value)
            return {false, "invalid witness on " + detail::describe(g)};
        if (a.value != b.value) return {false, "value mismatch on " + detail::describe(g)};
    }
    return {true, std::to_string(count) + " graphs"};
}

// 9. Subdeterminant bounds for matrices with two entries per row.
inline Outcome subdeterminant_sandwich(Rng& rng, int count = 300) {
    int tight = 0;
    for (int i = 0; i < count; ++i) {
        IntMatrix a = oracle::random_two_per_row_matrix(rng);
        const mpz_class delta = max_abs_subdeterminant(a);
        const SubdetAnalysis s = subdet_analysis(a);
        if (delta > s.bound) return {false, "max |subdet| " + delta.get_str() + " exceeds bound " + s.bound.get_str()};
        if (s.norm > delta) return {false, "largest entry exceeds max |subdet|"};
        const mpz_class d1 = delta < 1 ? mpz_class(1) : delta;
        if (mpz_class(1) << s.ocp > d1) return {false, "OCP " + std::to_string(s.ocp) + " > log2 " + delta.get_str()};
        if (mpz_class(1) << s.large_columns > d1 * d1)
            return {false, std::to_string(s.large_columns) + " large columns > 2 log2 " + delta.get_str()};
        tight += delta == s.bound ? 1 : 0;
    }
    int cycles = 0;
    for (int l = 2; l <= 6; ++l)
        for (int rep = 0; rep < 6; ++rep) {
            IntMatrix a = oracle::odd_cycle_incidence(rng, l);
            const mpz_class delta = max_abs_subdeterminant(a);
            const mpz_class bound = subdet_bound(a);
            if (delta != 2 || bound != 2)
                return {false, "odd cycle of length " + std::to_string(l) + ": max |subdet| " + delta.get_str() +
                                   ", bound " + bound.get_str()};
            ++cycles;
        }
    return {true, std::to_string(count) + " matrices (" + std::to_string(tight) + " tight), " +
                      std::to_string(cycles) + " odd-cycle incidences with value 2"};
}

struct PipelineSuite {
    std::vector<IntegerProgram> general; // criterion 11
    std::vector<WeightedGraph> mwis;     // criterion 12
};

inline PipelineSuite make_pipeline_suite(Rng& rng, int general = 500, int graphs = 100) {
    PipelineSuite s;
    for (int i = 0; i < general; ++i) s.general.push_back(oracle::random_ip(rng));
    for (int i = 0; i < graphs; ++i) {
        Graph g = detail::random_small_graph(rng, 12);
        s.mwis.emplace_back(g, oracle::random_weights(rng, g.num_vertices(), 20));
    }
    return s;
}

// 10. At the rounding stage x* is half-integral and some optimal integer
// point lies within 1/2 of it: the optimum over the whole box of the
// penalized program equals the optimum over the box [x* - 1/2, x* + 1/2].
inline Outcome half_integrality_and_proximity(const PipelineSuite& suite) {
    int checked = 0, fractional = 0;
    std::vector<IntegerProgram> programs = suite.general;
    for (const auto& wg : suite.mwis) programs.push_back(oracle::mwis_as_ip(wg));
    IlpOptions full;
    full.box_limit = 0; // bounded by the node budget instead
    for (const auto& ip : programs) {
        if (ilp_bruteforce(ip).status != IpStatus::optimal) continue;
        FoldStage fs;
        IntegerProgram folded = fold_bound_rows(ip, fs);
        BoundResult br = bound_variables(folded);
        if (br.status != IpStatus::optimal) return {false, "window stage failed on " + detail::describe(ip)};
        PenaltyResult pen = eliminate_equalities(to_positive_coefficients(br.program).program);
        RoundStage rs = round_and_clean(pen.program);
        if (rs.infeasible) return {false, "rounding stage infeasible on " + detail::describe(ip)};
        if (!rs.half_integral) return {false, "x* not half-integral on " + detail::describe(ip)};
        IntegerProgram near = pen.program;
        for (int j = 0; j < near.n; ++j) {
            const mpq_class half(1, 2);
            mpz_class lo = oddwidth::detail::ceil_q(rs.xstar[j] - half), hi = oddwidth::detail::floor_q(rs.xstar[j] + half);
            if (lo > *near.lo[j]) near.lo[j] = lo;
            if (hi < *near.hi[j]) near.hi[j] = hi;
        }
        IlpResult a = ilp_bruteforce(pen.program, full);
        IlpResult b = ilp_bruteforce(near, full);
        if (a.status != IpStatus::optimal || b.status != IpStatus::optimal || a.value != b.value)
            return {false, "no optimal point near x* on " + detail::describe(ip)};
        ++checked;
        fractional += std::any_of(rs.xstar.begin(), rs.xstar.end(),
                                  [](const mpq_class& q) { return q.get_den() != 1; })
                          ? 1
                          : 0;
    }
    return {true, std::to_string(checked) + " feasible programs, " + std::to_string(fractional) +
                      " with fractional x*"};
}

// 11. solve_ip agrees with brute force.
inline Outcome end_to_end_ip(const PipelineSuite& suite) {
    int feasible = 0, graphs = 0;
    for (const auto& ip : suite.general) {
        IpSolution s = solve_ip(ip);
        IlpResult o = ilp_bruteforce(ip);
        if (s.status != o.status) return {false, "status " + to_string(s.status) + " vs " + to_string(o.status) +
                                                     " on " + detail::describe(ip)};
        if (o.status == IpStatus::optimal) {
            if (s.value != o.value) return {false, "value " + s.value.get_str() + " vs " + o.value.get_str() + " on " +
                                                       detail::describe(ip)};
            if (!is_feasible(ip, s.x)) return {false, "returned point infeasible on " + detail::describe(ip)};
            ++feasible;
            graphs += s.trace.round.free_columns.empty() ? 0 : 1;
        }
    }
    return {true, std::to_string(suite.general.size()) + " programs, " + std::to_string(feasible) + " feasible, " +
                      std::to_string(graphs) + " with a nonempty MWIS stage"};
}

// 12. MWIS written as an integer program gives the MWIS value.
inline Outcome mwis_as_ip_consistency(const PipelineSuite& suite) {
    for (const auto& wg : suite.mwis) {
        IpSolution s = solve_ip(oracle::mwis_as_ip(wg));
        cli::MwisAnswer m = cli::mwis_command(wg, std::nullopt);
        if (s.status != IpStatus::optimal || s.value != m.result.value)
            return {false, "solve_ip " + s.value.get_str() + " vs mwis " + std::to_string(m.result.value) + " on " +
                               detail::describe(wg.graph)};
        std::vector<Vertex> chosen;
        for (int v = 0; v < wg.graph.num_vertices(); ++v)
            if (s.x[v] == 1) chosen.push_back(v);
        if (!is_independent(wg.graph, chosen) || weight_of(wg, chosen) != m.result.value)
            return {false, "IP solution is not an optimal independent set"};
    }
    return {true, std::to_string(suite.mwis.size()) + " graphs"};
}

inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress = nullptr) {
    std::vector<CriterionResult> out;
    Rng rng(seed);
    PipelineSuite suite;
    auto run = [&](int id, const std::string& name, const std::function<Outcome()>& f) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        r.id = id;
        r.name = name;
        try {
            Outcome o = f();
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (progress) {
            *progress << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << " (" << r.seconds << " s): "
                      << r.detail << std::endl;
        }
        out.push_back(std::move(r));
    };
    run(1, "bipartite characterization", [&] { return bipartite_characterization(rng); });
    run(2, "OCP-tw <= tw", [&] { return treewidth_upper_bound(rng); });
    run(3, "odd-minor monotonicity", [&] { return odd_minor_monotonicity(rng); });
    run(4, "G^Delta gadget", [] { return g_delta_gadget(); });
    run(5, "parity-grid parameters and brambles", [] { return parity_grid_parameters(); });
    run(6, "embeddings in the universal grid", [] { return universal_embeddings(); });
    run(7, "DP correctness", [&] { return dp_correctness(rng); });
    run(8, "inner-solver equivalence", [&] { return inner_solver_equivalence(rng); });
    run(9, "subdeterminant sandwich", [&] { return subdeterminant_sandwich(rng); });
    suite = make_pipeline_suite(rng);
    run(10, "half-integrality and proximity", [&] { return half_integrality_and_proximity(suite); });
    run(11, "end-to-end IP", [&] { return end_to_end_ip(suite); });
    run(12, "MWIS-as-IP consistency", [&] { return mwis_as_ip_consistency(suite); });
    return out;
}

} // namespace oddwidth::acceptance
