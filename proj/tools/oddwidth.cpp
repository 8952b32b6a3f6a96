// oddwidth: command-line front end.
//
// Exit codes: 0 an answer was produced (including "infeasible" or "invalid"),
// 1 usage or input error, 2 a size limit or search budget was exceeded.
// `selftest` also exits with 1 when a criterion fails.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "commands.hpp"
#include "oddwidth/io_json.hpp"

namespace {

using namespace oddwidth;

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("io-error", "cannot open " + path);
    return in;
}

// Runs `f` with a stream writing to `path`, or to stdout for "" and "-".
template <class F>
void with_out(const std::string& path, F&& f) {
    if (path.empty() || path == "-") {
        f(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidInput("io-error", "cannot write " + path);
    f(out);
}

Graph load_graph(const std::string& path) {
    auto in = open_in(path);
    return read_graph(in);
}

std::string ids(const std::vector<Vertex>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
    return s;
}

GridKind parse_kind(const std::string& s) {
    for (GridKind k : {GridKind::cylindrical, GridKind::handle, GridKind::vortex, GridKind::universal})
        if (to_string(k) == s) return k;
    throw InvalidInput("bad-parameters", "unknown grid kind '" + s + "'");
}

struct Args {
    // shared
    std::string graph, out, decomposition, weights, program, bramble, annotation, trace;
    long long budget = 0;
    // gen
    std::string kind;
    int k = 1, l = 0;
    bool dot = false;
    // ocptw
    std::string mode = "exact";
    // selftest
    std::uint64_t seed = 1;
};

int cmd_gen(const Args& a) {
    const GridKind kind = parse_kind(a.kind);
    ParityGrid pg = gen_grid(kind, a.k, kind == GridKind::cylindrical && a.l == 0 ? 4 * a.k : a.l);
    with_out(a.out, [&](std::ostream& os) {
        if (a.dot)
            write_dot(os, pg.graph);
        else
            write_graph(os, pg.graph);
    });
    std::string ann = a.annotation;
    if (ann.empty() && !a.out.empty() && a.out != "-") ann = a.out + ".ann";
    if (!ann.empty()) with_out(ann, [&](std::ostream& os) { write_annotation(os, pg); });
    std::cerr << "generated " << to_string(pg.kind) << " k=" << pg.k << ": " << pg.graph.num_vertices()
              << " vertices, " << pg.graph.num_edges() << " edges, " << pg.parity_breaking.size()
              << " parity breaking edges\n";
    return 0;
}

int cmd_ocp(const Args& a) {
    Graph g = load_graph(a.graph);
    OcpOptions opt;
    if (a.budget > 0) opt.node_budget = a.budget;
    const int v = ocp_exact(g, opt);
    std::cout << "ocp " << v << '\n';
    const auto greedy = greedy_odd_cycle_packing(g);
    std::cout << "check: greedy packing of " << greedy.size() << " disjoint odd cycles <= " << v << '\n';
    if (static_cast<int>(greedy.size()) > v) throw std::logic_error("greedy packing exceeds the exact value");
    return 0;
}

int cmd_ocptw(const Args& a) {
    Graph g = load_graph(a.graph);
    if (a.mode == "lower") {
        if (a.bramble.empty()) throw InvalidInput("usage", "--mode lower needs --bramble");
        auto in = open_in(a.bramble);
        OcpBramble b = read_bramble(in);
        auto rep = verify_bramble(g, b);
        if (!rep.ok) {
            std::cout << "invalid bramble: " << rep.violation << '\n';
            return 0;
        }
        std::cout << "ocptw >= " << b.order << " (bramble of " << b.elements.size() << " elements verified)\n";
        return 0;
    }
    OcptwResult r;
    if (a.mode == "exact") {
        OcptwOptions opt;
        if (a.budget > 0) opt.node_budget = a.budget;
        r = exact_ocptw(g, opt);
    } else if (a.mode == "upper") {
        r = ocptw_upper_bound(g);
    } else {
        throw InvalidInput("usage", "unknown mode '" + a.mode + "' (exact, upper, lower)");
    }
    auto rep = validate(g, r.decomposition);
    const int w = width(g, r.decomposition);
    if (!rep.ok || w != r.width) throw std::logic_error("produced decomposition does not certify its width");
    std::cout << (a.mode == "exact" ? "ocptw " : "ocptw <= ") << r.width << '\n';
    std::cout << "check: decomposition with " << r.decomposition.nodes.size() << " nodes valid, width " << w << '\n';
    if (!a.out.empty()) with_out(a.out, [&](std::ostream& os) { write_decomposition(os, r.decomposition); });
    return 0;
}

int cmd_validate(const Args& a) {
    Graph g = load_graph(a.graph);
    auto in = open_in(a.decomposition);
    OcpTreeDecomposition d = read_decomposition(in);
    auto rep = validate(g, d);
    if (!rep.ok) {
        std::cout << "invalid, " << rep.axiom << ": " << rep.violation << '\n';
        return 0;
    }
    std::cout << "valid, width " << width(g, d) << '\n';
    std::cout << "adhesion " << adhesion(d) << ", " << (is_tame(d) ? "tame" : "not tame") << '\n';
    if (!a.out.empty()) with_out(a.out, [&](std::ostream& os) { write_decomposition(os, d); });
    return 0;
}

int cmd_mwis(const Args& a) {
    Graph g = load_graph(a.graph);
    auto win = open_in(a.weights);
    WeightedGraph wg(g, read_weights(win, g.num_vertices()));
    std::optional<OcpTreeDecomposition> d;
    if (!a.decomposition.empty()) {
        auto din = open_in(a.decomposition);
        d = read_decomposition(din);
    }
    DpOptions opt;
    if (a.budget > 0) opt.inner.node_budget = a.budget;
    cli::MwisAnswer ans = cli::mwis_command(wg, d, opt);
    std::cout << "value " << ans.result.value << '\n';
    std::cout << "witness " << ids(ans.result.witness) << '\n';
    std::cout << "check: " << (is_independent(g, ans.result.witness) ? "independent" : "NOT independent")
              << ", weight " << weight_of(wg, ans.result.witness) << " (" << ans.method << ")\n";
    return 0;
}

int cmd_ip(const Args& a) {
    auto in = open_in(a.program);
    IntegerProgram ip = read_ip(in);
    IpSolution s = solve_ip(ip);
    std::cout << "status " << to_string(s.status) << '\n';
    if (s.status == IpStatus::optimal) {
        std::cout << "value " << s.value.get_str() << '\n';
        std::cout << "x";
        for (const auto& x : s.x) std::cout << ' ' << x.get_str();
        std::cout << '\n';
        const bool feas = is_feasible(ip, s.x);
        std::cout << "check: " << (feas ? "feasible" : "NOT feasible") << ", objective "
                  << objective_value(ip, s.x).get_str() << '\n';
    } else if (s.status == IpStatus::unbounded && !s.x.empty()) {
        std::cout << "check: feasible point ";
        for (const auto& x : s.x) std::cout << x.get_str() << ' ';
        std::cout << (is_feasible(ip, s.x) ? "verified" : "NOT feasible") << '\n';
    }
    if (!a.trace.empty()) with_out(a.trace, [&](std::ostream& os) { os << to_json(s.trace).dump(2) << '\n'; });
    return 0;
}

int cmd_subdet(const Args& a) {
    auto in = open_in(a.program);
    IntegerProgram ip = read_ip(in);
    IntMatrix m = constraint_matrix(ip);
    SubdetAnalysis s = subdet_analysis(m);
    std::cout << "rows " << m.size() << ", columns " << ip.n << '\n';
    std::cout << "max |entry| " << s.norm.get_str() << ", large columns " << s.large_columns << ", ocp " << s.ocp
              << '\n';
    std::cout << "bound " << s.bound.get_str() << " (hadamard " << hadamard_bound(ip.n).get_str() << ")\n";
    try {
        const mpz_class delta = max_abs_subdeterminant(m);
        std::cout << "max |subdet| " << delta.get_str() << '\n';
        std::cout << "check: " << (delta <= s.bound ? "within bound" : "EXCEEDS bound") << '\n';
    } catch (const InstanceTooLarge& e) {
        std::cout << "max |subdet| not enumerated: " << e.what() << '\n';
    }
    return 0;
}

int cmd_bramble_make(const Args& a) {
    BrambleInstance bi = bramble_from_parity_handle(a.k);
    with_out(a.out, [&](std::ostream& os) { write_bramble(os, bi.bramble); });
    if (!a.graph.empty()) with_out(a.graph, [&](std::ostream& os) { write_graph(os, bi.host.graph); });
    std::cerr << "bramble of order " << bi.bramble.order << " with " << bi.bramble.elements.size()
              << " elements in the parity handle of order " << bi.host.k << '\n';
    return 0;
}

int cmd_bramble_verify(const Args& a) {
    Graph g = load_graph(a.graph);
    auto in = open_in(a.bramble);
    OcpBramble b = read_bramble(in);
    auto rep = verify_bramble(g, b);
    if (rep.ok)
        std::cout << "valid bramble of order " << b.order << '\n';
    else
        std::cout << "invalid: " << rep.violation << '\n';
    return 0;
}

int cmd_selftest(const Args& a) {
    auto results = acceptance::run_acceptance(a.seed);
    bool all = true;
    std::cout << std::left << std::setw(4) << "id" << std::setw(40) << "criterion" << std::setw(6) << "result"
              << "seconds\n";
    for (const auto& r : results) {
        std::cout << std::setw(4) << r.id << std::setw(40) << r.name << std::setw(6) << (r.pass ? "PASS" : "FAIL")
                  << std::fixed << std::setprecision(2) << r.seconds << '\n';
        if (!r.pass) std::cout << "    " << r.detail << '\n';
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"odd cycle packing treewidth toolkit"};
    app.require_subcommand(1);
    Args a;

    auto* gen = app.add_subcommand("gen", "generate a parity grid");
    gen->add_option("kind", a.kind, "cylindrical, handle, vortex or universal")->required();
    gen->add_option("k", a.k, "order")->required();
    gen->add_option("l", a.l, "cycle length (cylindrical; default 4k)");
    gen->add_option("-o,--out", a.out, "graph file (default stdout)");
    gen->add_option("--annotation", a.annotation, "annotation file (default <out>.ann)");
    gen->add_flag("--dot", a.dot, "write DOT instead of the graph format");

    auto* ocp = app.add_subcommand("ocp", "odd cycle packing number");
    ocp->add_option("graph", a.graph)->required();
    ocp->add_option("--budget", a.budget, "search node budget");

    auto* ocptw = app.add_subcommand("ocptw", "OCP-treewidth: exact value, upper or lower bound");
    ocptw->add_option("graph", a.graph)->required();
    ocptw->add_option("--mode", a.mode, "exact, upper or lower")->check(CLI::IsMember({"exact", "upper", "lower"}));
    ocptw->add_option("--bramble", a.bramble, "bramble certificate (lower mode)");
    ocptw->add_option("-o,--out", a.out, "write the decomposition (exact/upper)");
    ocptw->add_option("--budget", a.budget, "search node budget");

    auto* val = app.add_subcommand("validate", "check an OCP-tree-decomposition and report its width");
    val->add_option("graph", a.graph)->required();
    val->add_option("decomposition", a.decomposition)->required();
    val->add_option("-o,--out", a.out, "re-emit the decomposition in canonical form");

    auto* mwis = app.add_subcommand("mwis", "maximum weight independent set");
    mwis->add_option("graph", a.graph)->required();
    mwis->add_option("weights", a.weights)->required();
    mwis->add_option("--decomposition", a.decomposition, "tame OCP-tree-decomposition for the DP");
    mwis->add_option("--budget", a.budget, "inner search node budget");

    auto* ip = app.add_subcommand("ip", "solve an integer program with two entries per row");
    ip->add_option("program", a.program)->required();
    ip->add_option("--trace", a.trace, "write the reduction trace as JSON ('-' for stdout)");

    auto* sub = app.add_subcommand("subdet", "subdeterminant bounds of a program's constraint matrix");
    sub->add_option("program", a.program)->required();

    auto* bmake = app.add_subcommand("bramble-make", "bramble certificate in the parity handle of order k^2");
    bmake->add_option("k", a.k)->required();
    bmake->add_option("-o,--out", a.out, "bramble file (default stdout)");
    bmake->add_option("--graph", a.graph, "also write the host graph");

    auto* bver = app.add_subcommand("bramble-verify", "verify a bramble certificate");
    bver->add_option("graph", a.graph)->required();
    bver->add_option("bramble", a.bramble)->required();

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");
    self->add_option("--seed", a.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*gen) return cmd_gen(a);
        if (*ocp) return cmd_ocp(a);
        if (*ocptw) return cmd_ocptw(a);
        if (*val) return cmd_validate(a);
        if (*mwis) return cmd_mwis(a);
        if (*ip) return cmd_ip(a);
        if (*sub) return cmd_subdet(a);
        if (*bmake) return cmd_bramble_make(a);
        if (*bver) return cmd_bramble_verify(a);
        if (*self) return cmd_selftest(a);
    } catch (const InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
