#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bipartite.hpp"
#include "flow.hpp"
#include "graph.hpp"

namespace oddwidth {

using Weight = std::int64_t;

// Vertex weights are non-negative and their total must leave headroom for
// the penalty arithmetic done by callers.
inline constexpr Weight kMaxTotalWeight = std::numeric_limits<Weight>::max() / 8;

struct WeightedGraph {
    Graph graph;
    std::vector<Weight> weight;

    WeightedGraph() = default;
    WeightedGraph(Graph g, std::vector<Weight> w) : graph(std::move(g)), weight(std::move(w)) { check(); }

    void check() const {
        if (static_cast<int>(weight.size()) != graph.num_vertices())
            throw InvalidInput("bad-weights", "weight vector has " + std::to_string(weight.size()) +
                                                  " entries for " + std::to_string(graph.num_vertices()) +
                                                  " vertices");
        Weight total = 0;
        for (std::size_t v = 0; v < weight.size(); ++v) {
            if (weight[v] < 0)
                throw InvalidInput("negative-weight", "vertex " + std::to_string(v) + " has negative weight");
            if (weight[v] > kMaxTotalWeight - total) throw InvalidInput("overflow", "total weight too large");
            total += weight[v];
        }
    }
};

struct MwisResult {
    Weight value = 0;
    std::vector<Vertex> witness; // sorted
};

inline bool is_independent(const Graph& g, const std::vector<Vertex>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (set[i] == set[j] || g.has_edge(set[i], set[j])) return false;
    return true;
}

inline Weight weight_of(const WeightedGraph& wg, const std::vector<Vertex>& set) {
    Weight s = 0;
    for (Vertex v : set) s += wg.weight.at(static_cast<std::size_t>(v));
    return s;
}

// Enumerates independent sets in lexicographic order of their sorted vertex
// lists and keeps the first one of maximum weight.
inline MwisResult mwis_bruteforce(const WeightedGraph& wg, int max_vertices = 24) {
    const int n = wg.graph.num_vertices();
    if (n > max_vertices)
        throw InstanceTooLarge("brute-force MWIS limited to " + std::to_string(max_vertices) + " vertices, got " +
                               std::to_string(n));
    MwisResult best;
    std::vector<Vertex> cur;
    std::vector<int> blocked(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, Vertex next, Weight w) -> void {
        if (w > best.value) {
            best.value = w;
            best.witness = cur;
        }
        for (Vertex v = next; v < n; ++v) {
            if (blocked[v]) continue;
            cur.push_back(v);
            for (Vertex u : wg.graph.neighbours(v)) ++blocked[u];
            self(self, v + 1, w + wg.weight[v]);
            for (Vertex u : wg.graph.neighbours(v)) --blocked[u];
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return best;
}

namespace detail {

// MWIS of the subgraph induced by `alive`, which must be bipartite, as the
// complement of a minimum weight vertex cover read off a minimum cut.
inline MwisResult bipartite_mwis(const Graph& g, const std::vector<Weight>& w, const std::vector<char>& alive,
                                 const TwoColouring& col) {
    const int n = g.num_vertices();
    MaxFlow f(n + 2);
    const int s = n, t = n + 1;
    const Weight inf = std::numeric_limits<Weight>::max() / 4;
    Weight total = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        total += w[v];
        if (col[v] == 0) {
            f.add_arc(s, v, w[v]);
            for (Vertex u : g.neighbours(v))
                if (alive[u]) f.add_arc(v, u, inf);
        } else {
            f.add_arc(v, t, w[v]);
        }
    }
    Weight cut = f.run(s, t);
    auto reach = f.residual_reachable(s);
    MwisResult r;
    r.value = total - cut;
    for (Vertex v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        bool in = col[v] == 0 ? reach[v] != 0 : reach[v] == 0;
        if (in) r.witness.push_back(v);
    }
    return r;
}

} // namespace detail

inline MwisResult mwis_bipartite(const WeightedGraph& wg) {
    wg.check();
    auto col = two_colouring(wg.graph);
    if (!col) throw InvalidInput("not-bipartite", "mwis_bipartite needs a bipartite graph");
    std::vector<char> alive(static_cast<std::size_t>(wg.graph.num_vertices()), 1);
    return detail::bipartite_mwis(wg.graph, wg.weight, alive, *col);
}

struct MwisOptions {
    long long node_budget = 10'000'000;
};

namespace detail {

// Branch and bound for arbitrary graphs: components are solved separately,
// bipartite components by min cut, otherwise branch on a vertex of a
// shortest odd cycle. The exclusion branch is pruned with the value of the
// fractional relaxation, i.e. half the MWIS of the bipartite double cover.
class MwisSearch {
public:
    MwisSearch(const WeightedGraph& wg, const MwisOptions& opt) : g_(wg.graph), w_(wg.weight), opt_(opt) {}

    MwisResult solve(const std::vector<char>& alive) {
        tick();
        MwisResult total;
        for (const auto& comp : connected_components(g_, alive)) {
            std::vector<char> sub(alive.size(), 0);
            for (Vertex v : comp) sub[v] = 1;
            MwisResult r = solve_connected(sub);
            total.value += r.value;
            total.witness.insert(total.witness.end(), r.witness.begin(), r.witness.end());
        }
        std::sort(total.witness.begin(), total.witness.end());
        return total;
    }

    // Upper bound: floor(MWIS(double cover) / 2).
    Weight relaxation_bound(const std::vector<char>& alive) const {
        const int n = g_.num_vertices();
        Graph dc(2 * n);
        std::vector<Weight> w(static_cast<std::size_t>(2 * n), 0);
        std::vector<char> on(static_cast<std::size_t>(2 * n), 0);
        TwoColouring col(static_cast<std::size_t>(2 * n), 0);
        for (Vertex v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            on[v] = on[n + v] = 1;
            w[v] = w[n + v] = w_[v];
            col[n + v] = 1;
            for (Vertex u : g_.neighbours(v))
                if (alive[u] && v < u) {
                    dc.add_edge(v, n + u);
                    dc.add_edge(u, n + v);
                }
        }
        return bipartite_mwis(dc, w, on, col).value / 2;
    }

private:
    void tick() {
        if (++nodes_ > opt_.node_budget)
            throw InstanceTooLarge("MWIS search exceeded node budget " + std::to_string(opt_.node_budget),
                                   "node-budget-exceeded");
    }

    MwisResult solve_connected(std::vector<char>& alive) {
        if (auto col = two_colouring(g_, alive)) return bipartite_mwis(g_, w_, alive, *col);
        auto cyc = shortest_odd_cycle(g_, alive);
        Vertex v = cyc->front();
        for (Vertex x : *cyc)
            if (live_degree(x, alive) > live_degree(v, alive)) v = x;

        // include v
        std::vector<char> inc = alive;
        inc[v] = 0;
        for (Vertex u : g_.neighbours(v)) inc[u] = 0;
        MwisResult best = solve(inc);
        best.value += w_[v];
        best.witness.insert(std::lower_bound(best.witness.begin(), best.witness.end(), v), v);

        // exclude v
        std::vector<char> exc = alive;
        exc[v] = 0;
        if (relaxation_bound(exc) > best.value) {
            MwisResult r = solve(exc);
            if (r.value > best.value) best = std::move(r);
        }
        return best;
    }

    int live_degree(Vertex v, const std::vector<char>& alive) const {
        int d = 0;
        for (Vertex u : g_.neighbours(v)) d += alive[u] ? 1 : 0;
        return d;
    }

    const Graph& g_;
    const std::vector<Weight>& w_;
    MwisOptions opt_;
    long long nodes_ = 0;
};

} // namespace detail

inline MwisResult mwis_bounded_ocp(const WeightedGraph& wg, const MwisOptions& opt = {}) {
    wg.check();
    detail::MwisSearch s(wg, opt);
    return s.solve(std::vector<char>(static_cast<std::size_t>(wg.graph.num_vertices()), 1));
}

// Weight file: lines `w <vertex> <weight>`, every vertex exactly once.
inline std::vector<Weight> read_weights(std::istream& in, int n) {
    std::vector<Weight> w(static_cast<std::size_t>(n), 0);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = detail::tokens(line);
        if (t.empty() || t[0] == "c") continue;
        if (t[0] != "w" || t.size() != 3) throw detail::parse_error(lineno, "expected 'w <vertex> <weight>'");
        long long v = detail::parse_int(t[1], lineno);
        long long x = detail::parse_int(t[2], lineno);
        if (v < 0 || v >= n) throw detail::parse_error(lineno, "vertex " + t[1] + " out of range");
        if (seen[v]) throw detail::parse_error(lineno, "vertex " + t[1] + " listed twice");
        if (x < 0) throw detail::parse_error(lineno, "negative weight");
        seen[v] = 1;
        w[v] = x;
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw detail::parse_error(lineno, "no weight for vertex " + std::to_string(v));
    return w;
}

inline void write_weights(std::ostream& out, const std::vector<Weight>& w) {
    for (std::size_t v = 0; v < w.size(); ++v) out << "w " << v << ' ' << w[v] << '\n';
}

} // namespace oddwidth
