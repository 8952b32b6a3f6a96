#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "bipartite.hpp"
#include "graph.hpp"

namespace oddwidth {

struct OcpOptions {
    // Searches that expand more nodes than this throw InstanceTooLarge.
    long long node_budget = 10'000'000;
    // Inputs with more vertices are refused outright.
    int vertex_limit = 128;
    // If set, the search stops as soon as a packing of this size is known and
    // returns min(OCP, cap).
    std::optional<int> cap;
};

namespace detail {

using MaskKey = std::vector<std::uint64_t>;

struct MaskKeyHash {
    std::size_t operator()(const MaskKey& k) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto w : k) h = (h ^ w) * 1099511628211ull + (h >> 17);
        return h;
    }
};

inline MaskKey mask_key(const std::vector<char>& alive) {
    MaskKey k((alive.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < alive.size(); ++i)
        if (alive[i]) k[i / 64] |= std::uint64_t{1} << (i % 64);
    return k;
}

class OcpSearch {
public:
    OcpSearch(const Graph& g, const OcpOptions& opt) : g_(g), opt_(opt) {}

    int solve(std::vector<char> alive) {
        int r = packing(alive);
        return opt_.cap ? std::min(r, *opt_.cap) : r;
    }

    // Greedy packing by repeatedly removing a shortest odd cycle.
    std::vector<std::vector<Vertex>> greedy(std::vector<char> alive) {
        std::vector<std::vector<Vertex>> out;
        while (auto c = shortest_odd_cycle(g_, alive)) {
            tick();
            for (Vertex v : *c) alive[v] = 0;
            out.push_back(std::move(*c));
        }
        return out;
    }

    // Minimum number of vertices meeting every odd cycle.
    int transversal(const std::vector<char>& alive, int lower) {
        for (int k = lower;; ++k)
            if (transversal_le(alive, k)) return k;
    }

private:
    void tick() {
        if (++nodes_ > opt_.node_budget)
            throw InstanceTooLarge("odd cycle packing search exceeded node budget of " +
                                   std::to_string(opt_.node_budget));
    }

    bool transversal_le(const std::vector<char>& alive, int k) {
        tick();
        auto c = shortest_odd_cycle(g_, alive);
        if (!c) return true;
        if (k == 0) return false;
        auto key = mask_key(alive);
        auto it = oct_fail_.find(key);
        if (it != oct_fail_.end() && it->second >= k) return false;
        std::vector<char> next = alive;
        for (Vertex v : *c) {
            next[v] = 0;
            bool ok = transversal_le(next, k - 1);
            next[v] = 1;
            if (ok) return true;
        }
        int& f = oct_fail_[key];
        f = std::max(f, k);
        return false;
    }

    // Exact packing number of the alive part, summed over components.
    int packing(const std::vector<char>& alive) {
        auto comps = connected_components(g_, alive);
        int total = 0;
        std::vector<char> part(alive.size(), 0);
        for (const auto& comp : comps) {
            if (comp.size() < 3) continue;
            for (Vertex v : comp) part[v] = 1;
            total += packing_connected(part);
            for (Vertex v : comp) part[v] = 0;
            if (opt_.cap && total >= *opt_.cap) return total;
        }
        return total;
    }

    int packing_connected(std::vector<char>& alive) {
        tick();
        auto key = mask_key(alive);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        int lb = static_cast<int>(greedy(alive).size());
        int result = lb;
        if (lb > 0 && !(opt_.cap && lb >= *opt_.cap)) {
            int ub = transversal(alive, lb);
            if (ub > lb) result = branch(alive, lb, ub);
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

    // Either some optimal packing avoids v, or v lies on a chordless odd
    // cycle of an optimal packing (a chord would split off a shorter odd
    // cycle on a subset of the vertices).
    int branch(std::vector<char>& alive, int lb, int ub) {
        auto c = *shortest_odd_cycle(g_, alive);
        Vertex v = c[0];
        for (Vertex x : c)
            if (live_degree(x, alive) > live_degree(v, alive)) v = x;
        alive[v] = 0;
        int best = std::max(lb, packing(alive));
        alive[v] = 1;
        if (best >= ub || (opt_.cap && best >= *opt_.cap)) return best;
        for_each_chordless_odd_cycle(alive, v, [&](const std::vector<Vertex>& cyc) {
            for (Vertex x : cyc) alive[x] = 0;
            best = std::max(best, 1 + packing(alive));
            for (Vertex x : cyc) alive[x] = 1;
            return best < ub && !(opt_.cap && best >= *opt_.cap);
        });
        return best;
    }

    int live_degree(Vertex v, const std::vector<char>& alive) const {
        int d = 0;
        for (Vertex w : g_.neighbours(v)) d += alive[w] ? 1 : 0;
        return d;
    }

    // Calls fn for every chordless odd cycle through v (each once, as the
    // vertex sequence v, p1, ..., pk with p1 < pk); fn returns false to stop.
    template <class Fn>
    void for_each_chordless_odd_cycle(const std::vector<char>& alive, Vertex v, Fn&& fn) {
        ChordlessWalk w{alive, std::vector<Vertex>{v}, std::vector<int>(alive.size(), 0),
                        std::vector<char>(alive.size(), 0), false};
        w.on_path[v] = 1;
        for (Vertex x : g_.neighbours(v)) {
            if (w.stop) break;
            if (!alive[x]) continue;
            w.path.push_back(x);
            w.on_path[x] = 1;
            extend_chordless(w, fn);
            w.on_path[x] = 0;
            w.path.pop_back();
        }
    }

    struct ChordlessWalk {
        const std::vector<char>& alive;
        std::vector<Vertex> path;
        std::vector<int> blocked; // adjacency count to interior path vertices but the last
        std::vector<char> on_path;
        bool stop;
    };

    template <class Fn>
    void extend_chordless(ChordlessWalk& w, Fn& fn) {
        tick();
        const Vertex v = w.path.front();
        const Vertex last = w.path.back();
        for (Vertex x : g_.neighbours(last)) {
            if (w.stop) return;
            if (!w.alive[x] || w.on_path[x] || w.blocked[x]) continue;
            if (g_.has_edge(x, v)) {
                if (w.path.size() % 2 == 0 && w.path[1] < x) {
                    std::vector<Vertex> cyc = w.path;
                    cyc.push_back(x);
                    if (!fn(cyc)) w.stop = true;
                }
                continue;
            }
            for (Vertex y : g_.neighbours(last)) ++w.blocked[y];
            w.path.push_back(x);
            w.on_path[x] = 1;
            extend_chordless(w, fn);
            w.on_path[x] = 0;
            w.path.pop_back();
            for (Vertex y : g_.neighbours(last)) --w.blocked[y];
        }
    }

    const Graph& g_;
    OcpOptions opt_;
    long long nodes_ = 0;
    std::unordered_map<MaskKey, int, MaskKeyHash> memo_;
    std::unordered_map<MaskKey, int, MaskKeyHash> oct_fail_;
};

} // namespace detail

inline void check_ocp_size(const Graph& g, const OcpOptions& opt) {
    if (g.num_vertices() > opt.vertex_limit)
        throw InstanceTooLarge("odd cycle packing limited to " + std::to_string(opt.vertex_limit) +
                               " vertices, got " + std::to_string(g.num_vertices()));
}

// Exact odd cycle packing number (or min(OCP, cap) when opt.cap is set).
inline int ocp_exact(const Graph& g, const OcpOptions& opt = {}) {
    check_ocp_size(g, opt);
    detail::OcpSearch s(g, opt);
    return s.solve(std::vector<char>(static_cast<std::size_t>(g.num_vertices()), 1));
}

inline int ocp_exact(const Graph& g, const std::vector<char>& alive, const OcpOptions& opt = {}) {
    check_ocp_size(g, opt);
    detail::OcpSearch s(g, opt);
    return s.solve(alive);
}

// Whether g has k vertex-disjoint odd cycles.
inline bool ocp_at_least(const Graph& g, int k, OcpOptions opt = {}) {
    if (k <= 0) return true;
    opt.cap = k;
    return ocp_exact(g, opt) >= k;
}

// Vertex-disjoint odd cycles found greedily (shortest first); a lower bound.
inline std::vector<std::vector<Vertex>> greedy_odd_cycle_packing(const Graph& g) {
    OcpOptions opt;
    opt.node_budget = std::numeric_limits<long long>::max();
    detail::OcpSearch s(g, opt);
    return s.greedy(std::vector<char>(static_cast<std::size_t>(g.num_vertices()), 1));
}

// Exact odd cycle transversal number, by shortest-odd-cycle branching.
inline int odd_cycle_transversal(const Graph& g, const OcpOptions& opt = {}) {
    check_ocp_size(g, opt);
    detail::OcpSearch s(g, opt);
    std::vector<char> all(static_cast<std::size_t>(g.num_vertices()), 1);
    return s.transversal(all, static_cast<int>(s.greedy(all).size()));
}

// A simple graph whose cycles correspond to those of the signed multigraph
// `s` with the same parity: odd edges are kept, even edges get one
// subdivision vertex and odd loops become triangles (even loops vanish).
// Parallel edges of equal label are merged, since either copy serves any
// cycle through the other. Vertex-disjointness is preserved.
inline Graph parity_subdivision(const SignedGraph& s) {
    Graph g(s.num_vertices());
    std::set<std::pair<Vertex, Vertex>> even_done;
    for (const auto& e : s.edges()) {
        if (e.is_loop()) {
            if (e.label == 0) continue;
            Vertex a = g.add_vertex(), b = g.add_vertex();
            g.add_edge(e.u, a);
            g.add_edge(a, b);
            g.add_edge(b, e.u);
        } else if (e.label == 1) {
            g.add_edge_if_absent(e.u, e.v);
        } else if (even_done.insert(make_edge(e.u, e.v)).second) {
            Vertex a = g.add_vertex();
            g.add_edge(e.u, a);
            g.add_edge(a, e.v);
        }
    }
    return g;
}

// Maximum number of vertex-disjoint odd cycles of a signed graph.
inline int ocp_exact(const SignedGraph& s, OcpOptions opt = {}) {
    Graph g = parity_subdivision(s);
    opt.vertex_limit = std::max(opt.vertex_limit, g.num_vertices());
    return ocp_exact(g, opt);
}

} // namespace oddwidth
