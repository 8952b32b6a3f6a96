#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "bipartite.hpp"
#include "blocks.hpp"
#include "flow.hpp"
#include "graph.hpp"

namespace oddwidth {

using Path = std::vector<Vertex>; // vertex sequence; length = size() - 1

inline bool is_path_in(const Graph& g, const Path& p) {
    if (p.empty()) return false;
    std::vector<Vertex> s = p;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.has_edge(p[i], p[i + 1])) return false;
    return true;
}

namespace detail {

// Two vertex-disjoint paths from a and b to the target set, each touching the
// target set only in its last vertex. Requires that they exist.
inline std::pair<Path, Path> disjoint_paths_to_set(const Graph& g, Vertex a, Vertex b,
                                                   const std::vector<char>& target) {
    const int n = g.num_vertices();
    MaxFlow f(2 * n + 2);
    const int S = 2 * n, T = 2 * n + 1;
    for (Vertex v = 0; v < n; ++v) f.add_arc(2 * v, 2 * v + 1, 1);
    for (auto [x, y] : g.edges()) {
        f.add_arc(2 * x + 1, 2 * y, 1);
        f.add_arc(2 * y + 1, 2 * x, 1);
    }
    f.add_arc(S, 2 * a, 1);
    f.add_arc(S, 2 * b, 1);
    for (Vertex v = 0; v < n; ++v)
        if (target[v]) f.add_arc(2 * v + 1, T, 1);
    if (f.run(S, T) < 2) throw InvalidInput("not-2-connected", "no two disjoint paths to the odd cycle");

    std::vector<std::int64_t> used(static_cast<std::size_t>(f.num_arcs()), 0);
    auto trace = [&](Vertex start) {
        Path p{start};
        int node = 2 * start;
        while (node != T) {
            int next = -1;
            for (int arc : f.out_arcs(node)) {
                if (!f.is_forward(arc)) continue;
                if (f.flow_on(arc) - used[arc] > 0) {
                    ++used[arc];
                    next = f.head_of(arc);
                    break;
                }
            }
            node = next;
            if (node != T && node % 2 == 0) p.push_back(node / 2);
        }
        auto cut = std::find_if(p.begin(), p.end(), [&](Vertex v) { return target[v] != 0; });
        p.erase(cut + 1, p.end());
        return p;
    };
    Path pa = trace(a);
    Path pb = trace(b);
    return {pa, pb};
}

} // namespace detail

// Two u-v paths of opposite parity in a 2-connected non-bipartite graph:
// route u and v disjointly onto a shortest odd cycle C, then close up along
// either arc of C. Returned as (odd-length path, even-length path).
inline std::pair<Path, Path> parity_paths(const Graph& g, Vertex u, Vertex v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) throw InvalidInput("same-vertex", "endpoints must differ");
    if (!is_two_connected(g)) throw InvalidInput("not-2-connected", "input graph is not 2-connected");
    auto cyc = shortest_odd_cycle(g);
    if (!cyc) throw InvalidInput("bipartite-input", "input graph is bipartite");
    const auto& C = *cyc;
    std::vector<char> on_c(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex x : C) on_c[x] = 1;
    auto [pu, pv] = detail::disjoint_paths_to_set(g, u, v, on_c);
    const Vertex c1 = pu.back(), c2 = pv.back();
    const int len = static_cast<int>(C.size());
    const int i1 = static_cast<int>(std::find(C.begin(), C.end(), c1) - C.begin());
    const int i2 = static_cast<int>(std::find(C.begin(), C.end(), c2) - C.begin());

    auto build = [&](int step) {
        Path p = pu;
        for (int i = (i1 + step + len) % len;; i = (i + step + len) % len) {
            p.push_back(C[i]);
            if (i == i2) break;
        }
        for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it) p.push_back(*it);
        return p;
    };
    Path p1 = build(+1), p2 = build(-1);
    if ((p1.size() - 1) % 2 == 0) std::swap(p1, p2);
    return {p1, p2};
}

} // namespace oddwidth
