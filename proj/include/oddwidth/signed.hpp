#pragma once

#include <deque>
#include <vector>

#include "graph.hpp"

namespace oddwidth {

// Flip the label of every non-loop edge at v. Cycle parities are unchanged
// because a cycle through v uses exactly two of these edges.
inline SignedGraph shift_at_vertex(const SignedGraph& s, Vertex v) {
    s.check_vertex(v);
    SignedGraph out = s;
    for (int id = 0; id < s.num_edges(); ++id) {
        const auto& e = s.edge(id);
        if (!e.is_loop() && (e.u == v || e.v == v)) out.set_label(id, e.label ^ 1);
    }
    return out;
}

inline SignedGraph shift_at_vertices(const SignedGraph& s, const std::vector<Vertex>& vs) {
    SignedGraph out = s;
    for (Vertex v : vs) out = shift_at_vertex(out, v);
    return out;
}

// Canonical labelling: shift so that every edge of a fixed maximal forest is
// even. The forest comes from a BFS per component (roots by smallest vertex,
// edges scanned by increasing edge id), so it depends only on the underlying
// multigraph.
inline std::vector<int> canonical_labels(const SignedGraph& s) {
    const int n = s.num_vertices();
    std::vector<std::vector<int>> inc(static_cast<std::size_t>(n));
    for (int id = 0; id < s.num_edges(); ++id) {
        const auto& e = s.edge(id);
        if (e.is_loop()) continue;
        inc[e.u].push_back(id);
        inc[e.v].push_back(id);
    }
    std::vector<int> potential(static_cast<std::size_t>(n), -1);
    std::deque<Vertex> q;
    for (Vertex r = 0; r < n; ++r) {
        if (potential[r] != -1) continue;
        potential[r] = 0;
        q.push_back(r);
        while (!q.empty()) {
            Vertex x = q.front();
            q.pop_front();
            for (int id : inc[x]) {
                const auto& e = s.edge(id);
                Vertex y = e.u == x ? e.v : e.u;
                if (potential[y] != -1) continue;
                potential[y] = potential[x] ^ e.label;
                q.push_back(y);
            }
        }
    }
    std::vector<int> out(static_cast<std::size_t>(s.num_edges()));
    for (int id = 0; id < s.num_edges(); ++id) {
        const auto& e = s.edge(id);
        out[id] = e.is_loop() ? e.label : (e.label ^ potential[e.u] ^ potential[e.v]);
    }
    return out;
}

// Same underlying multigraph (edge ids included) required.
inline bool shifting_equivalent(const SignedGraph& a, const SignedGraph& b) {
    bool same = a.num_vertices() == b.num_vertices() && a.num_edges() == b.num_edges();
    for (int id = 0; same && id < a.num_edges(); ++id)
        same = a.edge(id).u == b.edge(id).u && a.edge(id).v == b.edge(id).v;
    if (!same) throw InvalidInput("different-underlying-graph", "signed graphs differ in their underlying multigraph");
    return canonical_labels(a) == canonical_labels(b);
}

// Parity of a closed walk given as a list of edge ids.
inline int walk_parity(const SignedGraph& s, const std::vector<int>& edge_ids) {
    int p = 0;
    for (int id : edge_ids) p ^= s.edge(id).label;
    return p;
}

} // namespace oddwidth
