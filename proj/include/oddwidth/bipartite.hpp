#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace oddwidth {

// colour[v] in {0,1}; every vertex of the graph is in the domain.
using TwoColouring = std::vector<int>;

// Proper 2-colouring of the vertices with alive[v] != 0 (others get -1), or
// nullopt if the alive part contains an odd cycle. Colour 0 goes to the
// smallest vertex of every component.
inline std::optional<TwoColouring> two_colouring(const Graph& g, const std::vector<char>& alive) {
    const int n = g.num_vertices();
    TwoColouring col(static_cast<std::size_t>(n), -1);
    std::deque<Vertex> q;
    for (Vertex s = 0; s < n; ++s) {
        if (!alive[s] || col[s] != -1) continue;
        col[s] = 0;
        q.push_back(s);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop_front();
            for (Vertex w : g.neighbours(v)) {
                if (!alive[w]) continue;
                if (col[w] == -1) {
                    col[w] = 1 - col[v];
                    q.push_back(w);
                } else if (col[w] == col[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return col;
}

inline std::optional<TwoColouring> two_colouring(const Graph& g) {
    return two_colouring(g, std::vector<char>(static_cast<std::size_t>(g.num_vertices()), 1));
}

inline bool is_bipartite(const Graph& g) { return two_colouring(g).has_value(); }

inline bool is_bipartite(const Graph& g, const std::vector<char>& alive) {
    return two_colouring(g, alive).has_value();
}

namespace detail {

// Rotate a cycle so that it starts at its smallest vertex and runs in the
// direction of the smaller neighbour.
inline std::vector<Vertex> normalize_cycle(std::vector<Vertex> c) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
    return c;
}

} // namespace detail

// A minimum-length odd cycle in the alive part (vertex sequence), or nullopt.
// For every start vertex s a BFS runs over (vertex, parity) states; the
// first-found walk from (s,0) to (s,1) of minimum length is a simple cycle.
// Among all start vertices the lexicographically smallest normalised cycle wins.
inline std::optional<std::vector<Vertex>> shortest_odd_cycle(const Graph& g, const std::vector<char>& alive) {
    const int n = g.num_vertices();
    if (is_bipartite(g, alive)) return std::nullopt;
    int best_len = n + 1;
    std::vector<int> dist(2 * static_cast<std::size_t>(n));
    std::vector<int> parent(2 * static_cast<std::size_t>(n));
    std::vector<Vertex> best;
    std::deque<int> q;
    for (Vertex s = 0; s < n; ++s) {
        if (!alive[s]) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[2 * s] = 0;
        parent[2 * s] = -1;
        q.assign(1, 2 * s);
        const int target = 2 * s + 1;
        while (!q.empty() && dist[target] == -1) {
            int st = q.front();
            q.pop_front();
            if (dist[st] >= best_len) break;
            Vertex v = st / 2;
            int p = st % 2;
            for (Vertex w : g.neighbours(v)) {
                if (!alive[w]) continue;
                int nt = 2 * w + (1 - p);
                if (dist[nt] == -1) {
                    dist[nt] = dist[st] + 1;
                    parent[nt] = st;
                    q.push_back(nt);
                }
            }
        }
        if (dist[target] == -1 || dist[target] > best_len) continue;
        std::vector<Vertex> walk;
        for (int st = parent[target]; st != -1; st = parent[st]) walk.push_back(st / 2);
        std::reverse(walk.begin(), walk.end());
        // A closed odd walk of minimum odd length is a simple cycle; if the
        // walk repeats a vertex it is not of minimum length, skip it.
        std::vector<Vertex> sorted = walk;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        auto cyc = detail::normalize_cycle(std::move(walk));
        int len = static_cast<int>(cyc.size());
        if (len < best_len || (len == best_len && cyc < best)) {
            best_len = len;
            best = std::move(cyc);
        }
    }
    return best;
}

inline std::optional<std::vector<Vertex>> shortest_odd_cycle(const Graph& g) {
    return shortest_odd_cycle(g, std::vector<char>(static_cast<std::size_t>(g.num_vertices()), 1));
}

} // namespace oddwidth
