#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "decomposition.hpp"
#include "graph.hpp"

namespace oddwidth {

// Tree decomposition from an elimination ordering: eliminating v makes its
// later neighbours a clique; bag(v) = {v} + those neighbours, and the parent
// of bag(v) is the bag of the earliest-eliminated of them.
inline TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) {
    const int n = g.num_vertices();
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
    for (Vertex v = 0; v < n; ++v)
        if (pos[v] < 0) throw InvalidInput("bad-parameters", "elimination order must list every vertex");

    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;

    TreeDecomposition td;
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        Vertex v = order[i];
        VertexSet later;
        for (Vertex w = 0; w < n; ++w)
            if (adj[v][w] && pos[w] > i) later.push_back(w);
        for (Vertex a : later)
            for (Vertex b : later)
                if (a != b) adj[a][b] = 1;
        VertexSet bag = later;
        bag.push_back(v);
        td.bags.push_back(normalized(bag));
        int best = -1;
        for (Vertex w : later)
            if (best < 0 || pos[w] < best) best = pos[w];
        parent[i] = best;
    }
    // Bags are indexed by elimination position; roots of different
    // components are chained so that the result is a single tree.
    int prev_root = -1;
    for (int i = 0; i < n; ++i) {
        if (parent[i] >= 0)
            td.edges.emplace_back(std::min(i, parent[i]), std::max(i, parent[i]));
        else {
            if (prev_root >= 0) td.edges.emplace_back(prev_root, i);
            prev_root = i;
        }
    }
    return td;
}

// Contracts every tree edge whose one bag contains the other, then drops
// duplicate information; the width is unchanged.
inline TreeDecomposition compress(TreeDecomposition td) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t e = 0; e < td.edges.size(); ++e) {
            auto [a, b] = td.edges[e];
            int keep, drop;
            if (is_subset(td.bags[a], td.bags[b])) {
                keep = b;
                drop = a;
            } else if (is_subset(td.bags[b], td.bags[a])) {
                keep = a;
                drop = b;
            } else {
                continue;
            }
            td.edges.erase(td.edges.begin() + static_cast<long>(e));
            for (auto& [x, y] : td.edges) {
                if (x == drop) x = keep;
                if (y == drop) y = keep;
            }
            // Renumber: remove bag `drop`.
            td.bags.erase(td.bags.begin() + drop);
            for (auto& [x, y] : td.edges) {
                if (x > drop) --x;
                if (y > drop) --y;
                if (x > y) std::swap(x, y);
            }
            changed = true;
            break;
        }
    }
    std::sort(td.edges.begin(), td.edges.end());
    return td;
}

// Greedy min-fill elimination order (ties: smaller vertex id).
inline std::vector<Vertex> min_fill_order(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> order;
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        long best_fill = std::numeric_limits<long>::max();
        for (Vertex v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long fill = 0;
            for (Vertex a = 0; a < n; ++a) {
                if (gone[a] || !adj[v][a]) continue;
                for (Vertex b = a + 1; b < n; ++b)
                    if (!gone[b] && adj[v][b] && !adj[a][b]) ++fill;
            }
            if (fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = 0; b < n; ++b)
                if (a != b && !gone[a] && !gone[b] && adj[best][a] && adj[best][b]) adj[a][b] = 1;
        gone[best] = 1;
        order.push_back(best);
    }
    return order;
}

// Exact treewidth ordering by the subset recurrence
//   TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|),
// where Q(S, v) are the vertices outside S + v reachable from v through S.
inline std::vector<Vertex> exact_treewidth_order(const Graph& g, int max_vertices = 18) {
    const int n = g.num_vertices();
    if (n > max_vertices)
        throw InstanceTooLarge("exact treewidth limited to " + std::to_string(max_vertices) + " vertices, got " +
                               std::to_string(n));
    if (n == 0) return {};
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : g.edges()) {
        nb[u] |= 1u << v;
        nb[v] |= 1u << u;
    }
    auto q_size = [&](std::uint32_t s, Vertex v) {
        std::uint32_t reach = 1u << v, frontier = 1u << v, out = 0;
        while (frontier) {
            int x = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint32_t nx = nb[x] & ~reach;
            reach |= nx;
            out |= nx & ~s;
            frontier |= nx & s;
        }
        return std::popcount(out);
    };
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, 0);
    std::vector<std::int8_t> pick(static_cast<std::size_t>(full) + 1, -1);
    tw[0] = -1;
    for (std::uint32_t s = 1; s <= full; ++s) {
        int best = std::numeric_limits<int>::max();
        for (std::uint32_t rest = s; rest; rest &= rest - 1) {
            int v = std::countr_zero(rest);
            std::uint32_t prev = s & ~(1u << v);
            int val = std::max<int>(tw[prev], q_size(prev, v));
            if (val < best) {
                best = val;
                pick[s] = static_cast<std::int8_t>(v);
            }
        }
        tw[s] = static_cast<std::int8_t>(best);
    }
    std::vector<Vertex> order;
    for (std::uint32_t s = full; s; s &= ~(1u << pick[s])) order.push_back(pick[s]);
    std::reverse(order.begin(), order.end());
    return order;
}

inline TreeDecomposition exact_tree_decomposition(const Graph& g) {
    return compress(decomposition_from_order(g, exact_treewidth_order(g)));
}

inline TreeDecomposition min_fill_tree_decomposition(const Graph& g) {
    return compress(decomposition_from_order(g, min_fill_order(g)));
}

inline int treewidth(const Graph& g) { return exact_tree_decomposition(g).width(); }

} // namespace oddwidth
