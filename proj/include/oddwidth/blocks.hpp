#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace oddwidth {

struct BlockDecomposition {
    // Each block is a sorted vertex list; blocks are sorted by their vertex lists.
    std::vector<std::vector<Vertex>> blocks;
    // Block-tree edges (i, j), i < j, joining blocks that share a cut vertex.
    // For a cut vertex in several blocks, the first such block (by index) is
    // joined to each of the others, so the result is a forest.
    std::vector<std::pair<int, int>> tree;
    std::vector<Vertex> cut_vertices;
};

// Blocks via the classical lowpoint DFS with an edge stack (iterative).
// Isolated vertices form singleton blocks so that blocks cover V(g).
inline BlockDecomposition blocks(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Vertex>> found;
    std::vector<Edge> estack;
    int timer = 0;

    struct Frame {
        Vertex v;
        Vertex parent;
        std::size_t next;
        int children;
    };
    std::vector<Frame> stack;
    for (Vertex root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        if (g.degree(root) == 0) {
            disc[root] = timer++;
            found.push_back({root});
            continue;
        }
        disc[root] = low[root] = timer++;
        stack.push_back({root, -1, 0, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& nb = g.neighbours(f.v);
            if (f.next < nb.size()) {
                Vertex w = nb[f.next++];
                if (w == f.parent) continue;
                if (disc[w] == -1) {
                    estack.emplace_back(f.v, w);
                    disc[w] = low[w] = timer++;
                    ++f.children;
                    stack.push_back({w, f.v, 0, 0});
                } else if (disc[w] < disc[f.v]) {
                    estack.emplace_back(f.v, w);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            Frame done = f;
            stack.pop_back();
            if (stack.empty()) {
                if (done.children > 1) is_cut[done.v] = 1;
                break;
            }
            Frame& p = stack.back();
            low[p.v] = std::min(low[p.v], low[done.v]);
            if (low[done.v] >= disc[p.v]) {
                if (p.parent != -1) is_cut[p.v] = 1;
                std::vector<Vertex> blk;
                while (true) {
                    Edge e = estack.back();
                    estack.pop_back();
                    blk.push_back(e.first);
                    blk.push_back(e.second);
                    if (e.first == p.v && e.second == done.v) break;
                }
                std::sort(blk.begin(), blk.end());
                blk.erase(std::unique(blk.begin(), blk.end()), blk.end());
                found.push_back(std::move(blk));
            }
        }
    }
    std::sort(found.begin(), found.end());

    BlockDecomposition out;
    out.blocks = std::move(found);
    for (Vertex v = 0; v < n; ++v)
        if (is_cut[v]) out.cut_vertices.push_back(v);
    for (Vertex c : out.cut_vertices) {
        int first = -1;
        for (int i = 0; i < static_cast<int>(out.blocks.size()); ++i) {
            const auto& b = out.blocks[i];
            if (!std::binary_search(b.begin(), b.end(), c)) continue;
            if (first == -1)
                first = i;
            else
                out.tree.emplace_back(first, i);
        }
    }
    std::sort(out.tree.begin(), out.tree.end());
    return out;
}

// 2-connected: at least three vertices, connected, and no cut vertex.
inline bool is_two_connected(const Graph& g) {
    if (g.num_vertices() < 3) return false;
    auto bd = blocks(g);
    return bd.blocks.size() == 1 && static_cast<int>(bd.blocks[0].size()) == g.num_vertices();
}

inline bool induces_two_connected(const Graph& g, const std::vector<Vertex>& set) {
    return is_two_connected(induced_subgraph(g, set).graph);
}

} // namespace oddwidth
