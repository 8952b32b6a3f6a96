#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bipartite.hpp"
#include "graph.hpp"

namespace oddwidth {

struct RealizedEdge {
    Edge pattern_edge; // (a, b) with a < b
    Edge host_edge;    // first endpoint in branch[a], second in branch[b]
};

struct OddMinorModel {
    Graph pattern;
    Graph host;
    std::vector<std::vector<Vertex>> branch; // indexed by pattern vertex, sorted
    std::vector<int> witness;                // host vertex -> 0/1, or -1 outside the branch sets
    std::vector<RealizedEdge> realization;   // one entry per pattern edge
};

struct ModelReport {
    bool ok = true;
    std::string violation; // empty when ok
};

inline ModelReport verify_odd_minor_model(const OddMinorModel& m) {
    auto fail = [](std::string s) { return ModelReport{false, std::move(s)}; };
    const Graph& H = m.pattern;
    const Graph& G = m.host;
    const int nh = H.num_vertices(), ng = G.num_vertices();
    if (static_cast<int>(m.branch.size()) != nh)
        return fail("branch map has " + std::to_string(m.branch.size()) + " entries for " + std::to_string(nh) +
                    " pattern vertices");
    std::vector<int> owner(static_cast<std::size_t>(ng), -1);
    for (int a = 0; a < nh; ++a) {
        if (m.branch[a].empty()) return fail("branch set of pattern vertex " + std::to_string(a) + " is empty");
        for (Vertex x : m.branch[a]) {
            if (x < 0 || x >= ng)
                return fail("branch set of pattern vertex " + std::to_string(a) + " names unknown host vertex " +
                            std::to_string(x));
            if (owner[x] != -1)
                return fail("disjointness: host vertex " + std::to_string(x) + " lies in branch sets " +
                            std::to_string(owner[x]) + " and " + std::to_string(a));
            owner[x] = a;
        }
    }
    for (int a = 0; a < nh; ++a)
        if (!is_connected_subset(G, m.branch[a]))
            return fail("connectivity: branch set of pattern vertex " + std::to_string(a) + " is not connected");

    std::set<Edge> covered;
    for (const auto& r : m.realization) {
        auto [a, b] = r.pattern_edge;
        auto [x, y] = r.host_edge;
        if (!H.has_edge(a, b))
            return fail("realization lists non-edge " + std::to_string(a) + "-" + std::to_string(b) + " of the pattern");
        if (!G.has_edge(x, y))
            return fail("realization of pattern edge " + std::to_string(a) + "-" + std::to_string(b) +
                        " uses non-edge " + std::to_string(x) + "-" + std::to_string(y) + " of the host");
        bool fits = (owner[x] == a && owner[y] == b) || (owner[x] == b && owner[y] == a);
        if (!fits)
            return fail("realization: host edge " + std::to_string(x) + "-" + std::to_string(y) +
                        " does not join branch sets " + std::to_string(a) + " and " + std::to_string(b));
        covered.insert(make_edge(a, b));
    }
    for (auto e : H.edges())
        if (!covered.count(e))
            return fail("realization: pattern edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                        " has no realizing host edge");

    if (static_cast<int>(m.witness.size()) != ng)
        return fail("witness must list a colour (or -1) for every host vertex");
    for (Vertex x = 0; x < ng; ++x) {
        bool in_domain = owner[x] != -1;
        if (in_domain && m.witness[x] != 0 && m.witness[x] != 1)
            return fail("witness domain: host vertex " + std::to_string(x) + " of a branch set is uncoloured");
        if (!in_domain && m.witness[x] != -1)
            return fail("witness domain: host vertex " + std::to_string(x) + " outside all branch sets is coloured");
    }
    for (auto [x, y] : G.edges())
        if (owner[x] != -1 && owner[x] == owner[y] && m.witness[x] == m.witness[y])
            return fail("witness: edge " + std::to_string(x) + "-" + std::to_string(y) + " inside branch set " +
                        std::to_string(owner[x]) + " is monochromatic");
    for (const auto& r : m.realization) {
        auto [x, y] = r.host_edge;
        if (m.witness[x] != m.witness[y])
            return fail("parity: realizing edge " + std::to_string(x) + "-" + std::to_string(y) +
                        " is not monochromatic");
    }
    return {};
}

namespace detail {

// Union-find with parity: parity(x) relative to the root.
class ParityUnionFind {
public:
    explicit ParityUnionFind(int n) : parent_(static_cast<std::size_t>(n)), rel_(static_cast<std::size_t>(n), 0) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    std::pair<int, int> find(int x) {
        int p = 0;
        int r = x;
        while (parent_[r] != r) {
            p ^= rel_[r];
            r = parent_[r];
        }
        // path compression
        int cur = x, acc = p;
        while (parent_[cur] != cur) {
            int nxt = parent_[cur];
            int nacc = acc ^ rel_[cur];
            parent_[cur] = r;
            rel_[cur] = acc;
            cur = nxt;
            acc = nacc;
        }
        return {r, p};
    }
    // Impose parity(x) xor parity(y) == d; false on contradiction.
    bool unite(int x, int y, int d) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) return (px ^ py) == d;
        parent_[rx] = ry;
        rel_[rx] = px ^ py ^ d;
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> rel_;
};

} // namespace detail

// Given branch sets and, per pattern edge, candidate host edges, decide
// whether flips of the per-branch colourings make some candidate of every
// pattern edge monochromatic. If `candidates` is empty all host edges
// between the two branch sets are candidates. Returns a full model or nullopt.
inline std::optional<OddMinorModel> complete_odd_minor_model(const Graph& pattern, const Graph& host,
                                                             std::vector<std::vector<Vertex>> branch,
                                                             const std::vector<std::vector<Edge>>& candidates = {}) {
    const int nh = pattern.num_vertices(), ng = host.num_vertices();
    if (static_cast<int>(branch.size()) != nh) return std::nullopt;
    std::vector<int> owner(static_cast<std::size_t>(ng), -1);
    for (int a = 0; a < nh; ++a) {
        std::sort(branch[a].begin(), branch[a].end());
        if (branch[a].empty() || !is_connected_subset(host, branch[a])) return std::nullopt;
        for (Vertex x : branch[a]) {
            if (owner[x] != -1) return std::nullopt;
            owner[x] = a;
        }
    }
    // Base colouring: a proper colouring of each branch set's induced subgraph.
    std::vector<int> base(static_cast<std::size_t>(ng), -1);
    for (int a = 0; a < nh; ++a) {
        std::vector<char> alive(static_cast<std::size_t>(ng), 0);
        for (Vertex x : branch[a]) alive[x] = 1;
        auto col = two_colouring(host, alive);
        if (!col) return std::nullopt;
        for (Vertex x : branch[a]) base[x] = (*col)[x];
    }
    auto pedges = pattern.edges();
    std::vector<std::vector<Edge>> cand(pedges.size());
    for (std::size_t i = 0; i < pedges.size(); ++i) {
        auto [a, b] = pedges[i];
        if (!candidates.empty()) {
            for (auto [x, y] : candidates[i]) {
                if (owner[x] == b && owner[y] == a) std::swap(x, y);
                if (owner[x] == a && owner[y] == b && host.has_edge(x, y)) cand[i].emplace_back(x, y);
            }
        } else {
            for (Vertex x : branch[a])
                for (Vertex y : host.neighbours(x))
                    if (owner[y] == b) cand[i].emplace_back(x, y);
        }
        if (cand[i].empty()) return std::nullopt;
    }
    // flip[a] xor flip[b] must equal base[x] xor base[y] for the chosen (x,y).
    detail::ParityUnionFind uf(nh);
    for (std::size_t i = 0; i < pedges.size(); ++i) {
        bool has0 = false, has1 = false;
        for (auto [x, y] : cand[i]) {
            if (base[x] != base[y])
                has1 = true;
            else
                has0 = true;
        }
        if (has0 && has1) continue;
        if (!uf.unite(pedges[i].first, pedges[i].second, has1 ? 1 : 0)) return std::nullopt;
    }
    std::vector<int> flip(static_cast<std::size_t>(nh));
    for (int a = 0; a < nh; ++a) flip[a] = uf.find(a).second;
    OddMinorModel m;
    m.pattern = pattern;
    m.host = host;
    m.branch = branch;
    m.witness.assign(static_cast<std::size_t>(ng), -1);
    for (Vertex x = 0; x < ng; ++x)
        if (owner[x] != -1) m.witness[x] = base[x] ^ flip[owner[x]];
    for (std::size_t i = 0; i < pedges.size(); ++i) {
        for (auto [x, y] : cand[i])
            if (m.witness[x] == m.witness[y]) {
                m.realization.push_back({pedges[i], {x, y}});
                break;
            }
    }
    return m;
}

struct OddMinorSearchOptions {
    int max_pattern_vertices = 5;
    int max_host_vertices = 12;
    long long node_budget = 50'000'000;
};

// Exhaustive search for an odd-minor model of h in g over disjoint connected
// branch sets whose induced subgraphs are bipartite.
inline std::optional<OddMinorModel> search_odd_minor(const Graph& h, const Graph& g,
                                                     const OddMinorSearchOptions& opt = {}) {
    const int nh = h.num_vertices(), ng = g.num_vertices();
    if (nh > opt.max_pattern_vertices || ng > opt.max_host_vertices)
        throw InstanceTooLarge("odd-minor search limited to patterns with " +
                               std::to_string(opt.max_pattern_vertices) + " and hosts with " +
                               std::to_string(opt.max_host_vertices) + " vertices");
    if (nh == 0) return complete_odd_minor_model(h, g, {});
    // Candidate branch sets as bitmasks with base colourings.
    struct Cand {
        unsigned mask;
        unsigned colour1; // vertices with base colour 1
    };
    std::vector<Cand> cands;
    for (unsigned mask = 1; mask < (1u << ng); ++mask) {
        std::vector<char> alive(static_cast<std::size_t>(ng), 0);
        std::vector<Vertex> verts;
        for (int x = 0; x < ng; ++x)
            if (mask >> x & 1u) {
                alive[x] = 1;
                verts.push_back(x);
            }
        if (!is_connected_subset(g, verts)) continue;
        auto col = two_colouring(g, alive);
        if (!col) continue;
        unsigned c1 = 0;
        for (Vertex x : verts)
            if ((*col)[x] == 1) c1 |= 1u << x;
        cands.push_back({mask, c1});
    }
    // Order candidates by size so that small models are found first.
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return __builtin_popcount(a.mask) < __builtin_popcount(b.mask);
    });
    std::vector<unsigned> nbr(static_cast<std::size_t>(ng), 0);
    for (auto [x, y] : g.edges()) {
        nbr[x] |= 1u << y;
        nbr[y] |= 1u << x;
    }
    // Available parities between two candidate sets: bit0 = an edge with equal
    // base colours exists, bit1 = one with different base colours exists.
    auto parities = [&](const Cand& A, const Cand& B) {
        int r = 0;
        for (int x = 0; x < ng && r != 3; ++x) {
            if (!(A.mask >> x & 1u)) continue;
            unsigned nb = nbr[x] & B.mask;
            if (!nb) continue;
            int cx = A.colour1 >> x & 1u;
            unsigned same = cx ? (nb & B.colour1) : (nb & ~B.colour1);
            unsigned diff = nb & ~same;
            if (same) r |= 1;
            if (diff) r |= 2;
        }
        return r;
    };

    std::vector<int> chosen(static_cast<std::size_t>(nh), -1);
    long long nodes = 0;
    std::optional<OddMinorModel> result;
    std::function<bool(int, unsigned)> place = [&](int a, unsigned used) -> bool {
        if (++nodes > opt.node_budget)
            throw InstanceTooLarge("odd-minor search exceeded node budget of " + std::to_string(opt.node_budget));
        if (a == nh) {
            std::vector<std::vector<Vertex>> br(static_cast<std::size_t>(nh));
            for (int i = 0; i < nh; ++i)
                for (int x = 0; x < ng; ++x)
                    if (cands[chosen[i]].mask >> x & 1u) br[i].push_back(x);
            result = complete_odd_minor_model(h, g, br);
            return result.has_value();
        }
        for (int ci = 0; ci < static_cast<int>(cands.size()); ++ci) {
            const Cand& c = cands[ci];
            if (c.mask & used) continue;
            // Every pattern edge to an earlier vertex needs a host edge; the
            // parity constraints among placed vertices must stay consistent.
            bool ok = true;
            detail::ParityUnionFind uf(a + 1);
            chosen[a] = ci;
            for (int b = 0; b <= a && ok; ++b)
                for (Vertex d : h.neighbours(b)) {
                    if (d > a || d < b) continue;
                    int p = parities(cands[chosen[b]], cands[chosen[d]]);
                    if (p == 0) {
                        ok = false;
                        break;
                    }
                    if (p == 1 && !uf.unite(b, d, 0)) ok = false;
                    if (p == 2 && !uf.unite(b, d, 1)) ok = false;
                    if (!ok) break;
                }
            if (ok && place(a + 1, used | c.mask)) return true;
        }
        chosen[a] = -1;
        return false;
    };
    place(0, 0);
    return result;
}

// Replace every edge of a minimal edge cut by a path of length two.
inline Graph even_subdivide_cut(const Graph& g, const std::vector<Edge>& cut) {
    if (cut.empty()) throw InvalidInput("not-a-minimal-cut", "empty edge set");
    std::set<Edge> F;
    for (auto [u, v] : cut) {
        if (!g.has_edge(u, v))
            throw InvalidInput("not-a-minimal-cut", "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                                        " is not in the graph");
        F.insert(make_edge(u, v));
    }
    // F is a bond iff removing it splits one component into exactly two
    // pieces with every edge of F running between them.
    Graph rest(g.num_vertices());
    for (auto e : g.edges())
        if (!F.count(e)) rest.add_edge(e.first, e.second);
    std::vector<int> before, after;
    std::vector<char> all(static_cast<std::size_t>(g.num_vertices()), 1);
    int cb = component_labels(g, all, before);
    int ca = component_labels(rest, all, after);
    bool bond = ca == cb + 1;
    for (auto [u, v] : F)
        if (after[u] == after[v]) bond = false;
    if (!bond) throw InvalidInput("not-a-minimal-cut", "edge set is not a minimal edge cut");
    Graph out(g.num_vertices());
    for (auto e : g.edges())
        if (!F.count(e)) out.add_edge(e.first, e.second);
    for (auto [u, v] : F) {
        Vertex mid = out.add_vertex();
        out.add_edge(u, mid);
        out.add_edge(mid, v);
    }
    return out;
}

} // namespace oddwidth
