#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bipartite.hpp"
#include "decomposition.hpp"
#include "graph.hpp"
#include "ocp.hpp"
#include "tree_decomposition.hpp"

namespace oddwidth {

// G^Delta: every edge xy of a bipartite graph gets a fresh vertex adjacent to
// exactly x and y. Vertex n + i belongs to the i-th edge in sorted order.
inline Graph g_delta(const Graph& g) {
    if (!is_bipartite(g)) throw InvalidInput("not-bipartite", "G^Delta is defined for bipartite graphs");
    Graph out(g.num_vertices());
    for (auto [x, y] : g.edges()) out.add_edge(x, y);
    for (auto [x, y] : g.edges()) {
        Vertex t = out.add_vertex();
        out.add_edge(x, t);
        out.add_edge(y, t);
    }
    return out;
}

struct OcptwOptions {
    long long node_budget = 200'000'000;
    int max_vertices_small_k = 12; // decide_ocptw_le with k <= 1
    int max_vertices = 8;          // decide_ocptw_le with k >= 2, and exact_ocptw
};

namespace detail {

// Decides whether g has an OCP-tree-decomposition of width <= k.
//
// Whether a vertex set B may serve as a bag does not depend on the rest of
// the decomposition: (OCP3) only refers to the components of g - B, and the
// bag term only to B and its apex set. So the question becomes whether g has
// a tree-decomposition with adhesion <= k all of whose bags are admissible.
//
// Dec(U, S) asks for a rooted decomposition of the part U hanging below an
// adhesion set S (with N(U) inside S) whose root bag is S + B' for a nonempty
// B' inside U. The components of U - B' are distributed into groups, each
// group handed to a child with its own adhesion set S_j, N(group) <= S_j <= bag.
class OcptwSearch {
public:
    using Mask = std::uint32_t;

    OcptwSearch(const Graph& g, int k, const OcptwOptions& opt)
        : g_(g), n_(g.num_vertices()), k_(k), opt_(opt), nb_(static_cast<std::size_t>(n_), 0),
          admissible_(std::size_t{1} << n_, -1), alpha_(std::size_t{1} << n_, 0) {
        for (auto [u, v] : g.edges()) {
            nb_[u] |= Mask{1} << v;
            nb_[v] |= Mask{1} << u;
        }
    }

    // The empty graph has the one-node decomposition with an empty bag.
    bool run() { return n_ == 0 || dec(full(), 0); }

    OcpTreeDecomposition witness() {
        OcpTreeDecomposition d;
        if (n_ > 0) {
            build(full(), 0, d);
        } else {
            d.nodes = {0};
            d.bags[0] = {};
            d.apex[0] = {};
        }
        d.canonicalize();
        return d;
    }

private:
    struct Choice {
        Mask bprime = 0;
        std::vector<std::pair<Mask, Mask>> kids; // (group U_j, adhesion S_j)
    };

    Mask full() const { return n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1; }

    void tick() {
        if (++nodes_ > opt_.node_budget)
            throw InstanceTooLarge("OCP-treewidth search exceeded node budget " + std::to_string(opt_.node_budget),
                                   "node-budget-exceeded");
    }

    Mask closed_neighbourhood_out(Mask set) const {
        Mask out = 0;
        for (Mask r = set; r; r &= r - 1) out |= nb_[std::countr_zero(r)];
        return out & ~set;
    }

    // Components of g[within], as masks in order of their smallest vertex.
    std::vector<Mask> components(Mask within) const {
        std::vector<Mask> out;
        Mask left = within;
        while (left) {
            Mask comp = left & (~left + 1), frontier = comp;
            while (frontier) {
                int x = std::countr_zero(frontier);
                frontier &= frontier - 1;
                Mask nx = nb_[x] & within & ~comp;
                comp |= nx;
                frontier |= nx;
            }
            out.push_back(comp);
            left &= ~comp;
        }
        return out;
    }

    int ocp_capped(Mask set) {
        auto it = ocp_memo_.find(set);
        if (it != ocp_memo_.end()) return it->second;
        std::vector<char> alive(static_cast<std::size_t>(n_), 0);
        for (Mask r = set; r; r &= r - 1) alive[std::countr_zero(r)] = 1;
        OcpOptions o;
        o.cap = k_ + 1;
        int v = ocp_exact(g_, alive, o);
        ocp_memo_.emplace(set, v);
        return v;
    }

    // Whether B admits an apex set giving a bag term <= k; remembers the
    // apex set of least cost (smallest mask on ties).
    bool admissible(Mask bag) {
        auto& slot = admissible_[bag];
        if (slot >= 0) return slot != 0;
        std::vector<Mask> attach;
        for (Mask comp : components(full() & ~bag)) attach.push_back(closed_neighbourhood_out(comp) & bag);
        int best = k_ + 1;
        Mask best_alpha = 0;
        // Enumerate subsets of `bag` in increasing mask order.
        for (Mask a = 0;; a = (a - bag) & bag) {
            int sz = std::popcount(a);
            if (sz <= k_ && sz < best) {
                bool ok = true;
                for (Mask at : attach)
                    if (std::popcount(at & ~a) > 1) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    int c = sz + ocp_capped(bag & ~a);
                    if (c < best) {
                        best = c;
                        best_alpha = a;
                    }
                }
            }
            if (a == bag) break;
        }
        slot = best <= k_ ? 1 : 0;
        alpha_[bag] = best_alpha;
        return slot != 0;
    }

    static std::uint64_t key(Mask u, Mask s) { return (std::uint64_t{u} << 32) | s; }

    bool dec(Mask u, Mask s) {
        auto it = memo_.find(key(u, s));
        if (it != memo_.end()) return it->second;
        tick();
        bool result = false;
        Choice choice;
        for (Mask bp = u; bp && !result; bp = (bp - 1) & u) {
            tick();
            const Mask bag = s | bp;
            if (!admissible(bag)) continue;
            auto comps = components(u & ~bp);
            std::vector<Mask> att;
            bool ok = true;
            for (Mask c : comps) {
                att.push_back(closed_neighbourhood_out(c));
                if (std::popcount(att.back()) > k_) ok = false;
            }
            if (!ok) continue;
            if (auto kids = distribute(comps, att, bag)) {
                result = true;
                choice.bprime = bp;
                choice.kids = std::move(*kids);
            }
        }
        memo_.emplace(key(u, s), result);
        if (result) choices_.emplace(key(u, s), std::move(choice));
        return result;
    }

    // Partitions the components into groups that can each be solved below an
    // adhesion set inside `bag`. Returns the groups with their adhesion sets.
    std::optional<std::vector<std::pair<Mask, Mask>>> distribute(const std::vector<Mask>& comps,
                                                                 const std::vector<Mask>& att, Mask bag) {
        const int c = static_cast<int>(comps.size());
        if (c == 0) return std::vector<std::pair<Mask, Mask>>{};
        const Mask all = (Mask{1} << c) - 1;
        // feasible[m]: the components in m can be grouped; via[m]: the group
        // containing the lowest component of m and its adhesion set.
        std::vector<signed char> feasible(std::size_t{1} << c, -1);
        std::vector<std::pair<Mask, Mask>> via(std::size_t{1} << c, {0, 0});
        feasible[0] = 1;
        for (Mask m = 1; m <= all; ++m) {
            const Mask low = m & (~m + 1);
            const Mask rest = m & ~low;
            feasible[m] = 0;
            // groups = low + any subset of rest
            for (Mask sub = rest;; sub = (sub - 1) & rest) {
                Mask group = low | sub;
                if (feasible[m & ~group] == 1) {
                    Mask gu = 0, gn = 0;
                    for (Mask r = group; r; r &= r - 1) {
                        int i = std::countr_zero(r);
                        gu |= comps[i];
                        gn |= att[i];
                    }
                    if (std::optional<Mask> sj = adhesion_for(gu, gn, bag)) {
                        feasible[m] = 1;
                        via[m] = {gu, *sj};
                        break;
                    }
                }
                if (sub == 0) break;
            }
        }
        if (feasible[all] != 1) return std::nullopt;
        std::vector<std::pair<Mask, Mask>> out;
        for (Mask m = all; m;) {
            out.push_back(via[m]);
            Mask gu = via[m].first;
            for (int i = 0; i < c; ++i)
                if (comps[i] & gu) m &= ~(Mask{1} << i);
        }
        return out;
    }

    std::optional<Mask> adhesion_for(Mask group, Mask need, Mask bag) {
        const int room = k_ - std::popcount(need);
        if (room < 0) return std::nullopt;
        const Mask extra = bag & ~need;
        for (Mask add = 0;; add = (add - extra) & extra) {
            if (std::popcount(add) <= room && dec(group, need | add)) return need | add;
            if (add == extra) break;
        }
        return std::nullopt;
    }

    int build(Mask u, Mask s, OcpTreeDecomposition& d) {
        const Choice& ch = choices_.at(key(u, s));
        const Mask bag = s | ch.bprime;
        admissible(bag);
        VertexSet b, a;
        for (Mask r = bag; r; r &= r - 1) b.push_back(std::countr_zero(r));
        for (Mask r = alpha_[bag]; r; r &= r - 1) a.push_back(std::countr_zero(r));
        int t = d.add_node(b, a);
        for (auto [gu, sj] : ch.kids) {
            int child = build(gu, sj, d);
            d.add_edge(t, child);
        }
        return t;
    }

    const Graph& g_;
    int n_;
    int k_;
    OcptwOptions opt_;
    long long nodes_ = 0;
    std::vector<Mask> nb_;
    std::vector<signed char> admissible_;
    std::vector<Mask> alpha_;
    std::unordered_map<Mask, int> ocp_memo_;
    std::unordered_map<std::uint64_t, bool> memo_;
    std::unordered_map<std::uint64_t, Choice> choices_;
};

inline void check_ocptw_size(const Graph& g, int limit, const char* what) {
    if (g.num_vertices() > limit)
        throw InstanceTooLarge(std::string(what) + " limited to " + std::to_string(limit) + " vertices, got " +
                               std::to_string(g.num_vertices()));
}

} // namespace detail

// Whether OCP-tw(g) <= k; on success `witness` (if given) receives a
// decomposition of width <= k.
inline bool decide_ocptw_le(const Graph& g, int k, const OcptwOptions& opt = {},
                            OcpTreeDecomposition* witness = nullptr) {
    if (k < 0) return false;
    detail::check_ocptw_size(g, k <= 1 ? opt.max_vertices_small_k : opt.max_vertices, "decide_ocptw_le");
    detail::OcptwSearch s(g, k, opt);
    bool ok = s.run();
    if (ok && witness) *witness = s.witness();
    return ok;
}

struct OcptwResult {
    int width = 0;
    OcpTreeDecomposition decomposition;
};

inline OcptwResult exact_ocptw(const Graph& g, const OcptwOptions& opt = {}) {
    detail::check_ocptw_size(g, opt.max_vertices, "exact_ocptw");
    OcptwResult res;
    for (int k = 0;; ++k) {
        if (decide_ocptw_le(g, k, opt, &res.decomposition)) {
            res.width = k;
            return res;
        }
    }
}

// Upper bound from an exact tree-decomposition (small graphs) or a min-fill
// one (larger graphs), turned into a tame OCP-tree-decomposition.
inline OcptwResult ocptw_upper_bound(const Graph& g, int exact_limit = 16) {
    TreeDecomposition td =
        g.num_vertices() <= exact_limit ? exact_tree_decomposition(g) : min_fill_tree_decomposition(g);
    OcptwResult res;
    res.decomposition = from_tree_decomposition(g, td);
    res.width = width(g, res.decomposition);
    return res;
}

} // namespace oddwidth
