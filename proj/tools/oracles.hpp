#pragma once

// Independent reference implementations and random instance generators used
// by the unit tests, the acceptance suite and `oddwidth selftest`. The
// oracles deliberately share no code with the library algorithms they check:
// they enumerate subsets, permutations or boxes directly.

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "oddwidth/oddwidth.hpp"

namespace oddwidth::oracle {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// ---------------------------------------------------------------------------
// Graph oracles

inline std::vector<std::uint32_t> neighbour_masks(const Graph& g) {
    if (g.num_vertices() > 30) throw std::invalid_argument("oracle limited to 30 vertices");
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(g.num_vertices()), 0);
    for (auto [u, v] : g.edges()) {
        nb[u] |= 1u << v;
        nb[v] |= 1u << u;
    }
    return nb;
}

// Tries all 2-colourings.
inline bool bipartite_by_colourings(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 22) throw std::invalid_argument("oracle limited to 22 vertices");
    const auto es = g.edges();
    for (std::uint32_t c = 0; c < (1u << n); ++c) {
        bool ok = true;
        for (auto [u, v] : es)
            if (((c >> u) & 1u) == ((c >> v) & 1u)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

// nonbip[S] for every vertex subset S (by 2-colouring propagation per set).
inline std::vector<char> non_bipartite_subsets(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 20) throw std::invalid_argument("oracle limited to 20 vertices");
    auto nb = neighbour_masks(g);
    std::vector<char> out(std::size_t{1} << n, 0);
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        // an odd cycle inside s is an odd cycle inside every superset
        bool odd = false;
        for (int v = 0; v < n && !odd; ++v)
            if ((s >> v & 1u) && out[s & ~(1u << v)]) odd = true;
        if (!odd) {
            std::vector<int> col(static_cast<std::size_t>(n), -1);
            for (int r = 0; r < n && !odd; ++r) {
                if (!(s >> r & 1u) || col[r] >= 0) continue;
                col[r] = 0;
                std::vector<int> st{r};
                while (!st.empty() && !odd) {
                    int x = st.back();
                    st.pop_back();
                    for (std::uint32_t m = nb[x] & s; m; m &= m - 1) {
                        int y = std::countr_zero(m);
                        if (col[y] < 0) {
                            col[y] = 1 - col[x];
                            st.push_back(y);
                        } else if (col[y] == col[x]) {
                            odd = true;
                        }
                    }
                }
            }
        }
        out[s] = odd ? 1 : 0;
    }
    return out;
}

// Odd cycle packing number as the largest number of disjoint vertex sets
// that each induce a non-bipartite graph (3^n subset recursion).
inline int ocp_by_subsets(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 16) throw std::invalid_argument("oracle limited to 16 vertices");
    auto nonbip = non_bipartite_subsets(g);
    std::vector<int> f(std::size_t{1} << n, 0);
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
        const std::uint32_t low = m & (~m + 1);
        int best = f[m & ~low];
        const std::uint32_t rest = m & ~low;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            std::uint32_t s = sub | low;
            if (nonbip[s]) best = std::max(best, 1 + f[m & ~s]);
            if (sub == 0) break;
        }
        f[m] = best;
    }
    return f[(1u << n) - 1];
}

// Treewidth as the minimum over all elimination orderings (n <= 9).
inline int treewidth_by_permutations(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 9) throw std::invalid_argument("oracle limited to 9 vertices");
    if (n == 0) return -1;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    auto base = neighbour_masks(g);
    int best = n - 1;
    do {
        auto nb = base;
        std::uint32_t gone = 0;
        int w = 0;
        for (int v : perm) {
            std::uint32_t later = nb[v] & ~gone & ~(1u << v);
            w = std::max(w, std::popcount(later));
            for (std::uint32_t m = later; m; m &= m - 1) nb[std::countr_zero(m)] |= later & ~(1u << std::countr_zero(m));
            gone |= 1u << v;
            if (w >= best) break;
        }
        best = std::min(best, w);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// MWIS by scanning all vertex subsets.
inline Weight mwis_by_subsets(const WeightedGraph& wg) {
    const int n = wg.graph.num_vertices();
    if (n > 22) throw std::invalid_argument("oracle limited to 22 vertices");
    auto nb = neighbour_masks(wg.graph);
    Weight best = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        Weight w = 0;
        bool ok = true;
        for (std::uint32_t m = s; m; m &= m - 1) {
            int v = std::countr_zero(m);
            if (nb[v] & s) {
                ok = false;
                break;
            }
            w += wg.weight[v];
        }
        if (ok) best = std::max(best, w);
    }
    return best;
}

// Table entry W_{t,X} straight from the definition: the best independent
// set of the subgraph induced by the bags below t that meets P_t exactly in X.
inline std::optional<Weight> table_entry_by_subsets(const WeightedGraph& wg, const VertexSet& below,
                                                    const VertexSet& pt, const VertexSet& x) {
    std::uint32_t allowed = 0, pmask = 0, xmask = 0;
    for (Vertex v : below) allowed |= 1u << v;
    for (Vertex v : pt) pmask |= 1u << v;
    for (Vertex v : x) xmask |= 1u << v;
    auto nb = neighbour_masks(wg.graph);
    std::optional<Weight> best;
    for (std::uint32_t s = allowed;; s = (s - 1) & allowed) {
        if ((s & pmask) == xmask) {
            bool ok = true;
            Weight w = 0;
            for (std::uint32_t m = s; m; m &= m - 1) {
                int v = std::countr_zero(m);
                if (nb[v] & s) {
                    ok = false;
                    break;
                }
                w += wg.weight[v];
            }
            if (ok && (!best || w > *best)) best = w;
        }
        if (s == 0) break;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Matrix and program oracles

// Leibniz expansion over all permutations.
inline mpz_class det_by_permutations(const IntMatrix& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    mpz_class total = 0;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inv += p[i] > p[j] ? 1 : 0;
        mpz_class prod = inv % 2 ? -1 : 1;
        for (int i = 0; i < n && sgn(prod) != 0; ++i) prod *= a[i][p[i]];
        total += prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// Plain enumeration of every point of the (finite) box.
inline IlpResult ilp_by_enumeration(const IntegerProgram& ip, double max_points = 2e6) {
    double pts = 1;
    for (int j = 0; j < ip.n; ++j) {
        if (!ip.lo[j] || !ip.hi[j]) throw std::invalid_argument("enumeration needs finite bounds");
        if (*ip.lo[j] > *ip.hi[j]) return {};
        pts *= mpz_class(*ip.hi[j] - *ip.lo[j] + 1).get_d();
    }
    if (pts > max_points) throw std::invalid_argument("box too large for enumeration");
    IlpResult best;
    std::vector<mpz_class> x(static_cast<std::size_t>(ip.n));
    for (int j = 0; j < ip.n; ++j) x[j] = *ip.lo[j];
    while (true) {
        if (is_feasible(ip, x)) {
            mpz_class v = objective_value(ip, x);
            if (best.status != IpStatus::optimal || v > best.value) {
                best.status = IpStatus::optimal;
                best.value = v;
                best.x = x;
            }
        }
        int j = ip.n - 1;
        while (j >= 0 && x[j] == *ip.hi[j]) {
            x[j] = *ip.lo[j];
            --j;
        }
        if (j < 0) break;
        x[j] += 1;
    }
    return best;
}

// LP optimum over a nonempty polytope by enumerating all candidate vertices:
// every choice of n linearly independent tight constraints (rows or bounds).
// Returns nullopt if the polytope is empty. Bounds must all be finite.
inline std::optional<mpq_class> lp_by_vertices(const LinearProgram& lp) {
    const int n = lp.n;
    struct Con {
        std::vector<mpq_class> a;
        Relation rel;
        mpq_class b;
    };
    std::vector<Con> cons;
    for (const auto& r : lp.rows) {
        Con c{std::vector<mpq_class>(static_cast<std::size_t>(n), 0), r.rel, r.rhs};
        for (const auto& [j, v] : r.coef) c.a[j] += v;
        cons.push_back(std::move(c));
    }
    for (int j = 0; j < n; ++j) {
        if (!lp.lo[j] || !lp.hi[j]) throw std::invalid_argument("vertex enumeration needs finite bounds");
        Con lo{std::vector<mpq_class>(static_cast<std::size_t>(n), 0), Relation::ge, *lp.lo[j]};
        lo.a[j] = 1;
        Con hi{std::vector<mpq_class>(static_cast<std::size_t>(n), 0), Relation::le, *lp.hi[j]};
        hi.a[j] = 1;
        cons.push_back(std::move(lo));
        cons.push_back(std::move(hi));
    }
    const int m = static_cast<int>(cons.size());
    if (m > 24) throw std::invalid_argument("too many constraints for vertex enumeration");
    auto feasible = [&](const std::vector<mpq_class>& x) {
        for (const auto& c : cons) {
            mpq_class s = 0;
            for (int j = 0; j < n; ++j) s += c.a[j] * x[j];
            if (c.rel == Relation::le && s > c.b) return false;
            if (c.rel == Relation::ge && s < c.b) return false;
            if (c.rel == Relation::eq && s != c.b) return false;
        }
        return true;
    };
    std::optional<mpq_class> best;
    if (n == 0) {
        if (feasible({})) best = 0;
        return best;
    }
    for (std::uint32_t s = 0; s < (1u << m); ++s) {
        if (std::popcount(s) != n) continue;
        // Gauss-Jordan on the n x (n+1) system
        std::vector<std::vector<mpq_class>> M;
        for (int i = 0; i < m; ++i)
            if (s >> i & 1u) {
                auto row = cons[i].a;
                row.push_back(cons[i].b);
                M.push_back(std::move(row));
            }
        bool singular = false;
        for (int c = 0; c < n && !singular; ++c) {
            int p = c;
            while (p < n && sgn(M[p][c]) == 0) ++p;
            if (p == n) {
                singular = true;
                break;
            }
            std::swap(M[p], M[c]);
            for (int i = 0; i < n; ++i) {
                if (i == c || sgn(M[i][c]) == 0) continue;
                mpq_class f = M[i][c] / M[c][c];
                for (int k = c; k <= n; ++k) M[i][k] -= f * M[c][k];
            }
        }
        if (singular) continue;
        std::vector<mpq_class> x(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) x[j] = M[j][n] / M[j][j];
        if (!feasible(x)) continue;
        mpq_class v = 0;
        for (int j = 0; j < n; ++j) v += lp.obj[j] * x[j];
        if (!lp.maximize) v = -v;
        if (!best || v > *best) best = v;
    }
    if (best && !lp.maximize) best = -*best;
    return best;
}

// ---------------------------------------------------------------------------
// Generators

inline Graph random_graph(Rng& rng, int n, double p) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng, p)) g.add_edge(u, v);
    return g;
}

inline std::vector<Weight> random_weights(Rng& rng, int n, int max_weight) {
    std::vector<Weight> w(static_cast<std::size_t>(n));
    for (auto& x : w) x = uniform(rng, 0, max_weight);
    return w;
}

// One odd-minor step: delete a vertex, delete an edge, or contract a bond
// (all edges of a minimal cut between two connected sides).
inline Graph random_odd_minor_step(Rng& rng, const Graph& g) {
    const int n = g.num_vertices();
    std::vector<Edge> es = g.edges();
    for (int attempt = 0; attempt < 4; ++attempt) {
        int kind = uniform(rng, 0, 2);
        if (kind == 0 && n > 0) {
            Vertex x = uniform(rng, 0, n - 1);
            std::vector<Vertex> keep;
            for (Vertex v = 0; v < n; ++v)
                if (v != x) keep.push_back(v);
            return induced_subgraph(g, keep).graph;
        }
        if (kind == 1 && !es.empty()) {
            Edge e = es[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(es.size()) - 1))];
            Graph h(n);
            for (auto f : es)
                if (f != e) h.add_edge(f.first, f.second);
            return h;
        }
        if (kind == 2 && !es.empty()) {
            auto nb = neighbour_masks(g);
            auto connected = [&](std::uint32_t s) {
                if (!s) return false;
                std::uint32_t seen = s & (~s + 1), fr = seen;
                while (fr) {
                    int x = std::countr_zero(fr);
                    fr &= fr - 1;
                    std::uint32_t nx = nb[x] & s & ~seen;
                    seen |= nx;
                    fr |= nx;
                }
                return seen == s;
            };
            // sides S, C \ S of a component C, both connected
            std::vector<std::pair<std::uint32_t, std::uint32_t>> bonds;
            for (const auto& comp : connected_components(g)) {
                std::uint32_t c = 0;
                for (Vertex v : comp) c |= 1u << v;
                for (std::uint32_t s = (c - 1) & c; s; s = (s - 1) & c)
                    if ((s & (c & ~(c - 1))) && connected(s) && connected(c & ~s)) bonds.emplace_back(s, c & ~s);
            }
            if (bonds.empty()) continue;
            auto [s, t] = bonds[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(bonds.size()) - 1))];
            // union-find over the endpoints of the cut edges
            std::vector<int> parent(static_cast<std::size_t>(n));
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            for (auto [u, v] : es)
                if (((s >> u & 1u) && (t >> v & 1u)) || ((t >> u & 1u) && (s >> v & 1u))) parent[find(u)] = find(v);
            std::vector<int> id(static_cast<std::size_t>(n), -1);
            int k = 0;
            for (int v = 0; v < n; ++v)
                if (find(v) == v) id[v] = k++;
            Graph h(k);
            for (auto [u, v] : es) {
                int a = id[find(u)], b = id[find(v)];
                if (a != b) h.add_edge_if_absent(a, b);
            }
            return h;
        }
    }
    if (n > 0) {
        std::vector<Vertex> keep;
        for (Vertex v = 1; v < n; ++v) keep.push_back(v);
        return induced_subgraph(g, keep).graph;
    }
    return g;
}

// A random tame OCP-tree-decomposition: bags from a random elimination order
// (or an exact tree-decomposition), each apex set the whole bag or the bag
// minus one random vertex, random root; or the block tree with empty apex
// sets. Both shapes satisfy the axioms and tameness by construction.
inline OcpTreeDecomposition random_tame_decomposition(Rng& rng, const Graph& g) {
    const int n = g.num_vertices();
    OcpTreeDecomposition d;
    const int shape = uniform(rng, 0, 3);
    if (shape == 3) {
        auto bd = blocks(g);
        for (const auto& b : bd.blocks) d.add_node(b);
        for (auto [a, b] : bd.tree) d.add_edge(a, b);
        // join the block forest into a tree
        std::vector<int> comp(bd.blocks.size());
        std::iota(comp.begin(), comp.end(), 0);
        auto find = [&](int x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (auto [a, b] : bd.tree) comp[find(a)] = find(b);
        for (std::size_t i = 1; i < bd.blocks.size(); ++i)
            if (find(static_cast<int>(i)) != find(0)) {
                d.add_edge(0, static_cast<int>(i));
                comp[find(static_cast<int>(i))] = find(0);
            }
    } else {
        TreeDecomposition td;
        if (shape == 0 && n <= 14) {
            td = exact_tree_decomposition(g);
        } else {
            std::vector<Vertex> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            td = compress(decomposition_from_order(g, order));
        }
        for (const auto& b : td.bags) {
            VertexSet alpha = b;
            if (!b.empty() && coin(rng, 0.75)) alpha.erase(alpha.begin() + uniform(rng, 0, static_cast<int>(b.size()) - 1));
            d.add_node(b, alpha);
        }
        for (auto [a, b] : td.edges) d.add_edge(a, b);
    }
    if (!d.nodes.empty()) d.root = d.nodes[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(d.nodes.size()) - 1))];
    d.canonicalize();
    return d;
}

struct IpProfile {
    int max_columns = 8;
    int max_rows = 12;
    int bound_range = 3;  // bounds inside [-r, r]
    int rhs_range = 3;
    int weight_range = 5;
    double eq_probability = 0.15;
};

// Random bounded program with entries in {-1, 0, 1} and at most two per row.
// Half of the draws use all-positive rows with small right-hand sides and
// nonnegative weights: those are the ones whose LP optima tend to be
// fractional, so that the MWIS stage has something to do.
inline IntegerProgram random_ip(Rng& rng, const IpProfile& p = {}) {
    const int n = uniform(rng, 1, p.max_columns);
    const int m = uniform(rng, 0, p.max_rows);
    const bool packing = coin(rng);
    IntegerProgram ip(n);
    for (int j = 0; j < n; ++j) {
        int a = uniform(rng, -p.bound_range, p.bound_range), b = uniform(rng, -p.bound_range, p.bound_range);
        if (packing) b = a + uniform(rng, 1, 3);
        ip.lo[j] = std::min(a, b);
        ip.hi[j] = std::max(a, b);
        ip.w[j] = uniform(rng, packing ? 0 : -p.weight_range, p.weight_range);
    }
    for (int i = 0; i < m; ++i) {
        const int entries = coin(rng, 0.85) || n == 1 ? std::min(2, n) : uniform(rng, 0, 1);
        std::vector<std::pair<int, mpz_class>> coef;
        std::vector<int> cols(static_cast<std::size_t>(n));
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(cols.begin(), cols.end(), rng);
        for (int e = 0; e < entries; ++e) coef.emplace_back(cols[e], packing || coin(rng) ? 1 : -1);
        mpz_class rhs = uniform(rng, -p.rhs_range, p.rhs_range);
        if (packing) {
            // just above the row's value at the lower bounds, so the row binds
            rhs = uniform(rng, 1, 2);
            for (const auto& [j, c] : coef) rhs += *ip.lo[static_cast<std::size_t>(j)];
        }
        ip.add_row(std::move(coef), coin(rng, p.eq_probability) ? Relation::eq : Relation::le, rhs);
    }
    return ip;
}

// max sum w_v x_v  s.t.  x_u + x_v <= 1 per edge, 0 <= x <= 1.
inline IntegerProgram mwis_as_ip(const WeightedGraph& wg) {
    const int n = wg.graph.num_vertices();
    IntegerProgram ip(n);
    for (int v = 0; v < n; ++v) {
        ip.lo[v] = 0;
        ip.hi[v] = 1;
        ip.w[v] = static_cast<long>(wg.weight[v]);
    }
    for (auto [u, v] : wg.graph.edges()) ip.add_row({{u, 1}, {v, 1}}, Relation::le, 1);
    return ip;
}

// Random integer matrix with at most two nonzero entries per row.
inline IntMatrix random_two_per_row_matrix(Rng& rng, int max_rows = 6, int max_cols = 6, int range = 3) {
    const int m = uniform(rng, 1, max_rows), n = uniform(rng, 1, max_cols);
    IntMatrix a(static_cast<std::size_t>(m), std::vector<mpz_class>(static_cast<std::size_t>(n), 0));
    for (auto& row : a) {
        const int entries = uniform(rng, 0, std::min(2, n));
        std::vector<int> cols(static_cast<std::size_t>(n));
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(cols.begin(), cols.end(), rng);
        for (int e = 0; e < entries; ++e) {
            int v = 0;
            while (v == 0) v = uniform(rng, -range, range);
            row[cols[e]] = v;
        }
    }
    return a;
}

// Edge-vertex incidence matrix of a cycle of length l whose number of
// same-sign rows is odd (so the cycle is odd in the signed sense).
inline IntMatrix odd_cycle_incidence(Rng& rng, int l) {
    IntMatrix a(static_cast<std::size_t>(l), std::vector<mpz_class>(static_cast<std::size_t>(l), 0));
    int odd_rows = 0;
    for (int i = 0; i < l; ++i) {
        const bool same = i == l - 1 ? odd_rows % 2 == 0 : coin(rng);
        odd_rows += same ? 1 : 0;
        const int s = coin(rng) ? 1 : -1;
        a[i][i] = s;
        a[i][(i + 1) % l] = same ? s : -s;
    }
    return a;
}

} // namespace oddwidth::oracle
