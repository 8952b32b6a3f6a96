#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "decomposition.hpp"
#include "mwis.hpp"

namespace oddwidth {

// nullopt stands for minus infinity (X not independent).
using TableEntry = std::optional<Weight>;

// Rooted view of a tame decomposition together with the DP tables.
// For a node t with parent p, B_t = beta(t) & beta(p) and P_t = B_t + alpha(t);
// the root has P_r = alpha(r). Entries are indexed by subsets X of P_t given
// as bitmasks over the sorted list P_t.
struct DpTable {
    int root = -1;
    std::map<int, int> parent; // root maps to -1
    std::map<int, std::vector<int>> children;
    std::map<int, VertexSet> boundary;   // B_t (empty at the root)
    std::map<int, VertexSet> p;          // P_t
    std::map<int, std::vector<TableEntry>> entries;

    static VertexSet subset(const VertexSet& base, std::uint32_t mask) {
        VertexSet out;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask >> i & 1u) out.push_back(base[i]);
        return out;
    }
    static std::uint32_t mask_of(const VertexSet& base, const VertexSet& x) {
        std::uint32_t m = 0;
        for (Vertex v : x) {
            auto it = std::lower_bound(base.begin(), base.end(), v);
            if (it == base.end() || *it != v) throw std::logic_error("vertex outside P_t");
            m |= 1u << (it - base.begin());
        }
        return m;
    }
};

// G+_{t,X}: local vertex i < num_bag_vertices corresponds to host vertex
// to_host[i]; the remaining vertices are the x_i of the children, in order.
struct Gadget {
    WeightedGraph wg;
    std::vector<Vertex> to_host;          // -1 for child vertices
    std::vector<int> child_of;            // child node for x_i, -1 otherwise
    std::vector<std::optional<Vertex>> v_of_child; // v_{d_i} if it survives in the gadget
};

struct DpOptions {
    MwisOptions inner;
    int max_boundary = 20;
};

class DpSolver {
public:
    DpSolver(const WeightedGraph& wg, const OcpTreeDecomposition& d, DpOptions opt = {})
        : wg_(wg), d_(d), opt_(opt) {
        wg_.check();
        auto rep = validate(wg.graph, d);
        if (!rep.ok) throw InvalidInput("invalid-decomposition", rep.axiom + ": " + rep.violation);
        if (!is_tame(d)) throw InvalidInput("not-tame", "the decomposition is not tame");
        root_tree();
    }

    const DpTable& table() const { return table_; }

    // Fills all tables bottom-up.
    void compute() {
        for (int t : post_order_) compute_node(t);
        computed_ = true;
    }

    Gadget build_gadget(int t, const VertexSet& x) const {
        const auto& g = wg_.graph;
        const VertexSet& bag = d_.bag(t);
        const VertexSet& pt = table_.p.at(t);
        std::vector<char> blocked(static_cast<std::size_t>(g.num_vertices()), 0);
        for (Vertex v : pt) blocked[v] = 1;
        for (Vertex v : x) {
            blocked[v] = 1;
            for (Vertex u : g.neighbours(v)) blocked[u] = 1;
        }
        Gadget gd;
        std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
        for (Vertex v : bag)
            if (!blocked[v]) {
                local[v] = static_cast<int>(gd.to_host.size());
                gd.to_host.push_back(v);
            }
        const int nb = static_cast<int>(gd.to_host.size());
        std::vector<Weight> w(static_cast<std::size_t>(nb));
        for (int i = 0; i < nb; ++i) w[i] = wg_.weight[gd.to_host[i]];
        gd.child_of.assign(static_cast<std::size_t>(nb), -1);

        Graph h(nb);
        for (int i = 0; i < nb; ++i)
            for (Vertex u : g.neighbours(gd.to_host[i]))
                if (local[u] > i) h.add_edge(i, local[u]);

        for (int c : table_.children.at(t)) {
            const VertexSet& bc = table_.boundary.at(c);
            std::optional<Vertex> v;
            for (Vertex y : set_difference(bc, d_.alpha(t))) v = y;
            const VertexSet x_b = set_intersection(x, bc);
            const Weight without = best_child(c, x_b) - sum_weight(x_b);
            Vertex xi = h.add_vertex();
            gd.to_host.push_back(-1);
            gd.child_of.push_back(c);
            w.push_back(without);
            if (v && local[*v] >= 0) {
                VertexSet with_set = normalized([&] {
                    VertexSet s = x_b;
                    s.push_back(*v);
                    return s;
                }());
                // v is already weighted w(v); add what the child gains by
                // containing v on top of it.
                const Weight with = best_child(c, with_set) - sum_weight(with_set);
                w[local[*v]] += with;
                h.add_edge(local[*v], xi);
                gd.v_of_child.push_back(v);
            } else {
                gd.v_of_child.push_back(std::nullopt);
            }
        }
        gd.wg = WeightedGraph(std::move(h), std::move(w));
        return gd;
    }

    MwisResult solve() {
        if (!computed_) compute();
        const int r = table_.root;
        MwisResult res;
        if (r < 0) return res;
        const auto& e = table_.entries.at(r);
        std::uint32_t best = 0;
        for (std::uint32_t m = 0; m < e.size(); ++m)
            if (e[m] && (!e[best] || *e[m] > *e[best])) best = m;
        res.value = *e[best];
        std::vector<char> in(static_cast<std::size_t>(wg_.graph.num_vertices()), 0);
        reconstruct(r, DpTable::subset(table_.p.at(r), best), in);
        for (Vertex v = 0; v < wg_.graph.num_vertices(); ++v)
            if (in[v]) res.witness.push_back(v);
        if (!is_independent(wg_.graph, res.witness) || weight_of(wg_, res.witness) != res.value)
            throw std::logic_error("dynamic program produced an inconsistent witness");
        return res;
    }

private:
    void root_tree() {
        if (d_.nodes.empty()) return;
        table_.root = d_.root ? *d_.root : d_.nodes.front();
        auto adj = d_.adjacency();
        std::vector<int> stack{table_.root}, order;
        table_.parent[table_.root] = -1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            order.push_back(t);
            auto& kids = table_.children[t];
            for (int s : adj[t])
                if (s != table_.parent[t]) {
                    table_.parent[s] = t;
                    kids.push_back(s);
                }
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
        }
        post_order_.assign(order.rbegin(), order.rend());
        for (int t : d_.nodes) {
            int par = table_.parent.at(t);
            VertexSet b = par < 0 ? VertexSet{} : set_intersection(d_.bag(t), d_.bag(par));
            VertexSet pt = normalized([&] {
                VertexSet s = b;
                s.insert(s.end(), d_.alpha(t).begin(), d_.alpha(t).end());
                return s;
            }());
            if (static_cast<int>(pt.size()) > opt_.max_boundary)
                throw InstanceTooLarge("boundary set of node " + std::to_string(t) + " has " +
                                       std::to_string(pt.size()) + " vertices");
            table_.boundary[t] = std::move(b);
            table_.p[t] = std::move(pt);
        }
    }

    Weight sum_weight(const VertexSet& s) const {
        Weight x = 0;
        for (Vertex v : s) x += wg_.weight[v];
        return x;
    }

    // max { W_{c,X'} : X' & B_c = target }; the argmax with the smallest mask.
    std::uint32_t best_child_mask(int c, const VertexSet& target) const {
        const VertexSet& pc = table_.p.at(c);
        const VertexSet& bc = table_.boundary.at(c);
        const std::uint32_t bmask = DpTable::mask_of(pc, bc);
        const std::uint32_t want = DpTable::mask_of(pc, target);
        const auto& e = table_.entries.at(c);
        std::optional<std::uint32_t> best;
        for (std::uint32_t m = 0; m < e.size(); ++m) {
            if ((m & bmask) != want || !e[m]) continue;
            if (!best || *e[m] > *e[*best]) best = m;
        }
        if (!best) throw InvalidInput("incomplete-child-table", "no feasible entry for child " + std::to_string(c));
        return *best;
    }

    Weight best_child(int c, const VertexSet& target) const {
        if (!table_.entries.count(c))
            throw InvalidInput("incomplete-child-table", "child " + std::to_string(c) + " not computed");
        return *table_.entries.at(c)[best_child_mask(c, target)];
    }

    void compute_node(int t) {
        const VertexSet& pt = table_.p.at(t);
        const std::uint32_t count = 1u << pt.size();
        std::vector<TableEntry> e(count);
        auto& gw = gadget_witness_[t];
        gw.assign(count, {});
        for (std::uint32_t m = 0; m < count; ++m) {
            VertexSet x = DpTable::subset(pt, m);
            if (!is_independent(wg_.graph, x)) continue;
            Gadget gd = build_gadget(t, x);
            MwisResult r = mwis_bounded_ocp(gd.wg, opt_.inner);
            e[m] = sum_weight(x) + r.value;
            gw[m] = std::move(r.witness);
        }
        table_.entries[t] = std::move(e);
    }

    void reconstruct(int t, const VertexSet& x, std::vector<char>& in) const {
        const std::uint32_t m = DpTable::mask_of(table_.p.at(t), x);
        Gadget gd = build_gadget(t, x);
        for (Vertex v : x) in[v] = 1;
        for (int i : gadget_witness_.at(t)[m])
            if (gd.to_host[i] >= 0) in[gd.to_host[i]] = 1;
        for (int c : table_.children.at(t)) {
            VertexSet target;
            for (Vertex v : table_.boundary.at(c))
                if (in[v]) target.push_back(v);
            reconstruct(c, DpTable::subset(table_.p.at(c), best_child_mask(c, target)), in);
        }
    }

    WeightedGraph wg_;
    const OcpTreeDecomposition& d_;
    DpOptions opt_;
    DpTable table_;
    std::vector<int> post_order_;
    std::map<int, std::vector<std::vector<int>>> gadget_witness_;
    bool computed_ = false;
};

inline MwisResult dp_solve(const WeightedGraph& wg, const OcpTreeDecomposition& d, const DpOptions& opt = {}) {
    DpSolver s(wg, d, opt);
    return s.solve();
}

} // namespace oddwidth
