#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "ocp.hpp"

namespace oddwidth {

using VertexSet = std::vector<Vertex>; // always sorted, no duplicates

inline VertexSet normalized(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Tree T with bag map beta and apex map alpha. Node ids are arbitrary
// integers; `nodes` lists them in increasing order.
struct OcpTreeDecomposition {
    std::vector<int> nodes;
    std::vector<std::pair<int, int>> edges; // (a, b) with a < b
    std::map<int, VertexSet> bags;
    std::map<int, VertexSet> apex;
    std::optional<int> root;

    int add_node(VertexSet bag, VertexSet alpha = {}) {
        int id = nodes.empty() ? 0 : nodes.back() + 1;
        nodes.push_back(id);
        bags[id] = normalized(std::move(bag));
        apex[id] = normalized(std::move(alpha));
        return id;
    }
    void add_edge(int a, int b) { edges.emplace_back(std::min(a, b), std::max(a, b)); }

    const VertexSet& bag(int t) const { return bags.at(t); }
    const VertexSet& alpha(int t) const { return apex.at(t); }

    // Sorts every list so that equal decompositions compare equal.
    void canonicalize() {
        std::sort(nodes.begin(), nodes.end());
        for (auto& [a, b] : edges)
            if (a > b) std::swap(a, b);
        std::sort(edges.begin(), edges.end());
        for (auto& [t, s] : bags) s = normalized(std::move(s));
        for (auto& [t, s] : apex) s = normalized(std::move(s));
    }

    std::map<int, std::vector<int>> adjacency() const {
        std::map<int, std::vector<int>> adj;
        for (int t : nodes) adj[t];
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& [t, l] : adj) std::sort(l.begin(), l.end());
        return adj;
    }

    bool operator==(const OcpTreeDecomposition&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::string axiom;     // "structure", "OCP1", "OCP2" or "OCP3"
    std::string violation; // human readable, names the offending ids

    static ValidationReport fail(std::string axiom, std::string msg) {
        return {false, std::move(axiom), std::move(msg)};
    }
};

namespace detail {

inline std::string set_str(const VertexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

inline ValidationReport check_tree_shape(const OcpTreeDecomposition& d) {
    std::set<int> ids(d.nodes.begin(), d.nodes.end());
    if (ids.size() != d.nodes.size()) return ValidationReport::fail("structure", "duplicate node id");
    for (int t : d.nodes)
        if (!d.bags.count(t) || !d.apex.count(t))
            return ValidationReport::fail("structure", "node " + std::to_string(t) + " lacks a bag or apex set");
    for (auto [a, b] : d.edges)
        if (!ids.count(a) || !ids.count(b) || a == b)
            return ValidationReport::fail("structure",
                                          "bad tree edge " + std::to_string(a) + "-" + std::to_string(b));
    if (d.nodes.empty()) return {};
    if (d.edges.size() + 1 != d.nodes.size())
        return ValidationReport::fail("structure", "tree must have exactly |nodes|-1 edges");
    auto adj = d.adjacency();
    std::set<int> seen{d.nodes.front()};
    std::vector<int> stack{d.nodes.front()};
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int s : adj[t])
            if (seen.insert(s).second) stack.push_back(s);
    }
    if (seen.size() != d.nodes.size()) return ValidationReport::fail("structure", "tree is not connected");
    if (d.root && !ids.count(*d.root)) return ValidationReport::fail("structure", "root is not a node");
    return {};
}

// (OCP1) without the shape checks: coverage, edge coverage, subtree property.
inline ValidationReport check_ocp1(const Graph& g, const OcpTreeDecomposition& d) {
    const int n = g.num_vertices();
    std::vector<std::vector<int>> where(static_cast<std::size_t>(n));
    for (int t : d.nodes)
        for (Vertex v : d.bag(t)) {
            if (!g.has_vertex(v))
                return ValidationReport::fail("structure", "bag of node " + std::to_string(t) +
                                                               " has unknown vertex " + std::to_string(v));
            where[v].push_back(t);
        }
    for (Vertex v = 0; v < n; ++v)
        if (where[v].empty()) return ValidationReport::fail("OCP1", "vertex " + std::to_string(v) + " in no bag");
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (int t : where[u])
            if (std::binary_search(d.bag(t).begin(), d.bag(t).end(), v)) found = true;
        if (!found)
            return ValidationReport::fail("OCP1", "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                                      " in no bag");
    }
    auto adj = d.adjacency();
    for (Vertex v = 0; v < n; ++v) {
        std::set<int> holds(where[v].begin(), where[v].end());
        std::set<int> seen{where[v].front()};
        std::vector<int> stack{where[v].front()};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int s : adj[t])
                if (holds.count(s) && seen.insert(s).second) stack.push_back(s);
        }
        if (seen.size() != holds.size())
            return ValidationReport::fail("OCP1", "nodes containing vertex " + std::to_string(v) +
                                                      " do not form a subtree");
    }
    return {};
}

// (OCP3) for a single bag: a path avoiding alpha that leaves the bag runs
// through a component D of g - bag, and D must then see two distinct bag
// vertices outside alpha. So the axiom holds iff every component of
// g - bag has at most one neighbour in bag \ alpha.
inline std::optional<std::string> ocp3_violation(const Graph& g, const VertexSet& bag, const VertexSet& alpha) {
    const int n = g.num_vertices();
    std::vector<char> alive(static_cast<std::size_t>(n), 1), free_in_bag(static_cast<std::size_t>(n), 0);
    for (Vertex v : bag) alive[v] = 0, free_in_bag[v] = 1;
    for (Vertex v : alpha) free_in_bag[v] = 0;
    for (const auto& comp : connected_components(g, alive)) {
        VertexSet att;
        for (Vertex x : comp)
            for (Vertex y : g.neighbours(x))
                if (free_in_bag[y]) att.push_back(y);
        att = normalized(std::move(att));
        if (att.size() >= 2)
            return "path " + std::to_string(att[0]) + " .. " + std::to_string(att[1]) + " through vertex " +
                   std::to_string(comp.front()) + " leaves the bag " + set_str(bag);
    }
    return std::nullopt;
}

} // namespace detail

inline ValidationReport validate(const Graph& g, const OcpTreeDecomposition& d) {
    if (auto r = detail::check_tree_shape(d); !r.ok) return r;
    if (d.nodes.empty()) {
        if (g.num_vertices() == 0) return {};
        return ValidationReport::fail("OCP1", "empty decomposition of a nonempty graph");
    }
    for (int t : d.nodes) {
        if (!std::is_sorted(d.bag(t).begin(), d.bag(t).end()) || !std::is_sorted(d.alpha(t).begin(), d.alpha(t).end()))
            return ValidationReport::fail("structure", "node " + std::to_string(t) + " has unsorted sets");
    }
    if (auto r = detail::check_ocp1(g, d); !r.ok) return r;
    for (int t : d.nodes)
        if (!is_subset(d.alpha(t), d.bag(t)))
            return ValidationReport::fail("OCP2", "apex set of node " + std::to_string(t) + " not inside its bag");
    for (int t : d.nodes)
        if (auto msg = detail::ocp3_violation(g, d.bag(t), d.alpha(t)))
            return ValidationReport::fail("OCP3", "node " + std::to_string(t) + ": " + *msg);
    return {};
}

inline int adhesion(const OcpTreeDecomposition& d) {
    int best = 0;
    for (auto [a, b] : d.edges)
        best = std::max(best, static_cast<int>(set_intersection(d.bag(a), d.bag(b)).size()));
    return best;
}

// The bag term |alpha(t)| + OCP(G[beta(t) \ alpha(t)]).
inline int bag_width(const Graph& g, const VertexSet& bag, const VertexSet& alpha, const OcpOptions& opt = {}) {
    std::vector<char> alive(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v : set_difference(bag, alpha)) alive[v] = 1;
    OcpOptions o = opt;
    o.vertex_limit = std::max(o.vertex_limit, g.num_vertices());
    return static_cast<int>(alpha.size()) + ocp_exact(g, alive, o);
}

inline int width(const Graph& g, const OcpTreeDecomposition& d, const OcpOptions& opt = {}) {
    auto rep = validate(g, d);
    if (!rep.ok) throw InvalidInput("invalid-decomposition", rep.axiom + ": " + rep.violation);
    int w = adhesion(d);
    for (int t : d.nodes) w = std::max(w, bag_width(g, d.bag(t), d.alpha(t), opt));
    return w;
}

// Tame: |(beta(s) cap beta(t)) \ alpha(s)| <= 1 for every tree edge, read in
// both orientations.
inline bool is_tame(const OcpTreeDecomposition& d) {
    for (auto [a, b] : d.edges) {
        VertexSet common = set_intersection(d.bag(a), d.bag(b));
        if (set_difference(common, d.alpha(a)).size() > 1) return false;
        if (set_difference(common, d.alpha(b)).size() > 1) return false;
    }
    return true;
}

// Plain tree-decomposition with dense node ids 0..bags.size()-1.
struct TreeDecomposition {
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;

    int width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }
};

inline OcpTreeDecomposition as_ocp_decomposition(const TreeDecomposition& td) {
    OcpTreeDecomposition d;
    for (const auto& b : td.bags) d.add_node(b);
    for (auto [a, b] : td.edges) d.add_edge(a, b);
    d.canonicalize();
    return d;
}

// Every bag keeps only its smallest vertex outside the apex set; the bag term
// becomes |bag| - 1, and adhesions are at most |bag| - 1 as no bag is
// contained in a neighbouring one.
inline OcpTreeDecomposition from_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    OcpTreeDecomposition d = as_ocp_decomposition(td);
    auto shape = detail::check_tree_shape(d);
    if (!shape.ok) throw InvalidInput("invalid-input-decomposition", shape.violation);
    if (d.nodes.empty() && g.num_vertices() > 0)
        throw InvalidInput("invalid-input-decomposition", "empty decomposition");
    if (!d.nodes.empty()) {
        auto rep = detail::check_ocp1(g, d);
        if (!rep.ok) throw InvalidInput("invalid-input-decomposition", rep.violation);
    }
    for (auto [a, b] : d.edges)
        if (is_subset(d.bag(a), d.bag(b)) || is_subset(d.bag(b), d.bag(a)))
            throw InvalidInput("invalid-input-decomposition", "bag of node " + std::to_string(a) +
                                                                  " or " + std::to_string(b) +
                                                                  " is contained in its neighbour");
    for (int t : d.nodes) {
        const auto& bag = d.bag(t);
        d.apex[t] = bag.empty() ? VertexSet{} : VertexSet(bag.begin() + 1, bag.end());
    }
    return d;
}

} // namespace oddwidth
