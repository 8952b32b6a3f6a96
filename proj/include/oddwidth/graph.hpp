#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace oddwidth {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>; // always stored with first < second

inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Finite simple undirected graph on the dense vertex ids 0..n-1.
// Adjacency lists are kept sorted so that every traversal is deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {
        if (n < 0) throw InvalidInput("bad-parameters", "negative vertex count");
    }

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    int num_edges() const { return m_; }

    Vertex add_vertex() {
        adj_.emplace_back();
        return num_vertices() - 1;
    }

    void add_edge(Vertex u, Vertex v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw InvalidInput("invalid-graph", "self-loop at vertex " + std::to_string(u));
        auto& au = adj_[u];
        auto it = std::lower_bound(au.begin(), au.end(), v);
        if (it != au.end() && *it == v)
            throw InvalidInput("invalid-graph",
                               "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        au.insert(it, v);
        auto& av = adj_[v];
        av.insert(std::lower_bound(av.begin(), av.end(), u), u);
        ++m_;
    }

    // Adds the edge unless it is already present; returns whether it was new.
    bool add_edge_if_absent(Vertex u, Vertex v) {
        if (u == v || has_edge(u, v)) return false;
        add_edge(u, v);
        return true;
    }

    void remove_edge(Vertex u, Vertex v) {
        if (!has_edge(u, v))
            throw InvalidInput("invalid-graph",
                               "no edge " + std::to_string(u) + " " + std::to_string(v));
        auto& au = adj_[u];
        au.erase(std::lower_bound(au.begin(), au.end(), v));
        auto& av = adj_[v];
        av.erase(std::lower_bound(av.begin(), av.end(), u));
        --m_;
    }

    bool has_vertex(Vertex v) const { return v >= 0 && v < num_vertices(); }

    bool has_edge(Vertex u, Vertex v) const {
        if (!has_vertex(u) || !has_vertex(v)) return false;
        const auto& au = adj_[u];
        return std::binary_search(au.begin(), au.end(), v);
    }

    const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    // All edges as (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (Vertex u = 0; u < num_vertices(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool operator==(const Graph& o) const { return adj_ == o.adj_; }

    void check_vertex(Vertex v) const {
        if (!has_vertex(v)) throw InvalidInput("unknown-vertex", "vertex " + std::to_string(v) + " out of range");
    }

private:
    std::vector<std::vector<Vertex>> adj_;
    int m_ = 0;
};

inline Graph graph_from_edges(int n, const std::vector<Edge>& es) {
    Graph g(n);
    for (auto [u, v] : es) g.add_edge(u, v);
    return g;
}

// Result of taking an induced subgraph: `to_host[i]` is the host id of local vertex i.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_host;
    std::vector<Vertex> to_local; // host id -> local id or -1
};

// `keep` must be a list of distinct vertices; local ids follow the sorted order.
inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<Vertex> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    InducedSubgraph out;
    out.to_local.assign(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        g.check_vertex(keep[i]);
        out.to_local[keep[i]] = static_cast<int>(i);
    }
    out.to_host = keep;
    out.graph = Graph(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (Vertex w : g.neighbours(keep[i])) {
            int j = out.to_local[w];
            if (j > static_cast<int>(i)) out.graph.add_edge(static_cast<int>(i), j);
        }
    return out;
}

// Induced subgraph on the vertices with mask[v] != 0.
inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<char>& mask) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (mask[v]) keep.push_back(v);
    return induced_subgraph(g, std::move(keep));
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.num_vertices() + b.num_vertices());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(u + a.num_vertices(), v + a.num_vertices());
    return g;
}

// Component label per vertex (labels numbered by smallest vertex), restricted
// to vertices with alive[v] (others get -1). Returns the number of components.
inline int component_labels(const Graph& g, const std::vector<char>& alive, std::vector<int>& label) {
    const int n = g.num_vertices();
    label.assign(static_cast<std::size_t>(n), -1);
    int count = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (!alive[s] || label[s] != -1) continue;
        label[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbours(v))
                if (alive[w] && label[w] == -1) {
                    label[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    return count;
}

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g, const std::vector<char>& alive) {
    std::vector<int> label;
    int c = component_labels(g, alive, label);
    std::vector<std::vector<Vertex>> comps(static_cast<std::size_t>(c));
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (label[v] >= 0) comps[label[v]].push_back(v);
    return comps;
}

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    return connected_components(g, std::vector<char>(static_cast<std::size_t>(g.num_vertices()), 1));
}

inline bool is_connected_subset(const Graph& g, const std::vector<Vertex>& set) {
    if (set.empty()) return false;
    std::vector<char> alive(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v : set) alive[v] = 1;
    std::vector<int> label;
    return component_labels(g, alive, label) == 1;
}

// ---------------------------------------------------------------------------
// Signed multigraphs: loops and parallel edges allowed, labels in Z_2.

struct SignedEdge {
    Vertex u;
    Vertex v;
    int label; // 0 = even, 1 = odd
    bool is_loop() const { return u == v; }
    bool operator==(const SignedEdge&) const = default;
};

class SignedGraph {
public:
    SignedGraph() = default;
    explicit SignedGraph(int n) : n_(n) {
        if (n < 0) throw InvalidInput("bad-parameters", "negative vertex count");
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    // Returns the new edge id.
    int add_edge(Vertex u, Vertex v, int label) {
        check_vertex(u);
        check_vertex(v);
        if (label != 0 && label != 1) throw InvalidInput("invalid-graph", "edge label must be 0 or 1");
        edges_.push_back({u, v, label});
        return num_edges() - 1;
    }

    const SignedEdge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
    const std::vector<SignedEdge>& edges() const { return edges_; }
    void set_label(int id, int label) { edges_.at(static_cast<std::size_t>(id)).label = label & 1; }

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw InvalidInput("unknown-vertex", "vertex " + std::to_string(v) + " out of range");
    }

    bool operator==(const SignedGraph&) const = default;

private:
    int n_ = 0;
    std::vector<SignedEdge> edges_;
};

// ---------------------------------------------------------------------------
// Text formats:  `p graph n m` / `e u v`   and   `p sgraph n m` / `e u v label`.
// Blank lines and lines starting with `c` are comments.

namespace detail {

inline InvalidInput parse_error(int line, const std::string& msg) {
    return InvalidInput("parse-error", "line " + std::to_string(line) + ": " + msg);
}

inline std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline long long parse_int(const std::string& s, int line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw parse_error(line, "expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) throw parse_error(line, "expected an integer, got '" + s + "'");
    return v;
}

} // namespace detail

inline Graph read_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    long long n = 0, m = 0, seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        auto tk = detail::tokens(line);
        if (tk.empty() || tk[0] == "c") continue;
        if (tk[0] == "p") {
            if (have_header) throw detail::parse_error(lineno, "duplicate header");
            if (tk.size() != 4 || tk[1] != "graph") throw detail::parse_error(lineno, "expected 'p graph <n> <m>'");
            n = detail::parse_int(tk[2], lineno);
            m = detail::parse_int(tk[3], lineno);
            if (n < 0 || m < 0) throw detail::parse_error(lineno, "negative size");
            g = Graph(static_cast<int>(n));
            have_header = true;
        } else if (tk[0] == "e") {
            if (!have_header) throw detail::parse_error(lineno, "edge before header");
            if (tk.size() != 3) throw detail::parse_error(lineno, "expected 'e <u> <v>'");
            long long u = detail::parse_int(tk[1], lineno), v = detail::parse_int(tk[2], lineno);
            if (u < 0 || v < 0 || u >= n || v >= n) throw detail::parse_error(lineno, "vertex id out of range");
            if (u == v) throw detail::parse_error(lineno, "self-loop not allowed in a simple graph");
            if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
                throw detail::parse_error(lineno, "duplicate edge");
            g.add_edge(static_cast<int>(u), static_cast<int>(v));
            ++seen;
        } else {
            throw detail::parse_error(lineno, "unknown line type '" + tk[0] + "'");
        }
    }
    if (!have_header) throw detail::parse_error(lineno, "missing 'p graph' header");
    if (seen != m)
        throw detail::parse_error(lineno, "header declares " + std::to_string(m) + " edges, found " +
                                              std::to_string(seen));
    return g;
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    out << "p graph " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

inline std::string format_graph(const Graph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

inline SignedGraph read_signed_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    long long n = 0, m = 0;
    SignedGraph s;
    while (std::getline(in, line)) {
        ++lineno;
        auto tk = detail::tokens(line);
        if (tk.empty() || tk[0] == "c") continue;
        if (tk[0] == "p") {
            if (have_header) throw detail::parse_error(lineno, "duplicate header");
            if (tk.size() != 4 || tk[1] != "sgraph") throw detail::parse_error(lineno, "expected 'p sgraph <n> <m>'");
            n = detail::parse_int(tk[2], lineno);
            m = detail::parse_int(tk[3], lineno);
            if (n < 0 || m < 0) throw detail::parse_error(lineno, "negative size");
            s = SignedGraph(static_cast<int>(n));
            have_header = true;
        } else if (tk[0] == "e") {
            if (!have_header) throw detail::parse_error(lineno, "edge before header");
            if (tk.size() != 4) throw detail::parse_error(lineno, "expected 'e <u> <v> <0|1>'");
            long long u = detail::parse_int(tk[1], lineno), v = detail::parse_int(tk[2], lineno);
            long long lab = detail::parse_int(tk[3], lineno);
            if (u < 0 || v < 0 || u >= n || v >= n) throw detail::parse_error(lineno, "vertex id out of range");
            if (lab != 0 && lab != 1) throw detail::parse_error(lineno, "label must be 0 or 1");
            s.add_edge(static_cast<int>(u), static_cast<int>(v), static_cast<int>(lab));
        } else {
            throw detail::parse_error(lineno, "unknown line type '" + tk[0] + "'");
        }
    }
    if (!have_header) throw detail::parse_error(lineno, "missing 'p sgraph' header");
    if (s.num_edges() != m)
        throw detail::parse_error(lineno, "header declares " + std::to_string(m) + " edges, found " +
                                              std::to_string(s.num_edges()));
    return s;
}

inline SignedGraph parse_signed_graph(const std::string& text) {
    std::istringstream in(text);
    return read_signed_graph(in);
}

inline void write_signed_graph(std::ostream& out, const SignedGraph& s) {
    out << "p sgraph " << s.num_vertices() << ' ' << s.num_edges() << '\n';
    for (const auto& e : s.edges()) out << "e " << e.u << ' ' << e.v << ' ' << e.label << '\n';
}

// Plain DOT dump, used by the CLI's optional export.
inline void write_dot(std::ostream& out, const Graph& g) {
    out << "graph G {\n";
    for (Vertex v = 0; v < g.num_vertices(); ++v) out << "  " << v << ";\n";
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
}

} // namespace oddwidth
