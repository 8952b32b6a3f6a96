#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "decomposition.hpp"
#include "graph.hpp"
#include "grids.hpp"
#include "ocp.hpp"

namespace oddwidth {

struct OcpBramble {
    std::vector<VertexSet> elements;
    int order = 0;
};

struct BrambleReport {
    bool ok = true;
    std::string violation;
};

struct BrambleOptions {
    long long hitting_budget = 20'000'000; // number of candidate hitting sets
    OcpOptions ocp;
};

namespace detail {

inline long long binomial_capped(int n, int r, long long cap) {
    if (r < 0 || r > n) return 0;
    long long c = 1;
    for (int i = 1; i <= r; ++i) {
        c = c * (n - r + i) / i;
        if (c > cap) return cap + 1;
    }
    return c;
}

} // namespace detail

// Checks the three bramble axioms exactly. Hitting: a set of size < k that
// meets every element can be padded to size exactly min(k-1, n), so only
// those sets are enumerated.
inline BrambleReport verify_bramble(const Graph& g, const OcpBramble& b, const BrambleOptions& opt = {}) {
    const int n = g.num_vertices();
    const int k = b.order;
    if (k < 1) return {false, "order must be at least 1"};
    if (b.elements.empty()) return {false, "bramble has no elements"};
    const int hit_size = std::min(k - 1, n);
    if (detail::binomial_capped(n, hit_size, opt.hitting_budget) > opt.hitting_budget)
        throw InstanceTooLarge("hitting check needs C(" + std::to_string(n) + "," + std::to_string(hit_size) +
                               ") sets, above budget " + std::to_string(opt.hitting_budget));

    std::vector<VertexSet> els;
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
        VertexSet e = normalized(b.elements[i]);
        for (Vertex v : e)
            if (!g.has_vertex(v))
                return {false, "element " + std::to_string(i) + " has unknown vertex " + std::to_string(v)};
        els.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = i + 1; j < els.size(); ++j)
            if (set_intersection(els[i], els[j]).empty())
                return {false, "elements " + std::to_string(i) + " and " + std::to_string(j) + " are disjoint"};
    for (std::size_t i = 0; i < els.size(); ++i) {
        if (!induces_two_connected(g, els[i]))
            return {false, "element " + std::to_string(i) + " does not induce a 2-connected subgraph"};
        std::vector<char> alive(static_cast<std::size_t>(n), 0);
        for (Vertex v : els[i]) alive[v] = 1;
        OcpOptions o = opt.ocp;
        o.cap = k;
        o.vertex_limit = std::max(o.vertex_limit, n);
        if (ocp_exact(g, alive, o) < k)
            return {false, "element " + std::to_string(i) + " has fewer than " + std::to_string(k) +
                               " disjoint odd cycles"};
    }

    // membership[v] = bitset of elements containing v (as a vector<char> row)
    const std::size_t m = els.size();
    std::vector<std::vector<char>> contains(static_cast<std::size_t>(n), std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (Vertex v : els[i]) contains[v][i] = 1;
    std::vector<int> pick(static_cast<std::size_t>(hit_size));
    for (int i = 0; i < hit_size; ++i) pick[i] = i;
    std::vector<int> hits(m, 0);
    while (true) {
        std::fill(hits.begin(), hits.end(), 0);
        for (int v : pick)
            for (std::size_t i = 0; i < m; ++i) hits[i] |= contains[v][i];
        if (std::all_of(hits.begin(), hits.end(), [](int h) { return h != 0; })) {
            std::string s;
            for (int v : pick) s += (s.empty() ? "" : ",") + std::to_string(v);
            return {false, "the set {" + s + "} of size " + std::to_string(hit_size) + " meets every element"};
        }
        int i = hit_size - 1;
        while (i >= 0 && pick[i] == n - hit_size + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < hit_size; ++j) pick[j] = pick[j - 1] + 1;
    }
    return {};
}

struct BrambleInstance {
    ParityGrid host;
    OcpBramble bramble;
};

// The order-k bramble in the parity handle of order K = k^2. Concentric
// cycles are numbered 1..K from the cycle carrying the parity breaking edges
// inwards, positions 1..4K so that the parity breaking edges join positions
// 2l and 4K+2-2l on cycle 1. W' drops the radial edges between cycles j and
// j+1 at positions i with i+j odd; Q'_l is the zig-zag path through
// positions 2l-1, 2l, 4K+1-2l, 4K+2-2l closed by the l-th parity breaking
// edge. Element B_i^j is the block of the host induced on cycles
// (i-1)k+1..ik and paths Q_{(j-1)k+1}..Q_{jk} that contains cycle ik.
inline BrambleInstance bramble_from_parity_handle(int k, int max_k = 2) {
    if (k < 1) throw InvalidInput("bad-parameters", "bramble order must be at least 1");
    if (k > max_k)
        throw InstanceTooLarge("bramble construction limited to order " + std::to_string(max_k) + ", got " +
                               std::to_string(k));
    const int K = k * k, L = 4 * K;
    BrambleInstance out;
    out.host = gen_parity_handle(K);
    const Graph& g = out.host.graph;
    // v(i, j): position i in [1, 4K], cycle j in [1, K]
    auto v = [&](int i, int j) {
        int p = ((i - 2) % L + L) % L;
        int c = K - j;
        return c * L + p;
    };

    std::vector<VertexSet> cycle(static_cast<std::size_t>(K + 1));
    for (int j = 1; j <= K; ++j)
        for (int i = 1; i <= L; ++i) cycle[j].push_back(v(i, j));
    std::vector<VertexSet> q(static_cast<std::size_t>(K + 1));
    for (int l = 1; l <= K; ++l) {
        std::vector<Edge> es;
        es.push_back(make_edge(v(2 * l, 1), v(L + 2 - 2 * l, 1)));
        for (int j = 1; j <= K; ++j) {
            es.push_back(make_edge(v(2 * l - 1, j), v(2 * l, j)));
            es.push_back(make_edge(v(L + 1 - 2 * l, j), v(L + 2 - 2 * l, j)));
        }
        for (int i : {2 * l - 1, 2 * l, L + 1 - 2 * l, L + 2 - 2 * l})
            for (int j = 1; j < K; ++j)
                if ((i + j) % 2 == 0) es.push_back(make_edge(v(i, j), v(i, j + 1)));
        VertexSet vs;
        for (auto [a, b] : es) {
            if (!g.has_edge(a, b)) throw std::logic_error("parity path uses a non-edge");
            vs.push_back(a);
            vs.push_back(b);
        }
        q[l] = normalized(vs);
    }

    out.bramble.order = k;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            VertexSet u;
            for (int a = 1; a <= k; ++a) u.insert(u.end(), cycle[(i - 1) * k + a].begin(), cycle[(i - 1) * k + a].end());
            for (int b = 1; b <= k; ++b) u.insert(u.end(), q[(j - 1) * k + b].begin(), q[(j - 1) * k + b].end());
            u = normalized(u);
            auto sub = induced_subgraph(g, u);
            auto bd = blocks(sub.graph);
            VertexSet anchor = normalized(cycle[i * k]);
            VertexSet element;
            for (const auto& blk : bd.blocks) {
                VertexSet host_ids;
                for (Vertex x : blk) host_ids.push_back(sub.to_host[x]);
                host_ids = normalized(host_ids);
                if (is_subset(anchor, host_ids)) {
                    element = host_ids;
                    break;
                }
            }
            if (element.empty()) throw std::logic_error("no block contains the anchor cycle");
            out.bramble.elements.push_back(std::move(element));
        }
    return out;
}

// Text format: `k <order>` then one `b <v1> <v2> ...` line per element.
inline void write_bramble(std::ostream& out, const OcpBramble& b) {
    out << "k " << b.order << '\n';
    for (const auto& e : b.elements) {
        out << 'b';
        for (Vertex v : e) out << ' ' << v;
        out << '\n';
    }
}

inline OcpBramble read_bramble(std::istream& in) {
    OcpBramble b;
    std::string line;
    int lineno = 0;
    bool have_order = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = detail::tokens(line);
        if (t.empty() || t[0] == "c") continue;
        if (t[0] == "k") {
            if (t.size() != 2) throw detail::parse_error(lineno, "expected 'k <order>'");
            b.order = static_cast<int>(detail::parse_int(t[1], lineno));
            have_order = true;
        } else if (t[0] == "b") {
            VertexSet e;
            for (std::size_t i = 1; i < t.size(); ++i) e.push_back(static_cast<Vertex>(detail::parse_int(t[i], lineno)));
            b.elements.push_back(normalized(e));
        } else {
            throw detail::parse_error(lineno, "unknown line type '" + t[0] + "'");
        }
    }
    if (!have_order) throw detail::parse_error(lineno, "missing 'k <order>' line");
    return b;
}

} // namespace oddwidth
