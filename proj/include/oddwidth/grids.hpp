#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "graph.hpp"
#include "odd_minor.hpp"

namespace oddwidth {

enum class GridKind { cylindrical, handle, vortex, universal };

inline std::string to_string(GridKind k) {
    switch (k) {
    case GridKind::cylindrical: return "cylindrical";
    case GridKind::handle: return "handle";
    case GridKind::vortex: return "vortex";
    case GridKind::universal: return "universal";
    }
    return "?";
}

struct ParityGrid {
    Graph graph;
    GridKind kind = GridKind::cylindrical;
    int k = 0;
    int l = 0; // cycle length for the cylindrical kinds, 2k+1 columns for universal
    // cylindrical kinds: concentric cycles (index = cycle number, the last one
    // outermost) and radial paths (index = position)
    std::vector<std::vector<Vertex>> cycles;
    std::vector<std::vector<Vertex>> radial;
    // universal: rows (with subdivision vertices in place) and columns
    std::vector<std::vector<Vertex>> horizontal;
    std::vector<std::vector<Vertex>> vertical;
    std::vector<Edge> parity_breaking;
    std::vector<Vertex> x_set;        // handle/vortex: x_1..x_2k in order
    std::vector<Vertex> subdivisions; // universal: subdivision vertices
};

// C_l x P_k: vertex (c, p) has id c*l + p; cycle c = k-1 is the outermost.
inline ParityGrid gen_cylindrical(int k, int l) {
    if (k < 1 || l < 3)
        throw InvalidInput("degenerate-parameters", "cylindrical grid needs k >= 1 and l >= 3");
    ParityGrid pg;
    pg.kind = GridKind::cylindrical;
    pg.k = k;
    pg.l = l;
    pg.graph = Graph(k * l);
    auto id = [l](int c, int p) { return c * l + p; };
    for (int c = 0; c < k; ++c) {
        std::vector<Vertex> cyc;
        for (int p = 0; p < l; ++p) {
            cyc.push_back(id(c, p));
            pg.graph.add_edge(id(c, p), id(c, (p + 1) % l));
            if (c + 1 < k) pg.graph.add_edge(id(c, p), id(c + 1, p));
        }
        pg.cycles.push_back(std::move(cyc));
    }
    for (int p = 0; p < l; ++p) {
        std::vector<Vertex> path;
        for (int c = 0; c < k; ++c) path.push_back(id(c, p));
        pg.radial.push_back(std::move(path));
    }
    return pg;
}

namespace detail {

inline ParityGrid gen_parity_chords(int k, GridKind kind) {
    if (k < 1) throw InvalidInput("degenerate-parameters", "order must be at least 1");
    ParityGrid pg = gen_cylindrical(k, 4 * k);
    pg.kind = kind;
    for (int i = 0; i < 2 * k; ++i) pg.x_set.push_back((k - 1) * 4 * k + 2 * i);
    for (int i = 1; i <= k; ++i) {
        Vertex a, b;
        if (kind == GridKind::handle) {
            a = pg.x_set[i - 1];
            b = pg.x_set[2 * k - i];
        } else {
            a = pg.x_set[2 * i - 2];
            b = pg.x_set[2 * i - 1];
        }
        pg.graph.add_edge(a, b);
        pg.parity_breaking.push_back(make_edge(a, b));
    }
    return pg;
}

} // namespace detail

// Parity handle: chords x_i x_{2k-i+1}, i in [k], on the outermost cycle of C_{k,4k}.
inline ParityGrid gen_parity_handle(int k) { return detail::gen_parity_chords(k, GridKind::handle); }

// Parity vortex: chords x_{2i-1} x_{2i}, i in [k].
inline ParityGrid gen_parity_vortex(int k) { return detail::gen_parity_chords(k, GridKind::vortex); }

// Universal parity breaking grid: the 2k x (2k+1) grid (row-major ids) in
// which the edge between columns k-1 and k on every even row 0, 2, ..., 2k-2
// is subdivided once; subdivision vertex i gets id 2k(2k+1) + i.
inline ParityGrid gen_universal(int k) {
    if (k < 1) throw InvalidInput("degenerate-parameters", "order must be at least 1");
    const int rows = 2 * k, cols = 2 * k + 1;
    ParityGrid pg;
    pg.kind = GridKind::universal;
    pg.k = k;
    pg.l = cols;
    pg.graph = Graph(rows * cols + k);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (r + 1 < rows) pg.graph.add_edge(id(r, c), id(r + 1, c));
            if (c + 1 < cols) {
                bool subdivided = r % 2 == 0 && r / 2 < k && c == k - 1;
                if (subdivided) {
                    Vertex mid = rows * cols + r / 2;
                    pg.graph.add_edge(id(r, c), mid);
                    pg.graph.add_edge(mid, id(r, c + 1));
                    pg.parity_breaking.push_back(make_edge(mid, id(r, c + 1)));
                    pg.subdivisions.push_back(mid);
                } else {
                    pg.graph.add_edge(id(r, c), id(r, c + 1));
                }
            }
        }
    for (int r = 0; r < rows; ++r) {
        std::vector<Vertex> row;
        for (int c = 0; c < cols; ++c) {
            row.push_back(id(r, c));
            if (r % 2 == 0 && c == k - 1) row.push_back(rows * cols + r / 2);
        }
        pg.horizontal.push_back(std::move(row));
    }
    for (int c = 0; c < cols; ++c) {
        std::vector<Vertex> col;
        for (int r = 0; r < rows; ++r) col.push_back(id(r, c));
        pg.vertical.push_back(std::move(col));
    }
    return pg;
}

inline ParityGrid gen_grid(GridKind kind, int k, int l = 0) {
    switch (kind) {
    case GridKind::cylindrical: return gen_cylindrical(k, l);
    case GridKind::handle: return gen_parity_handle(k);
    case GridKind::vortex: return gen_parity_vortex(k);
    case GridKind::universal: return gen_universal(k);
    }
    throw InvalidInput("bad-parameters", "unknown grid kind");
}

inline void write_annotation(std::ostream& out, const ParityGrid& pg) {
    auto list = [&out](const char* tag, const std::vector<Vertex>& xs) {
        out << tag;
        for (Vertex x : xs) out << ' ' << x;
        out << '\n';
    };
    out << "kind " << to_string(pg.kind) << '\n' << "k " << pg.k << '\n';
    if (pg.kind == GridKind::cylindrical) out << "l " << pg.l << '\n';
    for (const auto& c : pg.cycles) list("cycle", c);
    for (const auto& r : pg.radial) list("radial", r);
    for (const auto& h : pg.horizontal) list("horizontal", h);
    for (const auto& v : pg.vertical) list("vertical", v);
    if (!pg.x_set.empty()) list("x", pg.x_set);
    if (!pg.subdivisions.empty()) list("subdivision", pg.subdivisions);
    for (auto [u, v] : pg.parity_breaking) out << "parity " << u << ' ' << v << '\n';
}

// ---------------------------------------------------------------------------
// Odd-minor models of the parity handle / vortex of order k inside U_{3k}.
//
// Layout in the host (rows 0..6k-1, columns 0..6k, subdivided middle edges
// between columns 3k-1 and 3k on even rows):
//  * pattern cycle c sits on the rectangle at nesting depth e = k-1-c of the
//    left half: rows e..6k-1-e, columns e..3k-2-e; positions 0..4k-2 run down
//    its right side from row y0, position 4k-1 sits on its left side at y0;
//  * radial edges are the horizontal host edges between nested rectangles;
//  * a chord leaves its upper endpoint to the right through a subdivided edge
//    (flipping parity once), runs around in the right half at a depth chosen
//    so that chords do not meet, re-enters the left half on an odd row through
//    a plain edge and reaches its lower endpoint along column 3k-1.
// The witness colouring is then derived by complete_odd_minor_model.

namespace detail {

struct UniversalHost {
    int K; // order of the universal grid
    int cols() const { return 2 * K + 1; }
    Vertex at(int r, int c) const { return r * cols() + c; }
    Vertex mid(int r) const { return 2 * K * cols() + r / 2; }
};

// Cells visited when walking from `from` to `to` along a row or a column,
// excluding `from`, including `to`.
inline void walk_straight(const UniversalHost& h, std::vector<Vertex>& out, std::pair<int, int>& cur,
                          std::pair<int, int> to) {
    while (cur != to) {
        if (cur.first != to.first)
            cur.first += cur.first < to.first ? 1 : -1;
        else
            cur.second += cur.second < to.second ? 1 : -1;
        out.push_back(h.at(cur.first, cur.second));
    }
}

} // namespace detail

inline OddMinorModel embed_in_universal(GridKind target, int k, int max_k = 4) {
    if (target != GridKind::handle && target != GridKind::vortex)
        throw InvalidInput("bad-parameters", "target must be the parity handle or the parity vortex");
    if (k < 1) throw InvalidInput("degenerate-parameters", "order must be at least 1");
    if (k > max_k)
        throw InstanceTooLarge("embedding limited to order " + std::to_string(max_k));
    ParityGrid pat = target == GridKind::handle ? gen_parity_handle(k) : gen_parity_vortex(k);
    ParityGrid host = gen_universal(3 * k);
    const detail::UniversalHost h{3 * k};
    const int L = 4 * k;
    const int y0 = k % 2 == 0 ? k : k + 1;
    const int mid_left = 3 * k - 1, mid_right = 3 * k;

    auto pid = [L](int c, int p) { return c * L + p; };
    auto right_col = [k](int e) { return 3 * k - 2 - e; };
    auto cell = [&](int c, int p) -> std::pair<int, int> {
        int e = k - 1 - c;
        if (p <= L - 2) return {y0 + p, right_col(e)};
        return {y0, e};
    };

    std::vector<std::vector<Vertex>> branch(static_cast<std::size_t>(pat.graph.num_vertices()));
    for (int c = 0; c < k; ++c)
        for (int p = 0; p < L; ++p) {
            auto [r, col] = cell(c, p);
            branch[pid(c, p)].push_back(h.at(r, col));
        }

    // Realizing host edge per pattern edge, filled in as the routes are laid.
    auto pedges = pat.graph.edges();
    std::vector<std::vector<Edge>> realize(pedges.size());
    auto set_realizer = [&](Vertex a, Vertex b, Vertex x, Vertex y) {
        Edge e = make_edge(a, b);
        for (std::size_t i = 0; i < pedges.size(); ++i)
            if (pedges[i] == e) realize[i] = {a < b ? Edge{x, y} : Edge{y, x}};
    };

    for (int c = 0; c < k; ++c) {
        const int e = k - 1 - c;
        const int top = e, bottom = 6 * k - 1 - e, left = e, right = right_col(e);
        for (int p = 0; p + 1 <= L - 2; ++p) {
            auto a = cell(c, p), b = cell(c, p + 1);
            set_realizer(pid(c, p), pid(c, p + 1), h.at(a.first, a.second), h.at(b.first, b.second));
        }
        // position 4k-2 -> 4k-1: down the right side, along the bottom, up the left side
        {
            std::vector<Vertex> route;
            auto cur = cell(c, L - 2);
            detail::walk_straight(h, route, cur, {bottom, right});
            detail::walk_straight(h, route, cur, {bottom, left});
            detail::walk_straight(h, route, cur, {y0, left});
            Vertex end = route.back();
            route.pop_back();
            for (Vertex x : route) branch[pid(c, L - 2)].push_back(x);
            set_realizer(pid(c, L - 2), pid(c, L - 1), route.back(), end);
        }
        // position 4k-1 -> 0: up the left side, along the top, down the right side
        {
            std::vector<Vertex> route;
            auto cur = cell(c, L - 1);
            detail::walk_straight(h, route, cur, {top, left});
            detail::walk_straight(h, route, cur, {top, right});
            detail::walk_straight(h, route, cur, {y0, right});
            Vertex end = route.back();
            route.pop_back();
            for (Vertex x : route) branch[pid(c, L - 1)].push_back(x);
            set_realizer(pid(c, L - 1), pid(c, 0), route.back(), end);
        }
        if (c + 1 < k)
            for (int p = 0; p < L; ++p) {
                auto a = cell(c, p), b = cell(c + 1, p);
                set_realizer(pid(c, p), pid(c + 1, p), h.at(a.first, a.second), h.at(b.first, b.second));
            }
    }

    // Chords: (upper X index, lower X index, depth in the right half).
    std::vector<std::tuple<int, int, int>> chords;
    for (int i = 1; i <= k; ++i) {
        if (target == GridKind::handle)
            chords.emplace_back(i - 1, 2 * k - i, k - i);
        else
            chords.emplace_back(2 * i - 2, 2 * i - 1, 0);
    }
    for (auto [ia, ib, d] : chords) {
        const Vertex xa = pat.x_set[ia], xb = pat.x_set[ib];
        const int r_top = y0 + 2 * ia, r_low = y0 + 2 * ib, r_ret = r_low - 1;
        // upper part: corridor cell and the subdivision vertex
        branch[xa].push_back(h.at(r_top, mid_left));
        branch[xa].push_back(h.mid(r_top));
        // lower part
        std::vector<Vertex> route{h.at(r_top, mid_right)};
        std::pair<int, int> cur{r_top, mid_right};
        detail::walk_straight(h, route, cur, {r_top, mid_right + d});
        detail::walk_straight(h, route, cur, {r_ret, mid_right + d});
        detail::walk_straight(h, route, cur, {r_ret, mid_left});
        detail::walk_straight(h, route, cur, {r_low, mid_left});
        for (Vertex x : route) branch[xb].push_back(x);
        set_realizer(xa, xb, h.mid(r_top), h.at(r_top, mid_right));
    }

    auto model = complete_odd_minor_model(pat.graph, host.graph, branch, realize);
    if (!model) throw std::logic_error("embed_in_universal: routing admits no parity-consistent witness");
    return *model;
}

} // namespace oddwidth
