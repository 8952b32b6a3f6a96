#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "lp.hpp"
#include "ocp.hpp"

namespace oddwidth {

struct IpRow {
    std::vector<std::pair<int, mpz_class>> coef; // sorted by column, no zeros
    Relation rel = Relation::le;                 // le or eq
    mpz_class rhs;

    bool operator==(const IpRow&) const = default;
};

// max w^T x  s.t.  rows,  lo <= x <= hi,  x integer. Absent bounds are infinite.
struct IntegerProgram {
    int n = 0;
    std::vector<IpRow> rows;
    std::vector<mpz_class> w;
    std::vector<std::optional<mpz_class>> lo, hi;

    IntegerProgram() = default;
    explicit IntegerProgram(int n_)
        : n(n_), w(static_cast<std::size_t>(n_), 0), lo(static_cast<std::size_t>(n_)), hi(static_cast<std::size_t>(n_)) {}

    int num_rows() const { return static_cast<int>(rows.size()); }

    void add_row(std::vector<std::pair<int, mpz_class>> coef, Relation rel, const mpz_class& rhs) {
        if (rel == Relation::ge) throw InvalidInput("bad-relation", "integer programs use le and eq rows only");
        std::map<int, mpz_class> merged;
        for (auto& [j, a] : coef) {
            if (j < 0 || j >= n) throw InvalidInput("bad-dimensions", "column " + std::to_string(j) + " out of range");
            merged[j] += a;
        }
        IpRow r;
        for (auto& [j, a] : merged)
            if (sgn(a) != 0) r.coef.emplace_back(j, a);
        r.rel = rel;
        r.rhs = rhs;
        rows.push_back(std::move(r));
    }

    void check() const {
        if (static_cast<int>(w.size()) != n || static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
            throw InvalidInput("bad-dimensions", "objective or bound vectors do not match the column count");
        for (const auto& r : rows) {
            if (r.rel == Relation::ge) throw InvalidInput("bad-relation", "integer programs use le and eq rows only");
            for (std::size_t i = 0; i < r.coef.size(); ++i) {
                if (r.coef[i].first < 0 || r.coef[i].first >= n)
                    throw InvalidInput("bad-dimensions", "column index out of range");
                if (i > 0 && r.coef[i - 1].first >= r.coef[i].first)
                    throw InvalidInput("bad-dimensions", "row entries must be sorted and distinct");
            }
        }
    }

    bool bounded() const {
        for (int j = 0; j < n; ++j)
            if (!lo[j] || !hi[j]) return false;
        return true;
    }

    bool operator==(const IntegerProgram&) const = default;
};

inline bool satisfies_row(const IpRow& r, const std::vector<mpz_class>& x) {
    mpz_class s = 0;
    for (const auto& [j, a] : r.coef) s += a * x[j];
    return r.rel == Relation::eq ? s == r.rhs : s <= r.rhs;
}

inline bool is_feasible(const IntegerProgram& ip, const std::vector<mpz_class>& x) {
    if (static_cast<int>(x.size()) != ip.n) return false;
    for (int j = 0; j < ip.n; ++j) {
        if (ip.lo[j] && x[j] < *ip.lo[j]) return false;
        if (ip.hi[j] && x[j] > *ip.hi[j]) return false;
    }
    for (const auto& r : ip.rows)
        if (!satisfies_row(r, x)) return false;
    return true;
}

inline mpz_class objective_value(const IntegerProgram& ip, const std::vector<mpz_class>& x) {
    mpz_class s = 0;
    for (int j = 0; j < ip.n; ++j) s += ip.w[j] * x[j];
    return s;
}

inline LinearProgram lp_relaxation(const IntegerProgram& ip) {
    LinearProgram lp(ip.n);
    for (int j = 0; j < ip.n; ++j) {
        if (ip.lo[j]) lp.lo[j] = mpq_class(*ip.lo[j]);
        if (ip.hi[j]) lp.hi[j] = mpq_class(*ip.hi[j]);
        lp.obj[j] = mpq_class(ip.w[j]);
    }
    for (const auto& r : ip.rows) {
        LpRow lr;
        for (const auto& [j, a] : r.coef) lr.coef.emplace_back(j, mpq_class(a));
        lr.rel = r.rel;
        lr.rhs = mpq_class(r.rhs);
        lp.rows.push_back(std::move(lr));
    }
    return lp;
}

// ---------------------------------------------------------------------------
// Text format
//   p ip <m> <n>
//   c <rhs> <le|eq> <idx:coef> ...
//   b <idx> <lo|-inf> <hi|+inf>
//   o <idx:coef> ...
// Columns are 0-based; unlisted bounds are infinite, unlisted objective
// coefficients are 0. Since `c` introduces a row, comments start with `#`.

namespace detail {

inline mpz_class parse_mpz(const std::string& s, int line) {
    static const std::regex re("[+-]?[0-9]+");
    if (!std::regex_match(s, re)) throw parse_error(line, "expected an integer, got '" + s + "'");
    return mpz_class(s[0] == '+' ? s.substr(1) : s);
}

inline std::pair<int, mpz_class> parse_entry(const std::string& s, int line) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw parse_error(line, "expected <idx:coef>, got '" + s + "'");
    long long j = parse_int(s.substr(0, colon), line);
    if (j < 0 || j > std::numeric_limits<int>::max()) throw parse_error(line, "bad column index in '" + s + "'");
    return {static_cast<int>(j), parse_mpz(s.substr(colon + 1), line)};
}

} // namespace detail

inline IntegerProgram read_ip(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false, have_obj = false;
    long long m = 0;
    IntegerProgram ip;
    std::vector<char> bound_seen;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = detail::tokens(line);
        if (t.empty() || t[0][0] == '#') continue;
        if (t[0] == "p") {
            if (have_header) throw detail::parse_error(lineno, "duplicate header");
            if (t.size() != 4 || t[1] != "ip") throw detail::parse_error(lineno, "expected 'p ip <m> <n>'");
            m = detail::parse_int(t[2], lineno);
            long long n = detail::parse_int(t[3], lineno);
            if (m < 0 || n < 0) throw detail::parse_error(lineno, "negative size");
            ip = IntegerProgram(static_cast<int>(n));
            bound_seen.assign(static_cast<std::size_t>(n), 0);
            have_header = true;
            continue;
        }
        if (!have_header) throw detail::parse_error(lineno, "line before header");
        if (t[0] == "c") {
            if (t.size() < 3) throw detail::parse_error(lineno, "expected 'c <rhs> <le|eq> <idx:coef>...'");
            mpz_class rhs = detail::parse_mpz(t[1], lineno);
            Relation rel;
            if (t[2] == "le")
                rel = Relation::le;
            else if (t[2] == "eq")
                rel = Relation::eq;
            else
                throw detail::parse_error(lineno, "relation must be 'le' or 'eq'");
            std::vector<std::pair<int, mpz_class>> coef;
            std::vector<int> cols;
            for (std::size_t i = 3; i < t.size(); ++i) {
                coef.push_back(detail::parse_entry(t[i], lineno));
                if (coef.back().first >= ip.n) throw detail::parse_error(lineno, "column out of range");
                cols.push_back(coef.back().first);
            }
            std::sort(cols.begin(), cols.end());
            if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
                throw detail::parse_error(lineno, "column listed twice in one row");
            ip.add_row(std::move(coef), rel, rhs);
        } else if (t[0] == "b") {
            if (t.size() != 4) throw detail::parse_error(lineno, "expected 'b <idx> <lo|-inf> <hi|+inf>'");
            long long j = detail::parse_int(t[1], lineno);
            if (j < 0 || j >= ip.n) throw detail::parse_error(lineno, "column out of range");
            if (bound_seen[j]) throw detail::parse_error(lineno, "bounds for column " + t[1] + " given twice");
            bound_seen[j] = 1;
            if (t[2] != "-inf") ip.lo[j] = detail::parse_mpz(t[2], lineno);
            if (t[3] != "+inf") ip.hi[j] = detail::parse_mpz(t[3], lineno);
        } else if (t[0] == "o") {
            if (have_obj) throw detail::parse_error(lineno, "objective given twice");
            have_obj = true;
            std::vector<char> seen(static_cast<std::size_t>(ip.n), 0);
            for (std::size_t i = 1; i < t.size(); ++i) {
                auto [j, a] = detail::parse_entry(t[i], lineno);
                if (j >= ip.n) throw detail::parse_error(lineno, "column out of range");
                if (seen[j]) throw detail::parse_error(lineno, "column listed twice in objective");
                seen[j] = 1;
                ip.w[j] = a;
            }
        } else {
            throw detail::parse_error(lineno, "unknown line type '" + t[0] + "'");
        }
    }
    if (!have_header) throw detail::parse_error(lineno, "missing header");
    if (ip.num_rows() != m)
        throw detail::parse_error(lineno, "header announces " + std::to_string(m) + " rows, found " +
                                              std::to_string(ip.num_rows()));
    return ip;
}

inline void write_ip(std::ostream& out, const IntegerProgram& ip) {
    out << "p ip " << ip.num_rows() << ' ' << ip.n << '\n';
    for (const auto& r : ip.rows) {
        out << "c " << r.rhs << ' ' << to_string(r.rel);
        for (const auto& [j, a] : r.coef) out << ' ' << j << ':' << a;
        out << '\n';
    }
    for (int j = 0; j < ip.n; ++j) {
        if (!ip.lo[j] && !ip.hi[j]) continue;
        out << "b " << j << ' ';
        if (ip.lo[j])
            out << *ip.lo[j];
        else
            out << "-inf";
        out << ' ';
        if (ip.hi[j])
            out << *ip.hi[j];
        else
            out << "+inf";
        out << '\n';
    }
    out << 'o';
    for (int j = 0; j < ip.n; ++j)
        if (sgn(ip.w[j]) != 0) out << ' ' << j << ':' << ip.w[j];
    out << '\n';
}

// ---------------------------------------------------------------------------
// Signed incidence view

struct SignedIncidence {
    SignedGraph graph;               // vertices = columns, one edge per two-entry row
    std::vector<int> edge_row;       // original row of each edge
    std::vector<int> bound_rows;     // rows with one entry
    std::vector<int> constant_rows;  // rows with no entry
};

inline SignedIncidence recognize(const IntegerProgram& ip) {
    ip.check();
    SignedIncidence s;
    s.graph = SignedGraph(ip.n);
    for (int i = 0; i < ip.num_rows(); ++i) {
        const auto& c = ip.rows[i].coef;
        for (const auto& [j, a] : c)
            if (abs(a) > 1)
                throw InvalidInput("entry-out-of-range",
                                   "row " + std::to_string(i) + " has entry " + a.get_str() +
                                       "; fold loops into the variable bounds before entering the pipeline");
        if (c.size() > 2)
            throw InvalidInput("too-many-nonzeros", "row " + std::to_string(i) + " has more than two nonzero entries");
        if (c.empty()) {
            s.constant_rows.push_back(i);
        } else if (c.size() == 1) {
            s.bound_rows.push_back(i);
        } else {
            const int label = sgn(c[0].second) == sgn(c[1].second) ? 1 : 0;
            s.graph.add_edge(c[0].first, c[1].first, label);
            s.edge_row.push_back(i);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Subdeterminants

using IntMatrix = std::vector<std::vector<mpz_class>>;

inline IntMatrix constraint_matrix(const IntegerProgram& ip) {
    IntMatrix a(static_cast<std::size_t>(ip.num_rows()), std::vector<mpz_class>(static_cast<std::size_t>(ip.n), 0));
    for (int i = 0; i < ip.num_rows(); ++i)
        for (const auto& [j, v] : ip.rows[i].coef) a[i][j] = v;
    return a;
}

namespace detail {

inline int columns_of(const IntMatrix& a) { return a.empty() ? 0 : static_cast<int>(a.front().size()); }

inline void check_two_per_row(const IntMatrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int nz = 0;
        for (const auto& v : a[i]) nz += sgn(v) != 0 ? 1 : 0;
        if (nz > 2) throw InvalidInput("too-many-nonzeros", "row " + std::to_string(i) + " has more than two nonzero entries");
    }
}

} // namespace detail

// Fraction-free Gaussian elimination (Bareiss); exact for integer matrices.
inline mpz_class determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m[p][k]) == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Largest |det| over all square submatrices (0 for a zero or empty matrix).
inline mpz_class max_abs_subdeterminant(const IntMatrix& a, int limit = 7) {
    const int m = static_cast<int>(a.size()), n = detail::columns_of(a);
    for (const auto& r : a)
        if (static_cast<int>(r.size()) != n) throw InvalidInput("bad-dimensions", "ragged matrix");
    if (std::min(m, n) > limit)
        throw InstanceTooLarge("subdeterminant enumeration limited to min(m,n) <= " + std::to_string(limit));
    if (m > 20 || n > 20) throw InstanceTooLarge("subdeterminant enumeration limited to 20 rows and columns");
    mpz_class best = 0;
    for (std::uint32_t rs = 1; rs < (1u << m); ++rs) {
        const int s = std::popcount(rs);
        if (s > n) continue;
        std::vector<int> rows;
        for (int i = 0; i < m; ++i)
            if (rs >> i & 1u) rows.push_back(i);
        for (std::uint32_t cs = 1; cs < (1u << n); ++cs) {
            if (std::popcount(cs) != s) continue;
            IntMatrix sub;
            for (int i : rows) {
                std::vector<mpz_class> r;
                for (int j = 0; j < n; ++j)
                    if (cs >> j & 1u) r.push_back(a[i][j]);
                sub.push_back(std::move(r));
            }
            mpz_class d = abs(determinant(std::move(sub)));
            if (d > best) best = d;
        }
    }
    return best;
}

struct SubdetAnalysis {
    int ocp = 0;          // odd cycle packing number of the signed support
    int large_columns = 0; // columns with an entry outside {-1, 0, 1}
    mpz_class norm = 0;   // largest absolute entry
    mpz_class bound = 1;  // 2^ocp * norm^large_columns
};

// The signed graph of the signed support: rows with two entries become
// edges, odd when both entries have the same sign. Rows with fewer entries
// lie on no cycle and are left out.
inline SignedGraph signed_support_graph(const IntMatrix& a) {
    detail::check_two_per_row(a);
    SignedGraph s(detail::columns_of(a));
    for (const auto& r : a) {
        std::vector<int> nz;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (sgn(r[j]) != 0) nz.push_back(static_cast<int>(j));
        if (nz.size() == 2) s.add_edge(nz[0], nz[1], sgn(r[nz[0]]) == sgn(r[nz[1]]) ? 1 : 0);
    }
    return s;
}

inline SubdetAnalysis subdet_analysis(const IntMatrix& a, const OcpOptions& opt = {}) {
    SubdetAnalysis out;
    const int n = detail::columns_of(a);
    for (int j = 0; j < n; ++j) {
        bool large = false;
        for (const auto& r : a) {
            if (abs(r[j]) > out.norm) out.norm = abs(r[j]);
            if (abs(r[j]) > 1) large = true;
        }
        out.large_columns += large ? 1 : 0;
    }
    try {
        out.ocp = ocp_exact(signed_support_graph(a), opt);
    } catch (const InstanceTooLarge& e) {
        throw InstanceTooLarge(e.what(), "ocp-instance-too-large");
    }
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), out.norm.get_mpz_t(), static_cast<unsigned long>(out.large_columns));
    out.bound = p << out.ocp;
    return out;
}

inline mpz_class subdet_bound(const IntMatrix& a, const OcpOptions& opt = {}) { return subdet_analysis(a, opt).bound; }
inline mpz_class subdet_bound(const IntegerProgram& ip, const OcpOptions& opt = {}) {
    return subdet_bound(constraint_matrix(ip), opt);
}

// ceil(n^(n/2)), the Hadamard bound for {-1,0,1} matrices with n columns.
inline mpz_class hadamard_bound(int n) {
    if (n <= 0) return 1;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), p.get_mpz_t());
    if (r * r != p) r += 1;
    return r;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

enum class IpStatus { optimal, infeasible, unbounded };

inline std::string to_string(IpStatus s) {
    switch (s) {
    case IpStatus::optimal: return "optimal";
    case IpStatus::infeasible: return "infeasible";
    case IpStatus::unbounded: return "unbounded";
    }
    return "?";
}

struct IlpResult {
    IpStatus status = IpStatus::infeasible;
    std::vector<mpz_class> x;
    mpz_class value;
};

struct IlpOptions {
    // Bound on the number of points of the box; 0 disables the check (the
    // search is then limited by node_budget alone).
    double box_limit = 1e7;
    long long node_budget = 200'000'000;
};

namespace detail {

// Depth-first enumeration in lexicographic order of x with two prunings
// that never cut off a strictly better point: rows that can no longer be
// satisfied, and an objective bound over the remaining domains (tightened
// by rows whose other entries are all fixed).
class IlpSearch {
public:
    IlpSearch(const IntegerProgram& ip, const IlpOptions& opt) : opt_(opt), n_(ip.n) {
        auto small = [](const mpz_class& v) {
            if (abs(v) > mpz_class(1) << 40) throw InstanceTooLarge("brute-force ILP needs entries below 2^40", "overflow");
            return static_cast<std::int64_t>(v.get_si());
        };
        for (int j = 0; j < n_; ++j) {
            lo_.push_back(small(*ip.lo[j]));
            hi_.push_back(small(*ip.hi[j]));
            w_.push_back(small(ip.w[j]));
        }
        for (const auto& r : ip.rows) {
            Row row;
            for (const auto& [j, a] : r.coef) row.coef.emplace_back(j, small(a));
            row.eq = r.rel == Relation::eq;
            row.rhs = small(r.rhs);
            rows_.push_back(std::move(row));
        }
        x_.assign(static_cast<std::size_t>(n_), 0);
    }

    IlpResult run() {
        for (const auto& r : rows_)
            if (r.coef.empty() && (r.eq ? r.rhs != 0 : r.rhs < 0)) return {};
        rec(0, 0);
        IlpResult res;
        if (found_) {
            res.status = IpStatus::optimal;
            for (auto v : best_x_) res.x.emplace_back(static_cast<long>(v));
            res.value = mpz_class(static_cast<long>(best_));
        }
        return res;
    }

private:
    struct Row {
        std::vector<std::pair<int, std::int64_t>> coef;
        bool eq = false;
        std::int64_t rhs = 0;
    };

    // Domains of the free columns j >= depth after propagating rows with a
    // single free column. Returns false if some row cannot be satisfied.
    bool domains(int depth, std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) const {
        lo.assign(lo_.begin(), lo_.end());
        hi.assign(hi_.begin(), hi_.end());
        for (const auto& r : rows_) {
            std::int64_t fixed = 0, minact = 0, maxact = 0;
            int free_count = 0, free_col = -1;
            std::int64_t free_coef = 0;
            for (const auto& [j, a] : r.coef) {
                if (j < depth) {
                    fixed += a * x_[j];
                } else {
                    ++free_count;
                    free_col = j;
                    free_coef = a;
                    minact += a > 0 ? a * lo_[j] : a * hi_[j];
                    maxact += a > 0 ? a * hi_[j] : a * lo_[j];
                }
            }
            const std::int64_t room = r.rhs - fixed;
            if (minact > room) return false;
            if (r.eq && maxact < room) return false;
            if (free_count == 1) {
                // free_coef * x <= room (and >= room for eq)
                const std::int64_t a = free_coef;
                auto floordiv = [](std::int64_t p, std::int64_t q) {
                    std::int64_t d = p / q;
                    if ((p % q != 0) && ((p < 0) != (q < 0))) --d;
                    return d;
                };
                auto ceildiv = [&](std::int64_t p, std::int64_t q) { return -floordiv(-p, q); };
                if (a > 0) {
                    hi[free_col] = std::min(hi[free_col], floordiv(room, a));
                    if (r.eq) lo[free_col] = std::max(lo[free_col], ceildiv(room, a));
                } else {
                    lo[free_col] = std::max(lo[free_col], ceildiv(room, a));
                    if (r.eq) hi[free_col] = std::min(hi[free_col], floordiv(room, a));
                }
                if (lo[free_col] > hi[free_col]) return false;
            }
        }
        return true;
    }

    void rec(int depth, std::int64_t value) {
        if (++nodes_ > opt_.node_budget)
            throw InstanceTooLarge("brute-force ILP exceeded node budget " + std::to_string(opt_.node_budget),
                                   "node-budget-exceeded");
        std::vector<std::int64_t> lo, hi;
        if (!domains(depth, lo, hi)) return;
        if (depth == n_) {
            if (!found_ || value > best_) {
                found_ = true;
                best_ = value;
                best_x_ = x_;
            }
            return;
        }
        if (found_) {
            std::int64_t bound = value;
            for (int j = depth; j < n_; ++j) bound += std::max(w_[j] * lo[j], w_[j] * hi[j]);
            if (bound <= best_) return;
        }
        for (std::int64_t v = lo[depth]; v <= hi[depth]; ++v) {
            x_[depth] = v;
            rec(depth + 1, value + w_[depth] * v);
        }
        x_[depth] = 0;
    }

    IlpOptions opt_;
    int n_;
    std::vector<std::int64_t> lo_, hi_, w_;
    std::vector<Row> rows_;
    std::vector<std::int64_t> x_;
    bool found_ = false;
    std::int64_t best_ = 0;
    std::vector<std::int64_t> best_x_;
    long long nodes_ = 0;
};

} // namespace detail

// Exhaustive search over the integer points of a bounded box; returns the
// lexicographically smallest optimal point.
inline IlpResult ilp_bruteforce(const IntegerProgram& ip, const IlpOptions& opt = {}) {
    ip.check();
    if (!ip.bounded()) throw InvalidInput("unbounded-variable", "brute-force ILP needs finite bounds on every column");
    double box = 1;
    for (int j = 0; j < ip.n; ++j) {
        if (*ip.lo[j] > *ip.hi[j]) return {};
        box *= (mpz_class(*ip.hi[j] - *ip.lo[j] + 1)).get_d();
    }
    if (opt.box_limit > 0 && box > opt.box_limit)
        throw InstanceTooLarge("box has " + std::to_string(box) + " integer points, limit " +
                               std::to_string(opt.box_limit));
    detail::IlpSearch s(ip, opt);
    return s.run();
}

} // namespace oddwidth
