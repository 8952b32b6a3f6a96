#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace oddwidth {

enum class Relation { le, ge, eq };

inline std::string to_string(Relation r) {
    switch (r) {
    case Relation::le: return "le";
    case Relation::ge: return "ge";
    case Relation::eq: return "eq";
    }
    return "?";
}

struct LpRow {
    std::vector<std::pair<int, mpq_class>> coef; // (column, value)
    Relation rel = Relation::le;
    mpq_class rhs;
};

// max (or min) obj^T x  s.t. rows, lo <= x <= hi; absent bounds are infinite.
struct LinearProgram {
    int n = 0;
    std::vector<LpRow> rows;
    std::vector<std::optional<mpq_class>> lo, hi;
    std::vector<mpq_class> obj;
    bool maximize = true;

    explicit LinearProgram(int n_ = 0)
        : n(n_), lo(static_cast<std::size_t>(n_)), hi(static_cast<std::size_t>(n_)), obj(static_cast<std::size_t>(n_), 0) {}
};

enum class LpStatus { optimal, infeasible, unbounded };

inline std::string to_string(LpStatus s) {
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<mpq_class> x; // structural values (optimal only)
    mpq_class value;
    std::vector<int> basis; // basic columns: 0..n-1 structural, n+i slack of row i
    long long pivots = 0;
};

namespace detail {

// Bounded-variable primal simplex on a dense tableau over the rationals.
// Every row i gets a slack s_i (A x + s = b) whose bounds encode the
// relation: le -> [0, inf), ge -> (-inf, 0], eq -> [0, 0]. Rows whose slack
// starts out of bounds get an artificial variable; phase 1 maximizes minus
// their sum. Entering and leaving variables follow Bland's smallest-index
// rule, which rules out cycling on degenerate bases.
class BoundedSimplex {
public:
    explicit BoundedSimplex(const LinearProgram& lp) : lp_(lp), m_(static_cast<int>(lp.rows.size())) {}

    LpResult run() {
        setup();
        LpResult res;
        // Phase 1
        if (num_art_ > 0) {
            std::vector<mpq_class> c(static_cast<std::size_t>(cols_), 0);
            for (int j = first_art_; j < cols_; ++j) c[j] = -1;
            auto st = optimize(c);
            (void)st; // bounded above by 0
            mpq_class infeas = 0;
            for (int j = first_art_; j < cols_; ++j) infeas += val_[j];
            if (sgn(infeas) != 0) {
                res.status = LpStatus::infeasible;
                res.pivots = pivots_;
                return res;
            }
            for (int j = first_art_; j < cols_; ++j) hi_[j] = mpq_class(0);
            drive_out_artificials();
        }
        // Phase 2
        std::vector<mpq_class> c(static_cast<std::size_t>(cols_), 0);
        for (int j = 0; j < lp_.n; ++j) c[j] = lp_.maximize ? lp_.obj[j] : mpq_class(-lp_.obj[j]);
        if (!optimize(c)) {
            res.status = LpStatus::unbounded;
            res.pivots = pivots_;
            return res;
        }
        res.status = LpStatus::optimal;
        res.x.assign(val_.begin(), val_.begin() + lp_.n);
        res.value = 0;
        for (int j = 0; j < lp_.n; ++j) res.value += lp_.obj[j] * val_[j];
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < first_art_) res.basis.push_back(basis_[i]);
        res.pivots = pivots_;
        return res;
    }

private:
    void setup() {
        const int n = lp_.n;
        // columns: structurals, slacks, then artificials
        cols_ = n + m_;
        lo_.assign(static_cast<std::size_t>(cols_), std::nullopt);
        hi_.assign(static_cast<std::size_t>(cols_), std::nullopt);
        for (int j = 0; j < n; ++j) {
            lo_[j] = lp_.lo[j];
            hi_[j] = lp_.hi[j];
        }
        for (int i = 0; i < m_; ++i) {
            const auto rel = lp_.rows[i].rel;
            if (rel != Relation::ge) lo_[n + i] = mpq_class(0);
            if (rel != Relation::le) hi_[n + i] = mpq_class(0);
        }
        val_.assign(static_cast<std::size_t>(cols_), 0);
        for (int j = 0; j < n; ++j) {
            if (lo_[j])
                val_[j] = *lo_[j];
            else if (hi_[j])
                val_[j] = *hi_[j];
        }
        // residual r_i = b_i - a_i x
        std::vector<mpq_class> r(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            r[i] = lp_.rows[i].rhs;
            for (const auto& [j, a] : lp_.rows[i].coef) r[i] -= a * val_[j];
        }
        std::vector<int> art_row;
        for (int i = 0; i < m_; ++i) {
            bool ok = (!lo_[n + i] || r[i] >= *lo_[n + i]) && (!hi_[n + i] || r[i] <= *hi_[n + i]);
            if (!ok) art_row.push_back(i);
        }
        first_art_ = cols_;
        num_art_ = static_cast<int>(art_row.size());
        cols_ += num_art_;
        lo_.resize(static_cast<std::size_t>(cols_), mpq_class(0));
        hi_.resize(static_cast<std::size_t>(cols_), std::nullopt);
        val_.resize(static_cast<std::size_t>(cols_), 0);

        tab_.assign(static_cast<std::size_t>(m_), std::vector<mpq_class>(static_cast<std::size_t>(cols_), 0));
        basis_.assign(static_cast<std::size_t>(m_), -1);
        for (int i = 0; i < m_; ++i) {
            for (const auto& [j, a] : lp_.rows[i].coef) tab_[i][j] += a;
            tab_[i][n + i] = 1;
            basis_[i] = n + i;
            val_[n + i] = r[i];
        }
        for (int a = 0; a < num_art_; ++a) {
            const int i = art_row[a], col = first_art_ + a, s = n + i;
            // Slack goes nonbasic at the violated bound; the artificial
            // absorbs the excess with a positive value.
            mpq_class bound = (lo_[s] && r[i] < *lo_[s]) ? *lo_[s] : *hi_[s];
            mpq_class excess = r[i] - bound;
            val_[s] = bound;
            // row: a_i x + s + sigma * art = b  with sigma * art = excess
            const int sigma = sgn(excess) > 0 ? 1 : -1;
            tab_[i][col] = sigma;
            val_[col] = abs(excess);
            // make the artificial basic: divide the row by sigma
            if (sigma < 0)
                for (auto& e : tab_[i]) e = -e;
            basis_[i] = col;
        }
    }

    bool at_upper(int j) const { return hi_[j] && val_[j] >= *hi_[j]; }
    bool at_lower(int j) const { return lo_[j] && val_[j] <= *lo_[j]; }

    // Maximizes c from the current feasible basis (bounds of the structural
    // columns must be consistent). Returns false if unbounded.
    bool optimize(const std::vector<mpq_class>& c) {
        std::vector<char> is_basic(static_cast<std::size_t>(cols_), 0);
        for (int b : basis_) is_basic[b] = 1;
        std::vector<mpq_class> d(static_cast<std::size_t>(cols_));
        while (true) {
            // reduced costs d_j = c_j - c_B^T T_j
            for (int j = 0; j < cols_; ++j) {
                if (is_basic[j]) continue;
                mpq_class s = c[j];
                for (int i = 0; i < m_; ++i)
                    if (sgn(tab_[i][j]) != 0 && sgn(c[basis_[i]]) != 0) s -= c[basis_[i]] * tab_[i][j];
                d[j] = s;
            }
            int enter = -1, dir = 0;
            for (int j = 0; j < cols_; ++j) {
                if (is_basic[j] || sgn(d[j]) == 0) continue;
                if (sgn(d[j]) > 0 && !at_upper(j)) {
                    enter = j;
                    dir = 1;
                    break;
                }
                if (sgn(d[j]) < 0 && !at_lower(j)) {
                    enter = j;
                    dir = -1;
                    break;
                }
            }
            if (enter < 0) return true;

            // ratio test
            std::optional<mpq_class> best;
            int leave_row = -1; // -1 with best set: bound flip of the entering variable
            int leave_var = -1;
            if (lo_[enter] && hi_[enter]) {
                best = *hi_[enter] - *lo_[enter];
                leave_var = enter;
            }
            for (int i = 0; i < m_; ++i) {
                const mpq_class& a = tab_[i][enter];
                if (sgn(a) == 0) continue;
                const int b = basis_[i];
                // x_b changes by -dir * a * t
                const int change = -dir * sgn(a);
                std::optional<mpq_class> lim;
                if (change < 0 && lo_[b])
                    lim = (val_[b] - *lo_[b]) / abs(a);
                else if (change > 0 && hi_[b])
                    lim = (*hi_[b] - val_[b]) / abs(a);
                if (!lim) continue;
                if (!best || *lim < *best || (*lim == *best && b < leave_var)) {
                    best = *lim;
                    leave_row = i;
                    leave_var = b;
                }
            }
            if (!best) return false;
            const mpq_class t = *best;
            ++pivots_;
            // move along the edge
            if (sgn(t) != 0) {
                val_[enter] += dir * t;
                for (int i = 0; i < m_; ++i)
                    if (sgn(tab_[i][enter]) != 0) val_[basis_[i]] -= dir * t * tab_[i][enter];
            }
            if (leave_row < 0) {
                val_[enter] = dir > 0 ? *hi_[enter] : *lo_[enter];
                continue;
            }
            // snap the leaving variable exactly onto its bound
            const int b = basis_[leave_row];
            const int change = -dir * sgn(tab_[leave_row][enter]);
            val_[b] = change < 0 ? *lo_[b] : *hi_[b];
            pivot(leave_row, enter);
            is_basic[b] = 0;
            is_basic[enter] = 1;
        }
    }

    void pivot(int r, int col) {
        const mpq_class p = tab_[r][col];
        for (auto& e : tab_[r])
            if (sgn(e) != 0) e /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const mpq_class f = tab_[i][col];
            if (sgn(f) == 0) continue;
            for (int j = 0; j < cols_; ++j)
                if (sgn(tab_[r][j]) != 0) tab_[i][j] -= f * tab_[r][j];
        }
        basis_[r] = col;
    }

    // Artificials are zero after a successful phase 1; pivot the basic ones
    // out on any non-artificial column, leaving them nonbasic at 0.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < first_art_) continue;
            std::vector<char> is_basic(static_cast<std::size_t>(cols_), 0);
            for (int b : basis_) is_basic[b] = 1;
            for (int j = 0; j < first_art_; ++j)
                if (!is_basic[j] && sgn(tab_[i][j]) != 0) {
                    // value of the artificial is 0, so the entering variable
                    // keeps its value: a degenerate pivot.
                    ++pivots_;
                    pivot(i, j);
                    break;
                }
            // otherwise the row is redundant; the artificial stays basic at 0
            // with bounds [0, 0].
        }
    }

    const LinearProgram& lp_;
    int m_;
    int cols_ = 0;
    int first_art_ = 0;
    int num_art_ = 0;
    long long pivots_ = 0;
    std::vector<std::optional<mpq_class>> lo_, hi_;
    std::vector<mpq_class> val_;
    std::vector<std::vector<mpq_class>> tab_;
    std::vector<int> basis_;
};

} // namespace detail

inline LpResult lp_solve(const LinearProgram& lp) {
    if (static_cast<int>(lp.lo.size()) != lp.n || static_cast<int>(lp.hi.size()) != lp.n ||
        static_cast<int>(lp.obj.size()) != lp.n)
        throw InvalidInput("bad-dimensions", "bound or objective vectors do not match the column count");
    for (const auto& r : lp.rows)
        for (const auto& [j, a] : r.coef)
            if (j < 0 || j >= lp.n) throw InvalidInput("bad-dimensions", "column index out of range");
    for (int j = 0; j < lp.n; ++j)
        if (lp.lo[j] && lp.hi[j] && *lp.lo[j] > *lp.hi[j]) return {LpStatus::infeasible, {}, 0, {}, 0};
    detail::BoundedSimplex s(lp);
    return s.run();
}

} // namespace oddwidth
