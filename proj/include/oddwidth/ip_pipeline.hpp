#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decomposition.hpp"
#include "ip.hpp"
#include "lp.hpp"
#include "mwis.hpp"
#include "mwis_dp.hpp"
#include "tree_decomposition.hpp"

// Reduction of integer programs with at most two {-1,0,1} entries per row to
// maximum weight independent set:
//
//   fold       rows with fewer than two entries become bounds
//   window     LP optimum x_bar; bounds clipped to x_bar +- n * Delta
//   positive   rows with negative entries rewritten with negated copies
//   penalty    equality rows become <= rows with a penalty on the objective
//   round      half-integral LP vertex x*, translate by floor(x*), 0/1
//              domains, trivial rows removed; what is left is a packing
//              x_i + x_j <= 1, i.e. an independent set instance
//   mwis       solved exactly; the answer is lifted back stage by stage

namespace oddwidth {

struct FoldStage {
    std::vector<int> bound_rows;
    std::vector<int> constant_rows;
    std::vector<int> row_source; // rows of the folded program -> input rows
    bool infeasible = false;
    std::string reason;
};

struct WindowStage {
    bool zero_objective = false;
    LpStatus lp_status = LpStatus::infeasible;
    std::vector<mpq_class> xbar;
    int ocp = -1; // -1: packing number not computed (too large)
    mpz_class subdet_bound, hadamard, delta_hat, radius;
    std::vector<mpz_class> lo, hi;
};

struct FreshVariable {
    int column = 0;
    std::string kind; // "y", "z" or "z'"
    int row = 0;      // input row that introduced it
    int partner = 0;  // column it is the negation of
};

struct PositiveStage {
    int original_columns = 0;
    std::vector<FreshVariable> fresh;
    std::vector<int> row_source;                  // rows of the output -> input rows
    std::vector<std::pair<int, int>> merged_rows; // (input row dropped, output row kept)
};

struct PenaltyStage {
    mpz_class mu;
    std::vector<mpz_class> wbar;
    std::vector<int> eq_rows; // rows that were equalities (the A_2 block)
};

struct FixedColumn {
    int column = 0;
    int value = 0; // translated coordinate, 0 or 1
    std::string reason;
};

struct RoundStage {
    bool infeasible = false;
    std::string reason;
    std::vector<mpq_class> xstar;
    bool half_integral = false;
    std::vector<mpz_class> shift; // floor(x*)
    std::vector<FixedColumn> fixed;
    std::vector<int> dropped_rows;
    std::vector<int> free_columns; // MWIS vertex -> column
    WeightedGraph mwis;
};

struct MwisStage {
    std::string backend;
    MwisResult result;
};

struct ReductionTrace {
    int columns = 0, rows = 0;
    FoldStage fold;
    bool zero_objective_rerun = false;
    WindowStage window;
    PositiveStage positive;
    PenaltyStage penalty;
    RoundStage round;
    MwisStage mwis;
    std::vector<mpz_class> lifted; // solution of the penalized program
    bool equality_guard_passed = false;
    std::string last_stage;
};

struct IpSolution {
    IpStatus status = IpStatus::infeasible;
    std::vector<mpz_class> x; // optimal point; for unbounded programs a feasible one
    mpz_class value;          // optimal only
    ReductionTrace trace;
};

struct IpOptions {
    MwisOptions mwis;
    int dp_max_width = 12; // use the tree-decomposition DP up to this min-fill width
};

namespace detail {

inline mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Runs one stage, prefixing the stage name to any library error.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InstanceTooLarge& e) {
        throw InstanceTooLarge(std::string("stage ") + name + ": " + e.what(), e.tag());
    } catch (const InvalidInput& e) {
        throw InvalidInput(e.tag(), std::string("stage ") + name + ": " + e.what());
    }
}

inline void require_two_entry_rows(const IntegerProgram& ip, const char* what) {
    for (int i = 0; i < ip.num_rows(); ++i)
        if (ip.rows[i].coef.size() != 2)
            throw InvalidInput("not-folded", std::string(what) + " expects exactly two entries in every row (row " +
                                                 std::to_string(i) + ")");
}

inline void require_bounded(const IntegerProgram& ip, const char* what) {
    if (!ip.bounded()) throw InvalidInput("unbounded-variable", std::string(what) + " expects finite bounds");
}

} // namespace detail

// Turns rows with one entry into bounds and checks rows without entries.
inline IntegerProgram fold_bound_rows(const IntegerProgram& ip, FoldStage& st) {
    SignedIncidence si = recognize(ip);
    IntegerProgram out(ip.n);
    out.w = ip.w;
    out.lo = ip.lo;
    out.hi = ip.hi;
    st = FoldStage{};
    st.bound_rows = si.bound_rows;
    st.constant_rows = si.constant_rows;
    for (int i : si.constant_rows) {
        const auto& r = ip.rows[i];
        bool ok = r.rel == Relation::eq ? sgn(r.rhs) == 0 : sgn(r.rhs) >= 0;
        if (!ok && !st.infeasible) {
            st.infeasible = true;
            st.reason = "row " + std::to_string(i) + " reads 0 " + (r.rel == Relation::eq ? "=" : "<=") + " " +
                        r.rhs.get_str();
        }
    }
    auto tighten_hi = [&](int j, const mpz_class& v) {
        if (!out.hi[j] || v < *out.hi[j]) out.hi[j] = v;
    };
    auto tighten_lo = [&](int j, const mpz_class& v) {
        if (!out.lo[j] || v > *out.lo[j]) out.lo[j] = v;
    };
    for (int i : si.bound_rows) {
        const auto& r = ip.rows[i];
        const int j = r.coef[0].first;
        // a * x_j (rel) rhs with a = +-1, i.e. x_j (rel) a * rhs or the reverse
        const mpz_class v = r.coef[0].second * r.rhs;
        if (r.rel == Relation::eq) {
            tighten_lo(j, v);
            tighten_hi(j, v);
        } else if (sgn(r.coef[0].second) > 0) {
            tighten_hi(j, v);
        } else {
            tighten_lo(j, v);
        }
    }
    for (int i = 0; i < ip.num_rows(); ++i)
        if (ip.rows[i].coef.size() == 2) {
            out.rows.push_back(ip.rows[i]);
            st.row_source.push_back(i);
        }
    for (int j = 0; j < ip.n && !st.infeasible; ++j)
        if (out.lo[j] && out.hi[j] && *out.lo[j] > *out.hi[j]) {
            st.infeasible = true;
            st.reason = "bounds of column " + std::to_string(j) + " are empty";
        }
    return out;
}

struct BoundResult {
    IpStatus status = IpStatus::infeasible; // optimal: `program` has finite bounds
    IntegerProgram program;
    WindowStage window;
};

// Solves the LP relaxation and clips every column to x_bar +- n * Delta_hat
// (rounded outward), where Delta_hat bounds the subdeterminants: 2^OCP for a
// {-1,0,1} matrix with two entries per row, capped by ceil(n^(n/2)). Some
// optimal integer point lies in this window whenever one exists.
inline BoundResult bound_variables(const IntegerProgram& ip, bool zero_objective = false) {
    recognize(ip);
    BoundResult res;
    res.window.zero_objective = zero_objective;
    LinearProgram lp = lp_relaxation(ip);
    if (zero_objective) std::fill(lp.obj.begin(), lp.obj.end(), mpq_class(0));
    LpResult r = lp_solve(lp);
    res.window.lp_status = r.status;
    if (r.status == LpStatus::infeasible) {
        res.status = IpStatus::infeasible;
        return res;
    }
    if (r.status == LpStatus::unbounded) {
        res.status = IpStatus::unbounded;
        res.program = ip;
        return res;
    }
    res.window.xbar = r.x;
    res.window.hadamard = hadamard_bound(ip.n);
    mpz_class delta = res.window.hadamard;
    try {
        SubdetAnalysis sa = subdet_analysis(constraint_matrix(ip));
        res.window.ocp = sa.ocp;
        res.window.subdet_bound = sa.bound;
        delta = std::min(delta, sa.bound);
    } catch (const InstanceTooLarge&) {
        res.window.ocp = -1; // keep the Hadamard bound alone
    }
    if (delta < 1) delta = 1;
    res.window.delta_hat = delta;
    res.window.radius = delta * ip.n;
    res.program = ip;
    for (int j = 0; j < ip.n; ++j) {
        mpz_class lo = detail::floor_q(r.x[j] - mpq_class(res.window.radius));
        mpz_class hi = detail::ceil_q(r.x[j] + mpq_class(res.window.radius));
        if (ip.lo[j] && *ip.lo[j] > lo) lo = *ip.lo[j];
        if (ip.hi[j] && *ip.hi[j] < hi) hi = *ip.hi[j];
        res.program.lo[j] = lo;
        res.program.hi[j] = hi;
        res.window.lo.push_back(lo);
        res.window.hi.push_back(hi);
    }
    res.status = IpStatus::optimal;
    return res;
}

struct PositiveResult {
    IntegerProgram program;
    PositiveStage trace;
};

// Rewrites x_i - x_j <= b as {x_i + y <= b, x_j + y = 0} and -x_i - x_j <= b
// as {z + z' <= b, x_i + z = 0, x_j + z' = 0} (same for equalities), so that
// every entry becomes +1. Fresh columns come after the original ones, with
// the negated bounds of their partner and objective 0. Parallel <= rows are
// merged into the strictest one.
inline PositiveResult to_positive_coefficients(const IntegerProgram& ip) {
    ip.check();
    detail::require_bounded(ip, "to_positive_coefficients");
    detail::require_two_entry_rows(ip, "to_positive_coefficients");
    recognize(ip);
    PositiveResult res;
    IntegerProgram& out = res.program;
    out = IntegerProgram(ip.n);
    out.w = ip.w;
    out.lo = ip.lo;
    out.hi = ip.hi;
    res.trace.original_columns = ip.n;

    auto fresh = [&](int partner, const char* kind, int row) {
        const int c = out.n++;
        out.w.emplace_back(0);
        out.lo.emplace_back(-*ip.hi[partner]);
        out.hi.emplace_back(-*ip.lo[partner]);
        res.trace.fresh.push_back({c, kind, row, partner});
        return c;
    };
    std::vector<IpRow> rows;
    std::vector<int> source;
    auto emit = [&](int a, int b, Relation rel, const mpz_class& rhs, int row) {
        IpRow r;
        r.coef = {{std::min(a, b), mpz_class(1)}, {std::max(a, b), mpz_class(1)}};
        r.rel = rel;
        r.rhs = rhs;
        rows.push_back(std::move(r));
        source.push_back(row);
    };
    for (int i = 0; i < ip.num_rows(); ++i) {
        const auto& r = ip.rows[i];
        const auto [ci, ai] = r.coef[0];
        const auto [cj, aj] = r.coef[1];
        if (sgn(ai) > 0 && sgn(aj) > 0) {
            emit(ci, cj, r.rel, r.rhs, i);
        } else if (sgn(ai) > 0 || sgn(aj) > 0) {
            const int pos = sgn(ai) > 0 ? ci : cj, neg = sgn(ai) > 0 ? cj : ci;
            const int y = fresh(neg, "y", i);
            emit(pos, y, r.rel, r.rhs, i);
            emit(neg, y, Relation::eq, 0, i);
        } else {
            const int z = fresh(ci, "z", i);
            const int z2 = fresh(cj, "z'", i);
            emit(z, z2, r.rel, r.rhs, i);
            emit(ci, z, Relation::eq, 0, i);
            emit(cj, z2, Relation::eq, 0, i);
        }
    }
    std::map<std::pair<int, int>, int> seen; // le rows by column pair -> output row
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        if (r.rel == Relation::le) {
            const std::pair<int, int> key{r.coef[0].first, r.coef[1].first};
            auto it = seen.find(key);
            if (it != seen.end()) {
                IpRow& kept = out.rows[it->second];
                if (r.rhs < kept.rhs) kept.rhs = r.rhs;
                res.trace.merged_rows.emplace_back(source[k], it->second);
                continue;
            }
            seen.emplace(key, out.num_rows());
        }
        out.rows.push_back(r);
        res.trace.row_source.push_back(source[k]);
    }
    return res;
}

struct PenaltyResult {
    IntegerProgram program;
    PenaltyStage trace;
};

// Equalities A_2 x = b_2 become A_2 x <= b_2 and the objective becomes
// w + mu * 1^T A_2 with mu larger than the spread of w over the box; an
// optimum of the result meets the equalities whenever some feasible point
// of the source does.
inline PenaltyResult eliminate_equalities(const IntegerProgram& ip) {
    ip.check();
    detail::require_bounded(ip, "eliminate_equalities");
    PenaltyResult res;
    res.trace.mu = 1;
    for (int j = 0; j < ip.n; ++j) res.trace.mu += abs(ip.w[j]) * (*ip.hi[j] - *ip.lo[j]);
    res.program = ip;
    res.trace.wbar = ip.w;
    for (int i = 0; i < ip.num_rows(); ++i) {
        auto& r = res.program.rows[i];
        if (r.rel != Relation::eq) continue;
        res.trace.eq_rows.push_back(i);
        r.rel = Relation::le;
        for (const auto& [j, a] : r.coef) res.trace.wbar[j] += res.trace.mu * a;
    }
    res.program.w = res.trace.wbar;
    return res;
}

// Rounding stage for max w^T x s.t. x_i + x_j <= b_ij, lo <= x <= hi.
inline RoundStage round_and_clean(const IntegerProgram& ip) {
    ip.check();
    detail::require_bounded(ip, "round_and_clean");
    detail::require_two_entry_rows(ip, "round_and_clean");
    for (const auto& r : ip.rows) {
        if (r.rel != Relation::le) throw InvalidInput("not-packing", "round_and_clean expects <= rows only");
        for (const auto& e : r.coef)
            if (e.second != 1) throw InvalidInput("not-packing", "round_and_clean expects 0/1 rows");
    }
    RoundStage st;
    LpResult lp = lp_solve(lp_relaxation(ip));
    if (lp.status == LpStatus::infeasible) {
        st.infeasible = true;
        st.reason = "LP relaxation infeasible";
        return st;
    }
    if (lp.status != LpStatus::optimal) throw std::logic_error("bounded LP reported unbounded");
    st.xstar = lp.x;
    st.half_integral = std::all_of(st.xstar.begin(), st.xstar.end(),
                                   [](const mpq_class& v) { return mpq_class(2 * v).get_den() == 1; });
    if (!st.half_integral) throw std::logic_error("extremal LP optimum is not half-integral");

    const int n = ip.n;
    // translated column domains are {0} or {0, 1}
    std::vector<int> value(static_cast<std::size_t>(n), -1); // -1 free, else fixed
    auto fix = [&](int j, int v, const std::string& why) {
        value[j] = v;
        st.fixed.push_back({j, v, why});
    };
    for (int j = 0; j < n; ++j) {
        st.shift.push_back(detail::floor_q(st.xstar[j]));
        if (*ip.hi[j] - st.shift[j] == 0) fix(j, 0, "upper bound");
    }
    std::vector<mpz_class> rhs;
    for (const auto& r : ip.rows) rhs.push_back(r.rhs - st.shift[r.coef[0].first] - st.shift[r.coef[1].first]);

    // Trivial rows; columns with non-positive weight can be set to 0 without
    // loss since every row is a packing constraint.
    std::vector<char> active(ip.rows.size(), 1);
    auto sweep = [&]() -> bool {
        bool changed = false;
        for (std::size_t i = 0; i < ip.rows.size(); ++i) {
            if (!active[i]) continue;
            const int a = ip.rows[i].coef[0].first, b = ip.rows[i].coef[1].first;
            mpz_class room = rhs[i];
            int nfree = 0;
            for (int c : {a, b}) {
                if (value[c] < 0)
                    ++nfree;
                else
                    room -= value[c];
            }
            if (sgn(room) < 0) {
                st.infeasible = true;
                st.reason = "row " + std::to_string(i) + " cannot be met after translation";
                return false;
            }
            if (nfree == 0 || room >= nfree) {
                active[i] = 0;
                st.dropped_rows.push_back(static_cast<int>(i));
                changed = true;
            } else if (sgn(room) == 0) {
                for (int c : {a, b})
                    if (value[c] < 0) fix(c, 0, "row " + std::to_string(i) + " has right-hand side 0");
                active[i] = 0;
                st.dropped_rows.push_back(static_cast<int>(i));
                changed = true;
            }
        }
        return changed;
    };
    while (sweep()) {
    }
    if (st.infeasible) return st;
    for (int j = 0; j < n; ++j)
        if (value[j] < 0 && sgn(ip.w[j]) <= 0) fix(j, 0, "non-positive weight");
    while (sweep()) {
    }
    if (st.infeasible) return st;

    std::vector<int> local(static_cast<std::size_t>(n), -1);
    for (int j = 0; j < n; ++j)
        if (value[j] < 0) {
            local[j] = static_cast<int>(st.free_columns.size());
            st.free_columns.push_back(j);
        }
    Graph g(static_cast<int>(st.free_columns.size()));
    for (std::size_t i = 0; i < ip.rows.size(); ++i)
        if (active[i]) g.add_edge_if_absent(local[ip.rows[i].coef[0].first], local[ip.rows[i].coef[1].first]);
    std::vector<Weight> w;
    mpz_class total = 0;
    for (int j : st.free_columns) {
        total += ip.w[j];
        if (total > kMaxTotalWeight) throw InstanceTooLarge("penalized weights exceed the MWIS weight range", "overflow");
        w.push_back(static_cast<Weight>(ip.w[j].get_si()));
    }
    st.mwis = WeightedGraph(std::move(g), std::move(w));
    return st;
}

// Exact MWIS: the OCP-tree-decomposition DP over a tame decomposition derived
// from a min-fill tree-decomposition when that is narrow, else branch and bound.
inline MwisStage solve_mwis_instance(const WeightedGraph& wg, const IpOptions& opt = {}) {
    MwisStage st;
    if (wg.graph.num_vertices() == 0) {
        st.backend = "empty";
        return st;
    }
    TreeDecomposition td = min_fill_tree_decomposition(wg.graph);
    if (td.width() <= opt.dp_max_width) {
        DpOptions dopt;
        dopt.inner = opt.mwis;
        st.result = dp_solve(wg, from_tree_decomposition(wg.graph, td), dopt);
        st.backend = "dp_solve";
    } else {
        st.result = mwis_bounded_ocp(wg, opt.mwis);
        st.backend = "mwis_bounded_ocp";
    }
    return st;
}

namespace detail {

// Solves a program with two-entry rows and finite bounds; returns an optimal
// point or nothing if there is no integer point.
inline std::optional<std::vector<mpz_class>> solve_windowed(const IntegerProgram& ip, ReductionTrace& tr,
                                                            const IpOptions& opt) {
    tr.last_stage = "positive";
    PositiveResult pos = stage("positive", [&] { return to_positive_coefficients(ip); });
    tr.positive = pos.trace;
    tr.last_stage = "penalty";
    PenaltyResult pen = stage("penalty", [&] { return eliminate_equalities(pos.program); });
    tr.penalty = pen.trace;
    tr.last_stage = "round";
    tr.round = stage("round", [&] { return round_and_clean(pen.program); });
    if (tr.round.infeasible) return std::nullopt;
    tr.last_stage = "mwis";
    tr.mwis = stage("mwis", [&] { return solve_mwis_instance(tr.round.mwis, opt); });

    // lift: translated 0/1 values plus floor(x*)
    const int n2 = pen.program.n;
    std::vector<int> bit(static_cast<std::size_t>(n2), 0);
    for (const auto& f : tr.round.fixed) bit[f.column] = f.value;
    for (Vertex v : tr.mwis.result.witness) bit[tr.round.free_columns[v]] = 1;
    tr.lifted.clear();
    for (int j = 0; j < n2; ++j) tr.lifted.push_back(tr.round.shift[j] + bit[j]);
    if (!is_feasible(pen.program, tr.lifted)) throw std::logic_error("lifted point violates the penalized program");

    tr.last_stage = "guard";
    for (int i : tr.penalty.eq_rows)
        if (!satisfies_row(pos.program.rows[i], tr.lifted)) return std::nullopt;
    tr.equality_guard_passed = true;
    if (!is_feasible(pos.program, tr.lifted)) throw std::logic_error("lifted point violates the rewritten program");
    std::vector<mpz_class> x(tr.lifted.begin(), tr.lifted.begin() + ip.n);
    if (!is_feasible(ip, x)) throw std::logic_error("lifted point violates the windowed program");
    return x;
}

} // namespace detail

inline IpSolution solve_ip(const IntegerProgram& ip, const IpOptions& opt = {}) {
    IpSolution sol;
    ReductionTrace& tr = sol.trace;
    tr.columns = ip.n;
    tr.rows = ip.num_rows();
    tr.last_stage = "fold";
    IntegerProgram folded = detail::stage("fold", [&] {
        ip.check();
        return fold_bound_rows(ip, tr.fold);
    });
    if (tr.fold.infeasible) return sol;

    tr.last_stage = "window";
    BoundResult br = detail::stage("window", [&] { return bound_variables(folded); });
    if (br.status == IpStatus::unbounded) {
        // The LP is unbounded, so the program is unbounded iff it has an
        // integer point at all; decide that with the zero objective.
        tr.zero_objective_rerun = true;
        br = detail::stage("window", [&] { return bound_variables(folded, true); });
    }
    tr.window = br.window;
    if (br.status == IpStatus::infeasible) return sol;
    if (br.status != IpStatus::optimal) throw std::logic_error("zero-objective LP is unbounded");

    auto x = detail::solve_windowed(br.program, tr, opt);
    tr.last_stage = "done";
    if (!x) return sol;
    if (!is_feasible(ip, *x)) throw std::logic_error("lifted point violates the input program");
    sol.x = std::move(*x);
    if (tr.zero_objective_rerun) {
        sol.status = IpStatus::unbounded;
    } else {
        sol.status = IpStatus::optimal;
        sol.value = objective_value(ip, sol.x);
    }
    return sol;
}

} // namespace oddwidth
