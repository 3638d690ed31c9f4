#include <cstdio>
#include "acrelax/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace acrelax::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDualTol = 1e-9;
constexpr double kPivTol = 1e-10;
constexpr double kRatioTie = 1e-9;
constexpr double kPhase1Tol = 1e-7;

enum class VStat : unsigned char { Basic, AtLower, AtUpper };

struct Tableau {
    int m = 0, n = 0;
    std::vector<double> a;            // dense m x n, equals B^-1 A throughout
    std::vector<double> xb;           // basic variable values per row
    std::vector<int> basis;           // basic column per row
    std::vector<VStat> stat;          // per column
    std::vector<double> lb, ub, val;  // val = resting value of nonbasic columns
    std::vector<bool> barred;         // never eligible to enter (artificials)

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
    }
    double& at(int i, int j) { return a[idx(i, j)]; }
    double at(int i, int j) const { return a[idx(i, j)]; }
};

double objective_of(const Tableau& t, const std::vector<double>& cost) {
    double z = 0.0;
    for (int j = 0; j < t.n; ++j) {
        const double c = cost[static_cast<std::size_t>(j)];
        if (c != 0.0 && t.stat[static_cast<std::size_t>(j)] != VStat::Basic)
            z += c * t.val[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < t.m; ++i)
        z += cost[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])] * t.xb[static_cast<std::size_t>(i)];
    return z;
}

LpStatus run_phase(Tableau& t, const std::vector<double>& cost, int max_iter, int& iters,
                   bool force_bland) {
    const int m = t.m, n = t.n;
    std::vector<double> y(static_cast<std::size_t>(m));
    std::vector<double> d(static_cast<std::size_t>(n));
    bool bland = force_bland;
    int stall = 0;
    double best_obj = kInf;
    const int stall_limit = 2 * (m + n) + 50;

    for (;; ++iters) {
        if (iters >= max_iter) return LpStatus::IterLimit;

        for (int i = 0; i < m; ++i)
            y[static_cast<std::size_t>(i)] = cost[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])];
        for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
        for (int i = 0; i < m; ++i) {
            const double yi = y[static_cast<std::size_t>(i)];
            if (yi == 0.0) continue;
            const double* row = &t.a[t.idx(i, 0)];
            for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j)] -= yi * row[j];
        }

        int enter = -1;
        double enter_dir = 0.0;
        double best_score = -kDualTol;
        for (int j = 0; j < n; ++j) {
            const VStat sj = t.stat[static_cast<std::size_t>(j)];
            if (sj == VStat::Basic || t.barred[static_cast<std::size_t>(j)]) continue;
            if (t.lb[static_cast<std::size_t>(j)] == t.ub[static_cast<std::size_t>(j)]) continue;
            const double dir = sj == VStat::AtLower ? 1.0 : -1.0;
            const double score = d[static_cast<std::size_t>(j)] * dir;
            if (score < best_score) {
                best_score = score;
                enter = j;
                enter_dir = dir;
                if (bland) break;  // first eligible index wins under Bland
            }
        }
        if (enter < 0) return LpStatus::Optimal;

        // Two-pass (Harris) ratio test along x_enter moving by enter_dir:
        // pass 1 finds the relaxed step limit, pass 2 picks the largest
        // pivot among rows whose exact ratio fits under it.
        const double gap = t.ub[static_cast<std::size_t>(enter)] - t.lb[static_cast<std::size_t>(enter)];
        constexpr double kFeasTol = 1e-9;
        double limit = gap;
        for (int i = 0; i < m; ++i) {
            const double coef = t.at(i, enter) * enter_dir;
            if (std::fabs(coef) <= kPivTol) continue;
            const int bj = t.basis[static_cast<std::size_t>(i)];
            double r;
            if (coef > 0.0) {
                const double l = t.lb[static_cast<std::size_t>(bj)];
                if (l == -kInf) continue;
                r = (t.xb[static_cast<std::size_t>(i)] - l + kFeasTol) / coef;
            } else {
                const double u = t.ub[static_cast<std::size_t>(bj)];
                if (u == kInf) continue;
                r = (t.xb[static_cast<std::size_t>(i)] - u - kFeasTol) / coef;
            }
            limit = std::min(limit, std::max(r, 0.0));
        }

        if (limit == kInf) return LpStatus::Unbounded;

        int leave_row = -1;
        bool leave_at_upper = false;
        double tmax = gap;
        {
            // pass 2a: the largest pivot magnitude among rows under the limit
            double max_piv = 0.0;
            for (int i = 0; i < m; ++i) {
                const double coef = t.at(i, enter) * enter_dir;
                if (std::fabs(coef) <= kPivTol) continue;
                const int bj = t.basis[static_cast<std::size_t>(i)];
                double ratio;
                if (coef > 0.0) {
                    const double l = t.lb[static_cast<std::size_t>(bj)];
                    if (l == -kInf) continue;
                    ratio = (t.xb[static_cast<std::size_t>(i)] - l) / coef;
                } else {
                    const double u = t.ub[static_cast<std::size_t>(bj)];
                    if (u == kInf) continue;
                    ratio = (t.xb[static_cast<std::size_t>(i)] - u) / coef;
                }
                if (std::max(ratio, 0.0) > limit) continue;
                max_piv = std::max(max_piv, std::fabs(coef));
            }
            // pass 2b: pick the row (Bland: lowest basis index among rows with a
            // usable pivot; Dantzig: the largest pivot)
            double best_piv = 0.0;
            for (int i = 0; i < m; ++i) {
                const double coef = t.at(i, enter) * enter_dir;
                if (std::fabs(coef) <= kPivTol) continue;
                const int bj = t.basis[static_cast<std::size_t>(i)];
                double ratio;
                bool hits_upper;
                if (coef > 0.0) {
                    const double l = t.lb[static_cast<std::size_t>(bj)];
                    if (l == -kInf) continue;
                    ratio = (t.xb[static_cast<std::size_t>(i)] - l) / coef;
                    hits_upper = false;
                } else {
                    const double u = t.ub[static_cast<std::size_t>(bj)];
                    if (u == kInf) continue;
                    ratio = (t.xb[static_cast<std::size_t>(i)] - u) / coef;
                    hits_upper = true;
                }
                if (ratio < 0.0) ratio = 0.0;
                if (ratio > limit) continue;
                if (std::fabs(coef) < 0.05 * max_piv) continue;  // reject fragile pivots
                const bool prefer =
                    leave_row < 0 ||
                    (bland ? t.basis[static_cast<std::size_t>(i)] <
                                 t.basis[static_cast<std::size_t>(leave_row)]
                           : std::fabs(coef) > best_piv);
                if (prefer) {
                    leave_row = i;
                    leave_at_upper = hits_upper;
                    tmax = ratio;
                    best_piv = std::fabs(coef);
                }
            }
        }

        if (leave_row < 0 && gap == kInf) return LpStatus::Unbounded;

        if (leave_row < 0 || (gap < kInf && gap <= limit)) {
            // bound flip only
            for (int i = 0; i < m; ++i)
                t.xb[static_cast<std::size_t>(i)] -= t.at(i, enter) * enter_dir * gap;
            const VStat ns =
                t.stat[static_cast<std::size_t>(enter)] == VStat::AtLower ? VStat::AtUpper : VStat::AtLower;
            t.stat[static_cast<std::size_t>(enter)] = ns;
            t.val[static_cast<std::size_t>(enter)] = ns == VStat::AtLower
                                                         ? t.lb[static_cast<std::size_t>(enter)]
                                                         : t.ub[static_cast<std::size_t>(enter)];
        } else {
            const double enter_val = t.val[static_cast<std::size_t>(enter)] + enter_dir * tmax;
            for (int i = 0; i < m; ++i)
                if (i != leave_row) t.xb[static_cast<std::size_t>(i)] -= t.at(i, enter) * enter_dir * tmax;
            const int leaving = t.basis[static_cast<std::size_t>(leave_row)];
            t.stat[static_cast<std::size_t>(leaving)] = leave_at_upper ? VStat::AtUpper : VStat::AtLower;
            t.val[static_cast<std::size_t>(leaving)] = leave_at_upper
                                                           ? t.ub[static_cast<std::size_t>(leaving)]
                                                           : t.lb[static_cast<std::size_t>(leaving)];
            const double piv = t.at(leave_row, enter);
            double* prow = &t.a[t.idx(leave_row, 0)];
            const double inv = 1.0 / piv;
            for (int j = 0; j < n; ++j) prow[j] *= inv;
            for (int i = 0; i < m; ++i) {
                if (i == leave_row) continue;
                const double f = t.at(i, enter);
                if (f == 0.0) continue;
                double* row = &t.a[t.idx(i, 0)];
                for (int j = 0; j < n; ++j) row[j] -= f * prow[j];
                t.at(i, enter) = 0.0;
            }
            t.basis[static_cast<std::size_t>(leave_row)] = enter;
            t.stat[static_cast<std::size_t>(enter)] = VStat::Basic;
            t.xb[static_cast<std::size_t>(leave_row)] = enter_val;
        }

        const double z = objective_of(t, cost);
        if (z < best_obj - 1e-12) {
            best_obj = z;
            stall = 0;
        } else if (!bland && ++stall > stall_limit) {
            bland = true;
            stall = 0;
        }
    }
}

}  // namespace

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterLimit: return "iteration-limit";
        case LpStatus::Numerical: return "numerical";
    }
    return "?";
}

namespace {
LpResult solve_once(const LinearProgram& lp, bool force_bland);
}

LpResult lp_solve(const LinearProgram& lp) {
    LpResult res = solve_once(lp, false);
    if (res.status == LpStatus::Numerical || res.status == LpStatus::IterLimit) {
        // breakdown safety net: restart under Bland's rule
        LpResult retry = solve_once(lp, true);
        retry.iterations += res.iterations;
        if (retry.status == LpStatus::Optimal || retry.status == LpStatus::Infeasible) return retry;
        if (res.status == LpStatus::Numerical) return res;
        return retry;
    }
    return res;
}

namespace {
LpResult solve_once(const LinearProgram& lp, bool force_bland) {
    LpResult res;
    const int n0 = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());
    for (int j = 0; j < n0; ++j) {
        const double l = lp.lb[static_cast<std::size_t>(j)], u = lp.ub[static_cast<std::size_t>(j)];
        if (!std::isfinite(l) || !std::isfinite(u))
            throw std::invalid_argument("lp_solve: structural variable bounds must be finite");
        if (l > u) {
            res.status = LpStatus::Infeasible;
            res.note = "variable " + std::to_string(j) + " has crossed bounds";
            return res;
        }
    }

    Tableau t;
    t.m = m;
    t.n = n0 + 2 * m;  // structural | slack per row | artificial per row
    t.a.assign(static_cast<std::size_t>(t.m) * static_cast<std::size_t>(t.n), 0.0);
    t.lb.assign(static_cast<std::size_t>(t.n), 0.0);
    t.ub.assign(static_cast<std::size_t>(t.n), 0.0);
    t.val.assign(static_cast<std::size_t>(t.n), 0.0);
    t.stat.assign(static_cast<std::size_t>(t.n), VStat::AtLower);
    t.barred.assign(static_cast<std::size_t>(t.n), false);
    t.basis.assign(static_cast<std::size_t>(std::max(m, 0)), -1);
    t.xb.assign(static_cast<std::size_t>(std::max(m, 0)), 0.0);

    for (int j = 0; j < n0; ++j) {
        const double l = lp.lb[static_cast<std::size_t>(j)], u = lp.ub[static_cast<std::size_t>(j)];
        t.lb[static_cast<std::size_t>(j)] = l;
        t.ub[static_cast<std::size_t>(j)] = u;
        const bool lower = l >= 0.0 || (u > 0.0 && -l <= u);
        t.stat[static_cast<std::size_t>(j)] = lower ? VStat::AtLower : VStat::AtUpper;
        t.val[static_cast<std::size_t>(j)] = lower ? l : u;
    }

    std::vector<double> phase1(static_cast<std::size_t>(t.n), 0.0);
    std::vector<double> art_sign(static_cast<std::size_t>(std::max(m, 1)), 1.0);
    bool need_phase1 = false;
    for (int i = 0; i < m; ++i) {
        const Row& row = lp.rows[static_cast<std::size_t>(i)];
        for (const auto& term : row.terms) t.at(i, term.var) += term.coef;

        const int slack = n0 + i;
        const int art = n0 + m + i;
        switch (row.rel) {
            case Rel::Le: t.lb[static_cast<std::size_t>(slack)] = 0.0; t.ub[static_cast<std::size_t>(slack)] = kInf; break;
            case Rel::Ge: t.lb[static_cast<std::size_t>(slack)] = -kInf; t.ub[static_cast<std::size_t>(slack)] = 0.0; break;
            case Rel::Eq: t.lb[static_cast<std::size_t>(slack)] = 0.0; t.ub[static_cast<std::size_t>(slack)] = 0.0; break;
        }
        t.at(i, slack) = 1.0;
        t.barred[static_cast<std::size_t>(art)] = true;
        phase1[static_cast<std::size_t>(art)] = 1.0;

        double lhs = 0.0;
        for (const auto& term : row.terms)
            lhs += term.coef * t.val[static_cast<std::size_t>(term.var)];
        const double need = row.rhs - lhs;
        const double sv = std::clamp(need, t.lb[static_cast<std::size_t>(slack)], t.ub[static_cast<std::size_t>(slack)]);
        const double shortfall = need - sv;
        if (std::fabs(shortfall) <= 1e-12) {
            t.ub[static_cast<std::size_t>(art)] = 0.0;
            t.at(i, art) = 1.0;
            t.basis[static_cast<std::size_t>(i)] = slack;
            t.stat[static_cast<std::size_t>(slack)] = VStat::Basic;
            t.xb[static_cast<std::size_t>(i)] = need;
        } else {
            need_phase1 = true;
            t.ub[static_cast<std::size_t>(art)] = kInf;
            const double sigma = shortfall > 0.0 ? 1.0 : -1.0;
            art_sign[static_cast<std::size_t>(i)] = sigma;
            t.at(i, art) = sigma;
            t.stat[static_cast<std::size_t>(slack)] =
                sv <= t.lb[static_cast<std::size_t>(slack)] ? VStat::AtLower : VStat::AtUpper;
            t.val[static_cast<std::size_t>(slack)] = sv;
            t.basis[static_cast<std::size_t>(i)] = art;
            t.stat[static_cast<std::size_t>(art)] = VStat::Basic;
            t.xb[static_cast<std::size_t>(i)] = std::fabs(shortfall);
            if (sigma < 0.0) {
                double* arow = &t.a[t.idx(i, 0)];
                for (int j = 0; j < t.n; ++j) arow[j] = -arow[j];
            }
        }
    }

    const int max_iter = 20000 + 40 * (m + t.n);
    int iters = 0;

    if (need_phase1) {
        const LpStatus st = run_phase(t, phase1, max_iter, iters, force_bland);
        res.iterations = iters;
        if (st != LpStatus::Optimal) {
            res.status = LpStatus::Numerical;
            res.note = std::string("phase 1 ended with status ") + to_string(st);
            return res;
        }
        const double infeas = objective_of(t, phase1);
        if (infeas > kPhase1Tol) {
            // only a decisive residual certifies infeasibility; a marginal
            // one is reported as numerical so callers keep prior bounds
            res.status = infeas > 1e-4 ? LpStatus::Infeasible : LpStatus::Numerical;
            res.objective = infeas;
            res.note = "phase-1 residual " + std::to_string(infeas);
            return res;
        }
        for (int j = n0 + m; j < t.n; ++j) t.ub[static_cast<std::size_t>(j)] = 0.0;
        // pivot surviving artificials out of the basis where a usable column exists
        for (int i = 0; i < m; ++i) {
            const int bj = t.basis[static_cast<std::size_t>(i)];
            if (bj < n0 + m) continue;
            int piv_col = -1;
            double piv_mag = 1e-7;
            for (int j = 0; j < n0 + m; ++j) {
                if (t.stat[static_cast<std::size_t>(j)] == VStat::Basic) continue;
                const double v = std::fabs(t.at(i, j));
                if (v > piv_mag) {
                    piv_mag = v;
                    piv_col = j;
                }
            }
            if (piv_col < 0) continue;  // redundant row; artificial stays basic at ~0
            const double piv = t.at(i, piv_col);
            double* prow = &t.a[t.idx(i, 0)];
            const double inv = 1.0 / piv;
            for (int j = 0; j < t.n; ++j) prow[j] *= inv;
            for (int r = 0; r < m; ++r) {
                if (r == i) continue;
                const double f = t.at(r, piv_col);
                if (f == 0.0) continue;
                double* rrow = &t.a[t.idx(r, 0)];
                for (int j = 0; j < t.n; ++j) rrow[j] -= f * prow[j];
                t.at(r, piv_col) = 0.0;
            }
            t.stat[static_cast<std::size_t>(bj)] = VStat::AtLower;
            t.val[static_cast<std::size_t>(bj)] = 0.0;
            t.basis[static_cast<std::size_t>(i)] = piv_col;
            t.stat[static_cast<std::size_t>(piv_col)] = VStat::Basic;
            t.xb[static_cast<std::size_t>(i)] = t.val[static_cast<std::size_t>(piv_col)];
        }
    }

    std::vector<double> cost(static_cast<std::size_t>(t.n), 0.0);
    for (int j = 0; j < n0; ++j) cost[static_cast<std::size_t>(j)] = lp.cost[static_cast<std::size_t>(j)];
    const LpStatus st2 = run_phase(t, cost, max_iter, iters, force_bland);
    res.iterations = iters;
    if (st2 == LpStatus::Unbounded) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    if (st2 == LpStatus::IterLimit) {
        res.status = LpStatus::IterLimit;
        res.note = "simplex iteration limit";
        return res;
    }

    // Refactorization: re-solve the final basis system from the original
    // row data to shed the drift accumulated by tableau pivoting.
    if (m > 0) {
        const auto orig_coef = [&](int i, int j) -> double {
            if (j < n0) {
                double v = 0.0;
                for (const auto& term : lp.rows[static_cast<std::size_t>(i)].terms)
                    if (term.var == j) v += term.coef;
                return v;
            }
            if (j < n0 + m) return j - n0 == i ? 1.0 : 0.0;
            return j - (n0 + m) == i ? art_sign[static_cast<std::size_t>(i)] : 0.0;
        };
        std::vector<double> bmat(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
        std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
        for (int i = 0; i < m; ++i) {
            rhs[static_cast<std::size_t>(i)] = lp.rows[static_cast<std::size_t>(i)].rhs;
            for (int kk = 0; kk < m; ++kk)
                bmat[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(kk)] =
                    orig_coef(i, t.basis[static_cast<std::size_t>(kk)]);
        }
        for (int j = 0; j < t.n; ++j) {
            if (t.stat[static_cast<std::size_t>(j)] == VStat::Basic) continue;
            const double v = t.val[static_cast<std::size_t>(j)];
            if (v == 0.0) continue;
            for (int i = 0; i < m; ++i) rhs[static_cast<std::size_t>(i)] -= orig_coef(i, j) * v;
        }
        // dense LU with partial pivoting
        std::vector<int> perm(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
        bool singular = false;
        for (int c = 0; c < m && !singular; ++c) {
            int piv = c;
            double best = std::fabs(bmat[static_cast<std::size_t>(c) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)]);
            for (int r = c + 1; r < m; ++r) {
                const double v = std::fabs(bmat[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)]);
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (best < 1e-12) {
                singular = true;
                break;
            }
            if (piv != c) {
                for (int j = 0; j < m; ++j)
                    std::swap(bmat[static_cast<std::size_t>(piv) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)],
                              bmat[static_cast<std::size_t>(c) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)]);
                std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(c)]);
            }
            const double inv = 1.0 / bmat[static_cast<std::size_t>(c) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)];
            for (int r = c + 1; r < m; ++r) {
                const double f = bmat[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)] * inv;
                if (f == 0.0) continue;
                bmat[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)] = 0.0;
                for (int j = c + 1; j < m; ++j)
                    bmat[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] -=
                        f * bmat[static_cast<std::size_t>(c) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
                rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(c)];
            }
        }
#ifdef ACRELAX_LP_DEBUG
        if (singular) std::fprintf(stderr, "refinement skipped: singular basis\n");
#endif
        if (!singular) {
            for (int r = m - 1; r >= 0; --r) {
                double v = rhs[static_cast<std::size_t>(r)];
                for (int j = r + 1; j < m; ++j)
                    v -= bmat[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] *
                         t.xb[static_cast<std::size_t>(j)];
                t.xb[static_cast<std::size_t>(r)] =
                    v / bmat[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(r)];
            }
        }
    }

#ifdef ACRELAX_LP_DEBUG
    {
        std::vector<int> cnt(static_cast<std::size_t>(t.n), 0);
        for (int i = 0; i < m; ++i) cnt[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])]++;
        for (int j = 0; j < t.n; ++j)
            if (cnt[static_cast<std::size_t>(j)] > 1) std::fprintf(stderr, "DUP basis col %d x%d\n", j, cnt[static_cast<std::size_t>(j)]);
        for (int i = 0; i < m; ++i) {
            const int bj = t.basis[static_cast<std::size_t>(i)];
            const double v = t.xb[static_cast<std::size_t>(i)];
            if (v < t.lb[static_cast<std::size_t>(bj)] - 1e-6 || v > t.ub[static_cast<std::size_t>(bj)] + 1e-6)
                std::fprintf(stderr, "OOB basic row %d col %d val %.6e in [%.3e, %.3e]\n", i, bj, v,
                             t.lb[static_cast<std::size_t>(bj)], t.ub[static_cast<std::size_t>(bj)]);
        }
    }
#endif
    res.x.assign(static_cast<std::size_t>(n0), 0.0);
    for (int j = 0; j < n0; ++j) res.x[static_cast<std::size_t>(j)] = t.val[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i) {
        const int bj = t.basis[static_cast<std::size_t>(i)];
        if (bj < n0) res.x[static_cast<std::size_t>(bj)] = t.xb[static_cast<std::size_t>(i)];
    }
    double z = lp.cost_const;
    for (int j = 0; j < n0; ++j)
        z += lp.cost[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
    res.objective = z;

    double worst = 0.0;
    for (const auto& row : lp.rows) {
        double lhs = 0.0;
        for (const auto& term : row.terms)
            lhs += term.coef * res.x[static_cast<std::size_t>(term.var)];
        const double viol = row.rel == Rel::Le   ? lhs - row.rhs
                            : row.rel == Rel::Ge ? row.rhs - lhs
                                                 : std::fabs(lhs - row.rhs);
        worst = std::max(worst, viol);
    }
    for (int j = 0; j < n0; ++j) {
        worst = std::max(worst, lp.lb[static_cast<std::size_t>(j)] - res.x[static_cast<std::size_t>(j)]);
        worst = std::max(worst, res.x[static_cast<std::size_t>(j)] - lp.ub[static_cast<std::size_t>(j)]);
    }
    if (worst > 1e-6) {
        res.status = LpStatus::Numerical;
        res.note = "solution residual " + std::to_string(worst);
        return res;
    }
    res.status = LpStatus::Optimal;
    return res;
}
}  // namespace

}  // namespace acrelax::lp
