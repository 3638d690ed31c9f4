#include "acrelax/oa.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace acrelax {

namespace {
// Debug aid: ACRELAX_LP_DUMP=<path> writes any LP the simplex could not
// solve cleanly, for offline replay.
void maybe_dump(const lp::LinearProgram& lp) {
    const char* path = std::getenv("ACRELAX_LP_DUMP");
    if (!path) return;
    std::FILE* f = std::fopen(path, "w");
    if (!f) return;
    std::fprintf(f, "%d %zu\n", lp.num_vars, lp.rows.size());
    for (int j = 0; j < lp.num_vars; ++j)
        std::fprintf(f, "%.17g %.17g %.17g\n", lp.lb[static_cast<std::size_t>(j)],
                     lp.ub[static_cast<std::size_t>(j)], lp.cost[static_cast<std::size_t>(j)]);
    for (const auto& row : lp.rows) {
        std::fprintf(f, "%zu %d %.17g", row.terms.size(), static_cast<int>(row.rel), row.rhs);
        for (const auto& t : row.terms) std::fprintf(f, " %d %.17g", t.var, t.coef);
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}
}  // namespace

OaSolver::OaSolver(lp::LinearProgram base, std::vector<ConvexOracle> oracles,
                   std::vector<LinTerm> objective, double obj_const)
    : lp_(std::move(base)),
      oracles_(std::move(oracles)),
      default_obj_(std::move(objective)),
      default_const_(obj_const),
      base_rows_(static_cast<int>(lp_.rows.size())) {}

SolveReport OaSolver::minimize(const SolveParams& params) {
    return minimize(default_obj_, default_const_, params);
}

SolveReport OaSolver::minimize(const std::vector<LinTerm>& objective, double obj_const,
                               const SolveParams& params) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    lp_.cost.assign(static_cast<std::size_t>(lp_.num_vars), 0.0);
    for (const auto& term : objective) lp_.cost[static_cast<std::size_t>(term.var)] += term.coef;
    lp_.cost_const = obj_const;

    // keep the LP bounded across repeated solves: evict the oldest pooled
    // cuts (dropping any cut keeps the LP a valid relaxation)
    const int pooled = static_cast<int>(lp_.rows.size()) - base_rows_;
    if (pooled > cut_pool_cap_) {
        const auto first = lp_.rows.begin() + base_rows_;
        lp_.rows.erase(first, first + (pooled - cut_pool_cap_));
    }

    std::deque<double> recent;
    std::vector<LinTerm> grad;
    for (int it = 1; it <= params.max_iter; ++it) {
        rep.iterations = it;
        const lp::LpResult sol = lp::lp_solve(lp_);
        if (sol.status != lp::LpStatus::Optimal) {
            rep.status = lp::to_string(sol.status);
            // a later-iteration failure keeps the previous LP's valid bound
            if (it == 1) rep.lower_bound = sol.objective;
            if (sol.status != lp::LpStatus::Infeasible) maybe_dump(lp_);
            break;
        }
        rep.lower_bound = sol.objective;
        rep.bound_valid = true;
        rep.point = sol.x;

        double max_violation = 0.0;
        int added = 0;
        for (const auto& oracle : oracles_) {
            grad.clear();
            const double f = oracle.eval(sol.x, grad);
            if (f > max_violation) max_violation = f;
            if (f > params.tol_viol) {
                // supporting hyperplane: f(x*) + g'(x - x*) <= 0
                double rhs = -f;
                for (const auto& term : grad)
                    rhs += term.coef * sol.x[static_cast<std::size_t>(term.var)];
                lp_.rows.push_back(lp::Row{grad, Rel::Le, rhs});
                ++added;
            }
        }
        rep.cuts_added += added;
        if (params.collect_trace)
            rep.trace.push_back(TraceRow{it, sol.objective, max_violation, added});

        if (added == 0) {
            rep.status = "optimal";
            break;
        }
        recent.push_back(sol.objective);
        if (static_cast<int>(recent.size()) > params.stall_window) recent.pop_front();
        if (static_cast<int>(recent.size()) == params.stall_window &&
            recent.back() - recent.front() <
                params.tol_rel * std::max(1.0, std::fabs(recent.back()))) {
            rep.status = "stalled";
            break;
        }
        if (it == params.max_iter) rep.status = "iteration-limit";
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

const char* csv_trace_header() { return "iter,lp_obj,max_violation,cuts_added"; }

std::string csv_trace(const std::vector<TraceRow>& rows) {
    std::ostringstream os;
    os << csv_trace_header() << "\n";
    os.precision(17);
    for (const auto& r : rows)
        os << r.iter << "," << r.lp_obj << "," << r.max_violation << "," << r.cuts_added << "\n";
    return os.str();
}

}  // namespace acrelax
