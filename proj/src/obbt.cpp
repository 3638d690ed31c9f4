#include "acrelax/obbt.hpp"

#include <algorithm>
#include <cmath>

namespace acrelax {

namespace {

// One directional subproblem: a valid lower bound on min(sign * x_var).
// Kelley bounds are outer, so the result is sound even unconverged; a
// solve with no valid LP bound leaves the old bound untouched.
struct SubResult {
    bool infeasible = false;
    bool usable = false;
    double bound = 0.0;
};

SubResult probe(OaSolver& solver, int var, double sign, const SolveParams& sp) {
    SubResult r;
    const SolveReport rep = solver.minimize({{var, sign}}, 0.0, sp);
    if (rep.status == "infeasible") {
        r.infeasible = true;
        return r;
    }
    r.usable = rep.bound_valid;
    r.bound = rep.lower_bound;
    return r;
}

}  // namespace

ObbtReport tighten(const Network& n, ModelKind kind, const BoundSet& initial,
                   const ObbtParams& params) {
    ObbtReport rep;
    rep.bounds = initial;

    for (int pass = 0; pass < params.max_passes; ++pass) {
        const RelaxModel model = build_model(n, rep.bounds, kind);
        OaSolver solver = make_solver(model);
        BoundSet next = rep.bounds;
        int improved = 0;
        double pass_best = 0.0;

        const auto apply = [&](Interval& target, double lo_cand, double hi_cand) {
            lo_cand = std::min(lo_cand, target.hi);
            hi_cand = std::max(hi_cand, target.lo);
            if (lo_cand - target.lo > params.eps) {
                pass_best = std::max(pass_best, lo_cand - target.lo);
                rep.total_shrink += lo_cand - target.lo;
                target.lo = lo_cand;
                ++improved;
            }
            if (target.hi - hi_cand > params.eps) {
                pass_best = std::max(pass_best, target.hi - hi_cand);
                rep.total_shrink += target.hi - hi_cand;
                target.hi = hi_cand;
                ++improved;
            }
        };

        bool failed = false;
        for (std::size_t b = 0; b < n.buses.size() && !failed; ++b) {
            if (kind == ModelKind::Soc) {
                const int w = model.w_of_bus[b];
                const SubResult lo = probe(solver, w, 1.0, params.solve);
                const SubResult hi = probe(solver, w, -1.0, params.solve);
                if (lo.infeasible || hi.infeasible) {
                    failed = true;
                    rep.infeasible_detail = "w subproblem at bus " + std::to_string(n.buses[b].id);
                    break;
                }
                apply(next.bus_v[b],
                      lo.usable ? std::sqrt(std::max(0.0, lo.bound)) : next.bus_v[b].lo,
                      hi.usable ? std::sqrt(std::max(0.0, -hi.bound)) : next.bus_v[b].hi);
            } else {
                const int v = model.v_of_bus[b];
                const SubResult lo = probe(solver, v, 1.0, params.solve);
                const SubResult hi = probe(solver, v, -1.0, params.solve);
                if (lo.infeasible || hi.infeasible) {
                    failed = true;
                    rep.infeasible_detail = "v subproblem at bus " + std::to_string(n.buses[b].id);
                    break;
                }
                apply(next.bus_v[b], lo.usable ? lo.bound : next.bus_v[b].lo,
                      hi.usable ? -hi.bound : next.bus_v[b].hi);
            }
        }
        for (std::size_t e = 0; e < model.edges.size() && !failed; ++e) {
            if (kind == ModelKind::Soc) {
                const int wr = model.wr_of_edge[e], wi = model.wi_of_edge[e];
                const SubResult rlo = probe(solver, wr, 1.0, params.solve);
                const SubResult rhi = probe(solver, wr, -1.0, params.solve);
                const SubResult ilo = probe(solver, wi, 1.0, params.solve);
                const SubResult ihi = probe(solver, wi, -1.0, params.solve);
                if (rlo.infeasible || rhi.infeasible || ilo.infeasible || ihi.infeasible) {
                    failed = true;
                    rep.infeasible_detail = "w offdiag subproblem at edge " + std::to_string(e);
                    break;
                }
                if (!(rlo.usable && rhi.usable && ilo.usable && ihi.usable)) continue;
                const double wr_lo = std::max(rlo.bound, model.vars[static_cast<std::size_t>(wr)].bounds.lo);
                const double wr_hi = std::min(-rhi.bound, model.vars[static_cast<std::size_t>(wr)].bounds.hi);
                const double wi_lo = std::max(ilo.bound, model.vars[static_cast<std::size_t>(wi)].bounds.lo);
                const double wi_hi = std::min(-ihi.bound, model.vars[static_cast<std::size_t>(wi)].bounds.hi);
                if (wr_lo > 0.0 && wr_lo <= wr_hi && wi_lo <= wi_hi) {
                    const Interval th = atan2_range(ComplexBox{{wr_lo, wr_hi}, {wi_lo, wi_hi}});
                    apply(next.edge_theta[e], th.lo, th.hi);
                }
            } else {
                const int tc = model.thc_of_edge[e], ts = model.ths_of_edge[e];
                const SubResult clo = probe(solver, tc, 1.0, params.solve);
                const SubResult chi = probe(solver, tc, -1.0, params.solve);
                const SubResult slo = probe(solver, ts, 1.0, params.solve);
                const SubResult shi = probe(solver, ts, -1.0, params.solve);
                if (clo.infeasible || chi.infeasible || slo.infeasible || shi.infeasible) {
                    failed = true;
                    rep.infeasible_detail = "angle subproblem at edge " + std::to_string(e);
                    break;
                }
                if (!(clo.usable && chi.usable && slo.usable && shi.usable)) continue;
                apply(next.edge_theta[e], std::max(clo.bound, slo.bound),
                      std::min(-chi.bound, -shi.bound));
            }
        }
        if (failed) {
            rep.infeasible = true;
            return rep;
        }

        ++rep.passes;
        rep.pass_shrink.push_back(pass_best);
        rep.tightened_sides += improved;
        rep.bounds = next;
        if (improved == 0) {
            rep.fixpoint = true;
            break;
        }
    }
    return rep;
}

}  // namespace acrelax
