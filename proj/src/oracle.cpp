#include "acrelax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <ostream>

#include "acrelax/rng.hpp"

namespace acrelax {

std::vector<SpPoint> sample_sp(const EdgeParams& p, std::size_t count, std::uint64_t seed) {
    std::vector<SpPoint> pts;
    pts.reserve(count);
    Rng rng(seed);
    for (std::size_t k = 0; k < count; ++k) {
        const double vi = rng.uniform(p.vi.lo, p.vi.hi);
        const double vj = rng.uniform(p.vj.lo, p.vj.hi);
        const double th = rng.uniform(p.theta.lo, p.theta.hi);
        pts.push_back(SpPoint{vi * vj * std::cos(th), vi * vj * std::sin(th), vi * vi, vj * vj});
    }
    return pts;
}

FuzzReport fuzz_edge_cuts(const EdgeParams& p, std::size_t samples, std::uint64_t seed,
                          double tol) {
    FuzzReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    const LinearCut exi = extreme_cut(p, Side::I);
    const LinearCut exj = extreme_cut(p, Side::J);
    const NLCutConstants vub = nl_cut_constants(p, NLKind::VUB);
    const NLCutConstants vlb = nl_cut_constants(p, NLKind::VLB);
    const auto [lnc1, lnc2] = lnc_cuts(p);
    const bool chen_ok = p.thl() != 0.0 && p.thu() != 0.0;
    LinearCut ch1, ch2;
    if (chen_ok) std::tie(ch1, ch2) = chen_cuts(p);
    constexpr double kHalfPi = 1.57079632679489661923;
    const bool wb_ok = p.thl() > 0.0 && p.thl() < p.thu() && p.thu() <= kHalfPi;
    LinearCut wb;
    if (wb_ok) wb = wbound_cut(p);

    Rng rng(seed);
    const auto note = [&](const char* name, const SpPoint& pt, double slack) {
        rep.min_slack = std::min(rep.min_slack, slack);
        ++rep.cuts_checked;
        if (slack < -tol && rep.violations.size() < 32)
            rep.violations.push_back(CutViolation{name, {pt.wr, pt.wi, pt.w_ii, pt.w_jj}, slack});
    };
    for (std::size_t k = 0; k < samples; ++k) {
        const double vi = rng.uniform(p.vi.lo, p.vi.hi);
        const double vj = rng.uniform(p.vj.lo, p.vj.hi);
        const double th = rng.uniform(p.theta.lo, p.theta.hi);
        const SpPoint pt{vi * vj * std::cos(th), vi * vj * std::sin(th), vi * vi, vj * vj};
        ++rep.samples;
        note("extreme_i", pt, exi.slack(pt.wr, pt.wi, pt.w_ii, pt.w_jj));
        note("extreme_j", pt, exj.slack(pt.wr, pt.wi, pt.w_ii, pt.w_jj));
        note("vub", pt, vub.eval(pt.wr, pt.wi, pt.w_ii));
        note("vlb", pt, vlb.eval(pt.wr, pt.wi, pt.w_ii));
        note("lnc1", pt, lnc1.slack(pt.wr, pt.wi, pt.w_ii, pt.w_jj));
        note("lnc2", pt, lnc2.slack(pt.wr, pt.wi, pt.w_ii, pt.w_jj));
        if (chen_ok) {
            note("chen1", pt, ch1.slack(pt.wr, pt.wi, pt.w_ii, pt.w_jj));
            note("chen2", pt, ch2.slack(pt.wr, pt.wi, pt.w_ii, pt.w_jj));
        }
        if (wb_ok) note("wbound", pt, wb.slack(pt.wr, pt.wi, pt.w_ii, pt.w_jj));
    }
    return rep;
}

bool sp_member(const EdgeParams& p, double wr, double wi, double w_ii, double tol) {
    if (w_ii < p.vli() * p.vli() - tol || w_ii > p.vui() * p.vui() + tol) return false;
    const ComplexBox wb = w_offdiag_bounds(p);
    if (wr < wb.re.lo - tol || wr > wb.re.hi + tol) return false;
    if (wi < wb.im.lo - tol || wi > wb.im.hi + tol) return false;
    if (std::tan(p.thl()) * wr - wi > tol) return false;
    if (wi - std::tan(p.thu()) * wr > tol) return false;
    const double vj2 = (wr * wr + wi * wi) / w_ii;
    return vj2 >= p.vlj() * p.vlj() - tol && vj2 <= p.vuj() * p.vuj() + tol;
}

bool sc_member(const EdgeParams& p, double wr, double wi, double w_ii, double tol) {
    if (w_ii < p.vli() * p.vli() - tol || w_ii > p.vui() * p.vui() + tol) return false;
    const ComplexBox wb = w_offdiag_bounds(p);
    if (wr < wb.re.lo - tol || wr > wb.re.hi + tol) return false;
    if (wi < wb.im.lo - tol || wi > wb.im.hi + tol) return false;
    if (std::tan(p.thl()) * wr - wi > tol) return false;
    if (wi - std::tan(p.thu()) * wr > tol) return false;
    const LinearCut ex = extreme_cut(p, Side::I);
    if (ex.slack(wr, wi, w_ii, 0.0) < -tol) return false;
    return wr * wr + wi * wi <= w_ii * p.vuj() * p.vuj() + tol;
}

void export_set_surface(const EdgeParams& p, SetKind which, int resolution, std::ostream& os) {
    const ComplexBox wb = w_offdiag_bounds(p);
    const Interval wib{p.vli() * p.vli(), p.vui() * p.vui()};
    os << "w_r,w_i,w_ii,member\n";
    os.precision(10);
    const auto axis = [resolution](const Interval& iv, int k) {
        return resolution <= 1 ? iv.mid()
                               : iv.lo + (iv.hi - iv.lo) * static_cast<double>(k) /
                                             static_cast<double>(resolution - 1);
    };
    for (int a = 0; a < resolution; ++a)
        for (int b = 0; b < resolution; ++b)
            for (int c = 0; c < resolution; ++c) {
                const double wr = axis(wb.re, a), wi = axis(wb.im, b), wii = axis(wib, c);
                const bool member = which == SetKind::Sp ? sp_member(p, wr, wi, wii)
                                                         : sc_member(p, wr, wi, wii);
                os << wr << ',' << wi << ',' << wii << ',' << (member ? 1 : 0) << '\n';
            }
}

namespace {

struct Axis {
    int bus = -1;
    bool is_theta = false;
    double lo = 0.0, hi = 0.0;
};

struct Dispatch {
    bool feasible = false;
    double cost = 0.0;
    std::vector<std::pair<std::size_t, double>> p, q;  // generator index, value
};

// Minimum-cost split of a required bus injection among its generators.
Dispatch dispatch_bus(const Network& n, const std::vector<std::size_t>& gens, double req_p,
                      double req_q, double tol) {
    Dispatch d;
    double pmin = 0.0, pmax = 0.0, qmin = 0.0, qmax = 0.0;
    for (auto g : gens) {
        pmin += n.generators[g].p_min;
        pmax += n.generators[g].p_max;
        qmin += n.generators[g].q_min;
        qmax += n.generators[g].q_max;
    }
    if (req_p < pmin - tol || req_p > pmax + tol || req_q < qmin - tol || req_q > qmax + tol)
        return d;
    if (gens.size() > 1)
        for (auto g : gens)
            if (n.generators[g].cost_c2 != 0.0)
                throw UnsupportedError(
                    "grid oracle: multiple generators on one bus require linear costs");
    std::vector<std::size_t> order(gens.begin(), gens.end());
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return n.generators[a].cost_c1 < n.generators[b].cost_c1;
    });
    double rem_p = std::clamp(req_p, pmin, pmax) - pmin;
    double rem_q = std::clamp(req_q, qmin, qmax) - qmin;
    const double base = n.base_mva;
    for (auto g : order) {
        const Generator& gen = n.generators[g];
        const double take = std::min(rem_p, gen.p_max - gen.p_min);
        const double pv = gen.p_min + take;
        rem_p -= take;
        const double tq = std::min(rem_q, gen.q_max - gen.q_min);
        const double qv = gen.q_min + tq;
        rem_q -= tq;
        d.p.emplace_back(g, pv);
        d.q.emplace_back(g, qv);
        d.cost += gen.cost_c2 * (pv * base) * (pv * base) + gen.cost_c1 * (pv * base) + gen.cost_c0;
    }
    d.feasible = true;
    return d;
}

struct EvalContext {
    const Network* net = nullptr;
    std::vector<Edge> edges;
    std::vector<FlowCoefficients> fc;
    std::vector<int> edge_of_branch;
    std::vector<double> sigma;
    std::vector<std::vector<std::size_t>> gens_at_bus;
    double coup_v = 0.0;   // worst per-bus |d residual / d v_axis|
    double coup_th = 0.0;  // worst per-bus |d residual / d theta_axis|
    double max_marginal = 0.0;  // worst marginal cost, $/pu
};

EvalContext make_context(const Network& n) {
    EvalContext cx;
    cx.net = &n;
    cx.edges = build_edges(n);
    cx.fc.resize(n.branches.size());
    cx.edge_of_branch.assign(n.branches.size(), -1);
    cx.sigma.assign(n.branches.size(), 1.0);
    for (std::size_t e = 0; e < cx.edges.size(); ++e)
        for (const auto& [bk, aligned] : cx.edges[e].branches) {
            cx.edge_of_branch[static_cast<std::size_t>(bk)] = static_cast<int>(e);
            cx.sigma[static_cast<std::size_t>(bk)] = aligned ? 1.0 : -1.0;
        }
    cx.gens_at_bus.resize(n.buses.size());
    for (std::size_t g = 0; g < n.generators.size(); ++g)
        cx.gens_at_bus[static_cast<std::size_t>(n.bus_idx(n.generators[g].bus_id))].push_back(g);
    double vmax = 0.0;
    for (const auto& b : n.buses) vmax = std::max(vmax, b.v_max);
    std::vector<double> sv(n.buses.size(), 0.0), st(n.buses.size(), 0.0);
    for (std::size_t k = 0; k < n.branches.size(); ++k) {
        cx.fc[k] = branch_constants(n.branches[k]);
        const double self_mag = std::max(std::abs(cx.fc[k].from_self), std::abs(cx.fc[k].to_self));
        const double pair_mag = std::max(std::abs(cx.fc[k].from_pair), std::abs(cx.fc[k].to_pair));
        const double dsv = (2.0 * self_mag + 2.0 * pair_mag) * vmax;
        const double dst = pair_mag * vmax * vmax;
        const std::size_t fi = static_cast<std::size_t>(n.bus_idx(n.branches[k].from_bus));
        const std::size_t ti = static_cast<std::size_t>(n.bus_idx(n.branches[k].to_bus));
        sv[fi] += dsv;
        sv[ti] += dsv;
        st[fi] += dst;
        st[ti] += dst;
    }
    for (std::size_t b = 0; b < n.buses.size(); ++b) {
        const double shunt = std::hypot(n.buses[b].shunt_g, n.buses[b].shunt_b) * 2.0 * vmax;
        cx.coup_v = std::max(cx.coup_v, sv[b] + shunt);
        cx.coup_th = std::max(cx.coup_th, st[b]);
    }
    const double base = n.base_mva;
    for (const auto& g : n.generators)
        cx.max_marginal = std::max(cx.max_marginal,
                                   std::fabs(g.cost_c1) * base +
                                       2.0 * std::fabs(g.cost_c2) * base * base *
                                           std::max(std::fabs(g.p_min), std::fabs(g.p_max)));
    return cx;
}

// Evaluates one voltage assignment; returns feasibility and cost.
bool eval_point(const EvalContext& cx, const std::vector<double>& v,
                const std::vector<double>& th, double balance_tol, GridResult* out) {
    const Network& n = *cx.net;
    const std::size_t nb = n.buses.size(), ne = cx.edges.size();
    double wr[8], wi[8];
    for (std::size_t e = 0; e < ne; ++e) {
        const Edge& ed = cx.edges[e];
        const double td = th[static_cast<std::size_t>(ed.bus_i)] - th[static_cast<std::size_t>(ed.bus_j)];
        if (td < ed.angmin - 1e-12 || td > ed.angmax + 1e-12) return false;
        const double m = v[static_cast<std::size_t>(ed.bus_i)] * v[static_cast<std::size_t>(ed.bus_j)];
        wr[e] = m * std::cos(td);
        wi[e] = m * std::sin(td);
    }
    double inj_p[8] = {0}, inj_q[8] = {0};
    for (std::size_t k = 0; k < n.branches.size(); ++k) {
        const Branch& br = n.branches[k];
        const auto& f = cx.fc[k];
        const std::size_t fi = static_cast<std::size_t>(n.bus_idx(br.from_bus));
        const std::size_t ti = static_cast<std::size_t>(n.bus_idx(br.to_bus));
        const std::size_t e = static_cast<std::size_t>(cx.edge_of_branch[k]);
        const double pr = wr[e], pi = cx.sigma[k] * wi[e];
        const double wf = v[fi] * v[fi], wt = v[ti] * v[ti];
        const double pf = f.from_self.real() * wf + f.from_pair.real() * pr - f.from_pair.imag() * pi;
        const double qf = f.from_self.imag() * wf + f.from_pair.imag() * pr + f.from_pair.real() * pi;
        const double pt = f.to_self.real() * wt + f.to_pair.real() * pr + f.to_pair.imag() * pi;
        const double qt = f.to_self.imag() * wt + f.to_pair.imag() * pr - f.to_pair.real() * pi;
        if (br.s_max > 0.0 &&
            (pf * pf + qf * qf > br.s_max * br.s_max + 1e-12 ||
             pt * pt + qt * qt > br.s_max * br.s_max + 1e-12))
            return false;
        inj_p[fi] += pf;
        inj_q[fi] += qf;
        inj_p[ti] += pt;
        inj_q[ti] += qt;
    }
    double cost = 0.0;
    std::vector<std::pair<std::size_t, double>> disp_p, disp_q;
    for (std::size_t b = 0; b < nb; ++b) {
        const Bus& bus = n.buses[b];
        const double w = v[b] * v[b];
        const double req_p = bus.p_demand + bus.shunt_g * w + inj_p[b];
        const double req_q = bus.q_demand - bus.shunt_b * w + inj_q[b];
        const auto& gens = cx.gens_at_bus[b];
        if (gens.empty()) {
            if (std::fabs(req_p) > balance_tol || std::fabs(req_q) > balance_tol) return false;
            continue;
        }
        Dispatch d = dispatch_bus(n, gens, req_p, req_q, 1e-12);
        if (!d.feasible) return false;
        cost += d.cost;
        disp_p.insert(disp_p.end(), d.p.begin(), d.p.end());
        disp_q.insert(disp_q.end(), d.q.begin(), d.q.end());
    }
    if (!out->feasible || cost < out->objective) {
        out->feasible = true;
        out->objective = cost;
        out->v = v;
        out->theta = th;
        out->gen_p.assign(n.generators.size(), 0.0);
        out->gen_q.assign(n.generators.size(), 0.0);
        for (const auto& [g, pv] : disp_p) out->gen_p[g] = pv;
        for (const auto& [g, qv] : disp_q) out->gen_q[g] = qv;
    }
    return true;
}

// Valid per-bus angle boxes from PAD propagation out of the reference bus.
std::vector<Interval> angle_boxes(const Network& n, const std::vector<Edge>& edges) {
    constexpr double kBig = 3.2;
    std::vector<Interval> box(n.buses.size(), Interval{-kBig, kBig});
    box[static_cast<std::size_t>(n.reference_index)] = Interval{0.0, 0.0};
    for (std::size_t pass = 0; pass < n.buses.size(); ++pass)
        for (const auto& e : edges) {
            const std::size_t i = static_cast<std::size_t>(e.bus_i), j = static_cast<std::size_t>(e.bus_j);
            // theta_i - theta_j in [angmin, angmax]
            box[j] = intersect(box[j], {box[i].lo - e.angmax, box[i].hi - e.angmin});
            box[i] = intersect(box[i], {box[j].lo + e.angmin, box[j].hi + e.angmax});
        }
    return box;
}

}  // namespace

GridResult grid_global_opf(const Network& n, int resolution, const GridOptions& opt) {
    if (n.buses.size() > 3)
        throw std::invalid_argument("grid_global_opf: at most 3 buses supported");
    if (resolution < 2) throw std::invalid_argument("grid_global_opf: resolution must be >= 2");
    const Bus& ref = n.buses[static_cast<std::size_t>(n.reference_index)];
    if (ref.v_min != ref.v_max)
        throw std::invalid_argument(
            "grid_global_opf: reference bus voltage interval must be degenerate");

    EvalContext cx = make_context(n);
    const auto abox = angle_boxes(n, cx.edges);
    std::vector<Axis> axes;
    for (std::size_t b = 0; b < n.buses.size(); ++b) {
        if (static_cast<int>(b) == n.reference_index) continue;
        axes.push_back(Axis{static_cast<int>(b), false, n.buses[b].v_min, n.buses[b].v_max});
        axes.push_back(Axis{static_cast<int>(b), true, abox[b].lo, abox[b].hi});
    }

    GridResult best;
    std::vector<double> v(n.buses.size()), th(n.buses.size());
    v[static_cast<std::size_t>(n.reference_index)] = ref.v_min;
    th[static_cast<std::size_t>(n.reference_index)] = 0.0;

    const auto sweep = [&](const std::vector<Axis>& win, const std::vector<int>& counts,
                           double balance_tol) {
        std::vector<int> idx(win.size(), 0);
        for (;;) {
            for (std::size_t a = 0; a < win.size(); ++a) {
                const double f = counts[a] <= 1 ? 0.5
                                                : static_cast<double>(idx[a]) /
                                                      static_cast<double>(counts[a] - 1);
                const double val = win[a].lo + (win[a].hi - win[a].lo) * f;
                if (win[a].is_theta)
                    th[static_cast<std::size_t>(win[a].bus)] = val;
                else
                    v[static_cast<std::size_t>(win[a].bus)] = val;
            }
            ++best.evaluated;
            eval_point(cx, v, th, balance_tol, &best);
            std::size_t a = 0;
            for (; a < win.size(); ++a) {
                if (++idx[a] < counts[a]) break;
                idx[a] = 0;
            }
            if (a == win.size()) break;
        }
    };

    // per-axis-family step widths (v axes and theta axes couple differently)
    const auto steps_of = [&](const std::vector<Axis>& win, const std::vector<int>& counts,
                              double* step_v, double* step_th) {
        *step_v = 0.0;
        *step_th = 0.0;
        for (std::size_t a = 0; a < win.size(); ++a) {
            const double s = (win[a].hi - win[a].lo) / std::max(1, counts[a] - 1);
            if (win[a].is_theta)
                *step_th = std::max(*step_th, s);
            else
                *step_v = std::max(*step_v, s);
        }
    };
    const auto tol_of = [&](double step_v, double step_th) {
        return std::max(opt.balance_tol_floor,
                        0.75 * (cx.coup_v * step_v + cx.coup_th * step_th));
    };
    const auto lip_of = [&](double step_v, double step_th) {
        return 2.0 * static_cast<double>(n.buses.size()) * (cx.max_marginal + 1.0) *
               (cx.coup_v * step_v + cx.coup_th * step_th);
    };

    double full_range = 0.0;
    for (const auto& a : axes) full_range = std::max(full_range, a.hi - a.lo);
    const double target_step = full_range / resolution;

    long long full_cells = 1;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        full_cells *= resolution + 1;
        if (full_cells > opt.full_grid_budget) break;
    }

    if (full_cells <= opt.full_grid_budget) {
        std::vector<int> counts(axes.size(), resolution + 1);
        double sv = 0.0, st = 0.0;
        steps_of(axes, counts, &sv, &st);
        const double tol = tol_of(sv, st);
        best.balance_tol_used = tol;
        sweep(axes, counts, tol);
        best.effective_resolution = resolution;
        best.lipschitz_bound = lip_of(sv, st);
        return best;
    }

    // coarse-to-fine zoom
    std::vector<Axis> window = axes;
    std::vector<int> counts(axes.size(), opt.stage_points);
    double sv = 0.0, st = 0.0;
    steps_of(window, counts, &sv, &st);
    for (int stage = 0; stage < 16; ++stage) {
        const double tol = tol_of(sv, st);
        best.balance_tol_used = tol;
        sweep(window, counts, tol);
        if (!best.feasible) {
            // denser sampling of the same window before giving up
            for (auto& c : counts) c = c * 2 - 1;
            steps_of(window, counts, &sv, &st);
            if (counts[0] > 8 * opt.stage_points) break;
            continue;
        }
        if (std::max(sv, st) <= target_step) break;
        // shrink each axis window around the incumbent
        for (std::size_t a = 0; a < window.size(); ++a) {
            const double center = window[a].is_theta
                                      ? best.theta[static_cast<std::size_t>(window[a].bus)]
                                      : best.v[static_cast<std::size_t>(window[a].bus)];
            const double half =
                2.5 * (window[a].hi - window[a].lo) / std::max(1, counts[a] - 1);
            window[a].lo = std::max(axes[a].lo, center - half);
            window[a].hi = std::min(axes[a].hi, center + half);
        }
        counts.assign(axes.size(), opt.stage_points);
        steps_of(window, counts, &sv, &st);
    }
    best.effective_resolution = full_range / std::max(std::max(sv, st), 1e-300);
    best.lipschitz_bound = lip_of(sv, st);
    return best;
}

}  // namespace acrelax
