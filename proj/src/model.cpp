#include "acrelax/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace acrelax {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "soc") return ModelKind::Soc;
    if (s == "qc") return ModelKind::Qc;
    if (s == "qc-lnc" || s == "qclnc") return ModelKind::QcLnc;
    throw std::invalid_argument("unknown model kind '" + s + "' (soc|qc|qc-lnc)");
}

const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Soc: return "soc";
        case ModelKind::Qc: return "qc";
        case ModelKind::QcLnc: return "qc-lnc";
    }
    return "?";
}

BoundSet default_bounds(const Network& n, const std::vector<Edge>& edges) {
    BoundSet b;
    b.bus_v.reserve(n.buses.size());
    for (const auto& bus : n.buses) b.bus_v.emplace_back(bus.v_min, bus.v_max);
    b.edge_theta.reserve(edges.size());
    for (const auto& e : edges) b.edge_theta.emplace_back(e.angmin, e.angmax);
    return b;
}

namespace {

EdgeParams params_of(const RelaxModel& m, std::size_t e) {
    const Edge& ed = m.edges[e];
    return edge_params(m.bounds.bus_v[static_cast<std::size_t>(ed.bus_i)],
                       m.bounds.bus_v[static_cast<std::size_t>(ed.bus_j)], m.bounds.edge_theta[e]);
}

// Generation cost in $/h as a function of per-unit output.
struct CostPoly {
    double c2, c1, c0;
    double operator()(double p) const { return (c2 * p + c1) * p + c0; }
};

CostPoly cost_poly(const Generator& g, double base) {
    return CostPoly{g.cost_c2 * base * base, g.cost_c1 * base, g.cost_c0};
}

Interval cost_range(const CostPoly& q, const Interval& p) {
    double lo = std::min(q(p.lo), q(p.hi));
    double hi = std::max(q(p.lo), q(p.hi));
    if (q.c2 > 0.0) {
        const double vertex = -q.c1 / (2.0 * q.c2);
        if (p.contains(vertex)) lo = std::min(lo, q(vertex));
    }
    return {lo, hi};
}

void push_envelope(RelaxModel& m, Envelope&& e) {
    for (auto& c : e.lin) m.rows.push_back(std::move(c));
    for (auto& c : e.quad) m.quads.push_back(std::move(c));
}

}  // namespace

RelaxModel build_soc(const Network& n, const BoundSet& bounds) {
    RelaxModel m;
    m.kind = ModelKind::Soc;
    m.net = &n;
    m.edges = build_edges(n);
    m.bounds = bounds;
    if (bounds.bus_v.size() != n.buses.size() || bounds.edge_theta.size() != m.edges.size())
        throw ModelError("bound set does not match the network");

    const double base = n.base_mva;
    const std::size_t nb = n.buses.size(), ne = m.edges.size(), nbr = n.branches.size(),
                      ng = n.generators.size();

    m.w_of_bus.assign(nb, -1);
    m.v_of_bus.assign(nb, -1);
    m.th_of_bus.assign(nb, -1);
    m.wr_of_edge.assign(ne, -1);
    m.wi_of_edge.assign(ne, -1);
    m.thc_of_edge.assign(ne, -1);
    m.ths_of_edge.assign(ne, -1);
    m.vv_of_edge.assign(ne, -1);
    m.cs_of_edge.assign(ne, -1);
    m.sn_of_edge.assign(ne, -1);
    m.flow_of_branch.assign(nbr, {-1, -1, -1, -1});
    m.gen_of.assign(ng, {-1, -1, -1});

    for (std::size_t b = 0; b < nb; ++b) {
        const Interval& v = bounds.bus_v[b];
        m.w_of_bus[b] = m.add_var("w_" + std::to_string(n.buses[b].id), {v.lo * v.lo, v.hi * v.hi});
    }
    for (std::size_t e = 0; e < ne; ++e) {
        const ComplexBox wb = w_offdiag_bounds(params_of(m, e));
        const std::string suffix = std::to_string(n.buses[static_cast<std::size_t>(m.edges[e].bus_i)].id) +
                                   "_" + std::to_string(n.buses[static_cast<std::size_t>(m.edges[e].bus_j)].id);
        m.wr_of_edge[e] = m.add_var("wr_" + suffix, wb.re);
        m.wi_of_edge[e] = m.add_var("wi_" + suffix, wb.im);
    }

    // per-branch flow variables; box |p|,|q| <= s_max or a derived bound
    std::vector<FlowCoefficients> fc(nbr);
    std::vector<int> edge_of_branch(nbr, -1);
    std::vector<double> sigma_of_branch(nbr, 1.0);
    for (std::size_t e = 0; e < ne; ++e)
        for (const auto& [bk, aligned] : m.edges[e].branches) {
            edge_of_branch[static_cast<std::size_t>(bk)] = static_cast<int>(e);
            sigma_of_branch[static_cast<std::size_t>(bk)] = aligned ? 1.0 : -1.0;
        }
    for (std::size_t k = 0; k < nbr; ++k) {
        const Branch& br = n.branches[k];
        fc[k] = branch_constants(br);
        const int fi = n.bus_idx(br.from_bus), ti = n.bus_idx(br.to_bus);
        const double vuf = bounds.bus_v[static_cast<std::size_t>(fi)].hi;
        const double vut = bounds.bus_v[static_cast<std::size_t>(ti)].hi;
        double cap_f = br.s_max, cap_t = br.s_max;
        if (br.s_max <= 0.0) {
            cap_f = std::abs(fc[k].from_self) * vuf * vuf + std::abs(fc[k].from_pair) * vuf * vut;
            cap_t = std::abs(fc[k].to_self) * vut * vut + std::abs(fc[k].to_pair) * vuf * vut;
        }
        const std::string sfx = std::to_string(k);
        m.flow_of_branch[k] = {m.add_var("pf_" + sfx, {-cap_f, cap_f}),
                               m.add_var("qf_" + sfx, {-cap_f, cap_f}),
                               m.add_var("pt_" + sfx, {-cap_t, cap_t}),
                               m.add_var("qt_" + sfx, {-cap_t, cap_t})};
    }
    for (std::size_t g = 0; g < ng; ++g) {
        const Generator& gen = n.generators[g];
        const CostPoly q = cost_poly(gen, base);
        const Interval pbox{gen.p_min, gen.p_max};
        const std::string sfx = std::to_string(g);
        m.gen_of[g] = {m.add_var("pg_" + sfx, pbox),
                       m.add_var("qg_" + sfx, {gen.q_min, gen.q_max}),
                       m.add_var("tg_" + sfx, cost_range(q, pbox))};
    }

    // flow definition rows from the Matpower branch constants
    for (std::size_t k = 0; k < nbr; ++k) {
        const Branch& br = n.branches[k];
        const int fi = n.bus_idx(br.from_bus), ti = n.bus_idx(br.to_bus);
        const int e = edge_of_branch[k];
        const double sg = sigma_of_branch[k];
        const int wf = m.w_of_bus[static_cast<std::size_t>(fi)], wt = m.w_of_bus[static_cast<std::size_t>(ti)];
        const int wr = m.wr_of_edge[static_cast<std::size_t>(e)], wi = m.wi_of_edge[static_cast<std::size_t>(e)];
        const auto [pf, qf, pt, qt] = m.flow_of_branch[k];
        const double gfs = fc[k].from_self.real(), bfs = fc[k].from_self.imag();
        const double gfp = fc[k].from_pair.real(), bfp = fc[k].from_pair.imag();
        const double gts = fc[k].to_self.real(), bts = fc[k].to_self.imag();
        const double gtp = fc[k].to_pair.real(), btp = fc[k].to_pair.imag();
        m.rows.push_back(LinearCon{
            {{pf, 1.0}, {wf, -gfs}, {wr, -gfp}, {wi, bfp * sg}}, Rel::Eq, 0.0, "flow_pf"});
        m.rows.push_back(LinearCon{
            {{qf, 1.0}, {wf, -bfs}, {wr, -bfp}, {wi, -gfp * sg}}, Rel::Eq, 0.0, "flow_qf"});
        m.rows.push_back(LinearCon{
            {{pt, 1.0}, {wt, -gts}, {wr, -gtp}, {wi, -btp * sg}}, Rel::Eq, 0.0, "flow_pt"});
        m.rows.push_back(LinearCon{
            {{qt, 1.0}, {wt, -bts}, {wr, -btp}, {wi, gtp * sg}}, Rel::Eq, 0.0, "flow_qt"});
    }

    // power balance per bus, shunts folded onto the diagonal W variable
    for (std::size_t b = 0; b < nb; ++b) {
        const Bus& bus = n.buses[b];
        LinearCon prow, qrow;
        prow.rel = qrow.rel = Rel::Eq;
        prow.rhs = bus.p_demand;
        qrow.rhs = bus.q_demand;
        prow.tag = "balance_p";
        qrow.tag = "balance_q";
        for (std::size_t g = 0; g < ng; ++g)
            if (n.bus_idx(n.generators[g].bus_id) == static_cast<int>(b)) {
                prow.terms.push_back({m.gen_of[g][0], 1.0});
                qrow.terms.push_back({m.gen_of[g][1], 1.0});
            }
        for (std::size_t k = 0; k < nbr; ++k) {
            const Branch& br = n.branches[k];
            if (n.bus_idx(br.from_bus) == static_cast<int>(b)) {
                prow.terms.push_back({m.flow_of_branch[k][0], -1.0});
                qrow.terms.push_back({m.flow_of_branch[k][1], -1.0});
            }
            if (n.bus_idx(br.to_bus) == static_cast<int>(b)) {
                prow.terms.push_back({m.flow_of_branch[k][2], -1.0});
                qrow.terms.push_back({m.flow_of_branch[k][3], -1.0});
            }
        }
        if (bus.shunt_g != 0.0) prow.terms.push_back({m.w_of_bus[b], -bus.shunt_g});
        if (bus.shunt_b != 0.0) qrow.terms.push_back({m.w_of_bus[b], bus.shunt_b});
        m.rows.push_back(std::move(prow));
        m.rows.push_back(std::move(qrow));
    }

    // PAD rows in the lifted variables
    for (std::size_t e = 0; e < ne; ++e) {
        const Interval& th = bounds.edge_theta[e];
        const int wr = m.wr_of_edge[e], wi = m.wi_of_edge[e];
        m.rows.push_back(
            LinearCon{{{wr, std::tan(th.lo)}, {wi, -1.0}}, Rel::Le, 0.0, "pad_lo"});
        m.rows.push_back(
            LinearCon{{{wi, 1.0}, {wr, -std::tan(th.hi)}}, Rel::Le, 0.0, "pad_hi"});
    }

    // thermal limits where rated
    for (std::size_t k = 0; k < nbr; ++k) {
        const Branch& br = n.branches[k];
        if (br.s_max <= 0.0) continue;
        m.socs.push_back(Soc2Con{m.flow_of_branch[k][0], m.flow_of_branch[k][1], br.s_max, "thermal_f"});
        m.socs.push_back(Soc2Con{m.flow_of_branch[k][2], m.flow_of_branch[k][3], br.s_max, "thermal_t"});
    }

    // rotated cone per edge
    for (std::size_t e = 0; e < ne; ++e)
        m.rcones.push_back(RconeCon{m.wr_of_edge[e], m.wi_of_edge[e],
                                    m.w_of_bus[static_cast<std::size_t>(m.edges[e].bus_i)],
                                    m.w_of_bus[static_cast<std::size_t>(m.edges[e].bus_j)], "cone"});

    // generator cost epigraph
    for (std::size_t g = 0; g < ng; ++g) {
        const Generator& gen = n.generators[g];
        const CostPoly q = cost_poly(gen, base);
        const auto [pg, qg, tg] = m.gen_of[g];
        (void)qg;
        if (q.c2 > 0.0) {
            m.quads.push_back(QuadCon{{{pg, q.c2}}, {{pg, q.c1}, {tg, -1.0}}, q.c0, "cost"});
        } else {
            m.rows.push_back(LinearCon{{{tg, 1.0}, {pg, -q.c1}}, Rel::Ge, q.c0, "cost"});
        }
        m.objective.push_back({tg, 1.0});
    }

    for (const auto& v : m.vars)
        if (!std::isfinite(v.bounds.lo) || !std::isfinite(v.bounds.hi))
            throw ModelError("unbounded variable " + v.name);
    return m;
}

RelaxModel build_qc(const Network& n, const BoundSet& bounds) {
    RelaxModel m = build_soc(n, bounds);
    m.kind = ModelKind::Qc;
    const std::size_t nb = n.buses.size(), ne = m.edges.size();

    for (std::size_t b = 0; b < nb; ++b) {
        const Interval& vb = bounds.bus_v[b];
        m.v_of_bus[b] = m.add_var("v_" + std::to_string(n.buses[b].id), vb);
        m.th_of_bus[b] = m.add_var("th_" + std::to_string(n.buses[b].id), {-kPi, kPi});
    }
    // reference angle pinned
    m.rows.push_back(LinearCon{
        {{m.th_of_bus[static_cast<std::size_t>(n.reference_index)], 1.0}}, Rel::Eq, 0.0, "qc_ref"});

    // square envelope ties each diagonal W variable to its magnitude
    for (std::size_t b = 0; b < nb; ++b)
        push_envelope(m, square_envelope(m.ref(m.v_of_bus[b]), m.w_of_bus[b]));

    // per-edge envelope block: bilinear product, cosine, sine, and the two
    // outer products onto the lifted variables
    for (std::size_t e = 0; e < ne; ++e) {
        const Edge& ed = m.edges[e];
        const Interval& th = bounds.edge_theta[e];
        const Interval vvb = interval_mul(bounds.bus_v[static_cast<std::size_t>(ed.bus_i)],
                                          bounds.bus_v[static_cast<std::size_t>(ed.bus_j)]);
        const std::string sfx = std::to_string(e);
        m.thc_of_edge[e] = m.add_var("thc_" + sfx, th);
        m.ths_of_edge[e] = m.add_var("ths_" + sfx, th);
        m.vv_of_edge[e] = m.add_var("vv_" + sfx, vvb);
        m.cs_of_edge[e] = m.add_var("cs_" + sfx, interval_cos(th));
        m.sn_of_edge[e] = m.add_var("sn_" + sfx, interval_sin(th));

        push_envelope(m, mccormick(m.ref(m.v_of_bus[static_cast<std::size_t>(ed.bus_i)]),
                                   m.ref(m.v_of_bus[static_cast<std::size_t>(ed.bus_j)]),
                                   m.vv_of_edge[e]));
        push_envelope(m, cos_envelope(m.ref(m.thc_of_edge[e]), m.cs_of_edge[e]));
        push_envelope(m, sin_envelope(m.ref(m.ths_of_edge[e]), m.sn_of_edge[e]));
        push_envelope(m, mccormick(m.ref(m.vv_of_edge[e]), m.ref(m.cs_of_edge[e]),
                                   m.wr_of_edge[e]));
        push_envelope(m, mccormick(m.ref(m.vv_of_edge[e]), m.ref(m.sn_of_edge[e]),
                                   m.wi_of_edge[e]));
    }
    return m;
}

RelaxModel build_model(const Network& n, const BoundSet& bounds, ModelKind kind) {
    if (kind == ModelKind::Soc) return build_soc(n, bounds);
    RelaxModel m = build_qc(n, bounds);
    if (kind == ModelKind::QcLnc) {
        m.kind = ModelKind::QcLnc;
        add_lnc(m);
    }
    return m;
}

namespace {
// Signature keyed on the edge's variable support plus the normalized
// coefficients, so equal-parameter edges keep their own cuts.
std::string lnc_signature(int support, const LinearCut& c) {
    auto v = c.normalized();
    for (auto& x : v) x += 0.0;  // fold -0.0 into +0.0
    char buf[176];
    std::snprintf(buf, sizeof buf, "%d|%.12e|%.12e|%.12e|%.12e|%.12e", support, v[0], v[1], v[2],
                  v[3], v[4]);
    return buf;
}
}  // namespace

int add_lnc(RelaxModel& m) {
    std::set<std::string> seen;
    for (const auto& row : m.rows)
        if (row.tag.rfind("lnc", 0) == 0 && row.terms.size() == 4) {
            LinearCut c;
            c.sense = row.rel == Rel::Ge ? CutSense::Ge : CutSense::Le;
            c.c_wr = row.terms[0].coef;
            c.c_wi = row.terms[1].coef;
            c.c_w_i = row.terms[2].coef;
            c.c_w_j = row.terms[3].coef;
            c.rhs = row.rhs;
            seen.insert(lnc_signature(row.terms[0].var, c));
        }
    int added = 0;
    for (std::size_t e = 0; e < m.edges.size(); ++e) {
        const auto [c1, c2] = lnc_cuts(params_of(m, e));
        for (const LinearCut* c : {&c1, &c2}) {
            if (!seen.insert(lnc_signature(m.wr_of_edge[e], *c)).second) continue;
            m.rows.push_back(LinearCon{{{m.wr_of_edge[e], c->c_wr},
                                        {m.wi_of_edge[e], c->c_wi},
                                        {m.w_of_bus[static_cast<std::size_t>(m.edges[e].bus_i)], c->c_w_i},
                                        {m.w_of_bus[static_cast<std::size_t>(m.edges[e].bus_j)], c->c_w_j}},
                                       Rel::Ge, c->rhs, "lnc"});
            ++added;
        }
    }
    m.lnc_rows += added;
    return added;
}

OaSolver make_solver(const RelaxModel& m) {
    lp::LinearProgram lp;
    for (const auto& v : m.vars) lp.add_var(v.bounds.lo, v.bounds.hi);
    for (const auto& row : m.rows) lp.rows.push_back(lp::Row{row.terms, row.rel, row.rhs});

    std::vector<ConvexOracle> oracles;
    for (const auto& q : m.quads) {
        oracles.push_back(ConvexOracle{
            q.tag, [q](const std::vector<double>& x, std::vector<LinTerm>& grad) {
                double f = q.constant;
                for (const auto& t : q.quad) {
                    const double xv = x[static_cast<std::size_t>(t.var)];
                    f += t.coef * xv * xv;
                    grad.push_back({t.var, 2.0 * t.coef * xv});
                }
                for (const auto& t : q.lin) {
                    f += t.coef * x[static_cast<std::size_t>(t.var)];
                    grad.push_back(t);
                }
                return f;
            }});
    }
    for (const auto& s : m.socs) {
        for (int k = 0; k < 8; ++k) {
            const double a = std::cos(2.0 * kPi * k / 8.0), b = std::sin(2.0 * kPi * k / 8.0);
            lp.rows.push_back(lp::Row{{{s.x, a}, {s.y, b}}, Rel::Le, s.cap});
        }
        oracles.push_back(ConvexOracle{
            s.tag, [s](const std::vector<double>& x, std::vector<LinTerm>& grad) {
                const double px = x[static_cast<std::size_t>(s.x)], py = x[static_cast<std::size_t>(s.y)];
                const double h = std::hypot(px, py);
                if (h < 1e-14) return -s.cap;
                grad.push_back({s.x, px / h});
                grad.push_back({s.y, py / h});
                return h - s.cap;
            }});
    }
    for (const auto& c : m.rcones) {
        for (int k = 0; k < 8; ++k) {
            const double a = std::cos(2.0 * kPi * k / 8.0), b = std::sin(2.0 * kPi * k / 8.0);
            lp.rows.push_back(lp::Row{
                {{c.wr, 2.0 * a}, {c.wi, 2.0 * b}, {c.wii, -1.0}, {c.wjj, -1.0}}, Rel::Le, 0.0});
        }
        oracles.push_back(ConvexOracle{
            c.tag, [c](const std::vector<double>& x, std::vector<LinTerm>& grad) {
                const double wr = x[static_cast<std::size_t>(c.wr)], wi = x[static_cast<std::size_t>(c.wi)];
                const double zi = x[static_cast<std::size_t>(c.wii)], zj = x[static_cast<std::size_t>(c.wjj)];
                const double rho = std::sqrt(4.0 * wr * wr + 4.0 * wi * wi + (zi - zj) * (zi - zj));
                if (rho < 1e-14) {
                    grad.push_back({c.wii, -1.0});
                    grad.push_back({c.wjj, -1.0});
                    return -(zi + zj);
                }
                grad.push_back({c.wr, 4.0 * wr / rho});
                grad.push_back({c.wi, 4.0 * wi / rho});
                grad.push_back({c.wii, (zi - zj) / rho - 1.0});
                grad.push_back({c.wjj, -(zi - zj) / rho - 1.0});
                return rho - (zi + zj);
            }});
    }
    return OaSolver(std::move(lp), std::move(oracles), m.objective, m.obj_const);
}

double ResidualReport::max_residual() const {
    return std::max({product, balance_p, balance_q, thermal, pad, v_bounds, gen_bounds});
}

ResidualReport ac_feasibility_check(const Network& n, const AcPoint& pt, double tol) {
    (void)tol;
    ResidualReport rep;
    const auto edges = build_edges(n);
    const std::size_t nb = n.buses.size(), ne = edges.size(), nbr = n.branches.size();
    if (pt.v.size() != nb || pt.theta.size() != nb ||
        pt.gen_p.size() != n.generators.size() || pt.gen_q.size() != n.generators.size())
        throw std::invalid_argument("ac_feasibility_check: assignment does not cover the network");

    std::vector<double> wr(ne), wi(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const int i = edges[e].bus_i, j = edges[e].bus_j;
        const double td = pt.theta[static_cast<std::size_t>(i)] - pt.theta[static_cast<std::size_t>(j)];
        const double mag = pt.v[static_cast<std::size_t>(i)] * pt.v[static_cast<std::size_t>(j)];
        const double dr = mag * std::cos(td), di = mag * std::sin(td);
        if (!pt.wr.empty()) {
            wr[e] = pt.wr[e];
            wi[e] = pt.wi[e];
            rep.product = std::max({rep.product, std::fabs(wr[e] - dr), std::fabs(wi[e] - di)});
        } else {
            wr[e] = dr;
            wi[e] = di;
        }
    }

    std::vector<int> edge_of_branch(nbr, -1);
    std::vector<double> sg(nbr, 1.0);
    for (std::size_t e = 0; e < ne; ++e)
        for (const auto& [bk, aligned] : edges[e].branches) {
            edge_of_branch[static_cast<std::size_t>(bk)] = static_cast<int>(e);
            sg[static_cast<std::size_t>(bk)] = aligned ? 1.0 : -1.0;
        }

    std::vector<double> inj_p(nb, 0.0), inj_q(nb, 0.0);
    for (std::size_t k = 0; k < nbr; ++k) {
        const Branch& br = n.branches[k];
        const FlowCoefficients fc = branch_constants(br);
        const std::size_t fi = static_cast<std::size_t>(n.bus_idx(br.from_bus));
        const std::size_t ti = static_cast<std::size_t>(n.bus_idx(br.to_bus));
        const std::size_t e = static_cast<std::size_t>(edge_of_branch[k]);
        const double wf = pt.v[fi] * pt.v[fi], wt = pt.v[ti] * pt.v[ti];
        const double pr = wr[e], pi = sg[k] * wi[e];
        const double pf = fc.from_self.real() * wf + fc.from_pair.real() * pr - fc.from_pair.imag() * pi;
        const double qf = fc.from_self.imag() * wf + fc.from_pair.imag() * pr + fc.from_pair.real() * pi;
        const double pt_ = fc.to_self.real() * wt + fc.to_pair.real() * pr + fc.to_pair.imag() * pi;
        const double qt_ = fc.to_self.imag() * wt + fc.to_pair.imag() * pr - fc.to_pair.real() * pi;
        inj_p[fi] += pf;
        inj_q[fi] += qf;
        inj_p[ti] += pt_;
        inj_q[ti] += qt_;
        if (br.s_max > 0.0) {
            rep.thermal = std::max({rep.thermal, std::hypot(pf, qf) - br.s_max,
                                    std::hypot(pt_, qt_) - br.s_max});
        }
        rep.thermal = std::max(rep.thermal, 0.0);
    }

    for (std::size_t b = 0; b < nb; ++b) {
        const Bus& bus = n.buses[b];
        double gp = 0.0, gq = 0.0;
        for (std::size_t g = 0; g < n.generators.size(); ++g)
            if (n.bus_idx(n.generators[g].bus_id) == static_cast<int>(b)) {
                gp += pt.gen_p[g];
                gq += pt.gen_q[g];
            }
        const double w = pt.v[b] * pt.v[b];
        rep.balance_p = std::max(rep.balance_p,
                                 std::fabs(gp - bus.p_demand - bus.shunt_g * w - inj_p[b]));
        rep.balance_q = std::max(rep.balance_q,
                                 std::fabs(gq - bus.q_demand + bus.shunt_b * w - inj_q[b]));
        rep.v_bounds = std::max({rep.v_bounds, bus.v_min - pt.v[b], pt.v[b] - bus.v_max});
    }
    rep.v_bounds = std::max(rep.v_bounds, 0.0);

    for (std::size_t e = 0; e < ne; ++e) {
        const Edge& ed = edges[e];
        const double td = pt.theta[static_cast<std::size_t>(ed.bus_i)] -
                          pt.theta[static_cast<std::size_t>(ed.bus_j)];
        rep.pad = std::max({rep.pad, ed.angmin - td, td - ed.angmax,
                            std::tan(ed.angmin) * wr[e] - wi[e],
                            wi[e] - std::tan(ed.angmax) * wr[e], 0.0});
    }

    for (std::size_t g = 0; g < n.generators.size(); ++g) {
        const Generator& gen = n.generators[g];
        rep.gen_bounds = std::max({rep.gen_bounds, gen.p_min - pt.gen_p[g], pt.gen_p[g] - gen.p_max,
                                   gen.q_min - pt.gen_q[g], pt.gen_q[g] - gen.q_max, 0.0});
    }
    return rep;
}

std::vector<double> embed_ac_point(const RelaxModel& m, const AcPoint& pt) {
    const Network& n = *m.net;
    std::vector<double> x(m.vars.size(), 0.0);
    const std::size_t nb = n.buses.size(), ne = m.edges.size();
    for (std::size_t b = 0; b < nb; ++b) {
        x[static_cast<std::size_t>(m.w_of_bus[b])] = pt.v[b] * pt.v[b];
        if (m.v_of_bus[b] >= 0) x[static_cast<std::size_t>(m.v_of_bus[b])] = pt.v[b];
        if (m.th_of_bus[b] >= 0) x[static_cast<std::size_t>(m.th_of_bus[b])] = pt.theta[b];
    }
    std::vector<double> wr(ne), wi(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const Edge& ed = m.edges[e];
        const std::size_t i = static_cast<std::size_t>(ed.bus_i), j = static_cast<std::size_t>(ed.bus_j);
        const double td = pt.theta[i] - pt.theta[j];
        wr[e] = pt.v[i] * pt.v[j] * std::cos(td);
        wi[e] = pt.v[i] * pt.v[j] * std::sin(td);
        x[static_cast<std::size_t>(m.wr_of_edge[e])] = wr[e];
        x[static_cast<std::size_t>(m.wi_of_edge[e])] = wi[e];
        if (m.thc_of_edge[e] >= 0) x[static_cast<std::size_t>(m.thc_of_edge[e])] = td;
        if (m.ths_of_edge[e] >= 0) x[static_cast<std::size_t>(m.ths_of_edge[e])] = td;
        if (m.vv_of_edge[e] >= 0) x[static_cast<std::size_t>(m.vv_of_edge[e])] = pt.v[i] * pt.v[j];
        if (m.cs_of_edge[e] >= 0) x[static_cast<std::size_t>(m.cs_of_edge[e])] = std::cos(td);
        if (m.sn_of_edge[e] >= 0) x[static_cast<std::size_t>(m.sn_of_edge[e])] = std::sin(td);
    }
    std::vector<int> edge_of_branch(n.branches.size(), -1);
    std::vector<double> sg(n.branches.size(), 1.0);
    for (std::size_t e = 0; e < ne; ++e)
        for (const auto& [bk, aligned] : m.edges[e].branches) {
            edge_of_branch[static_cast<std::size_t>(bk)] = static_cast<int>(e);
            sg[static_cast<std::size_t>(bk)] = aligned ? 1.0 : -1.0;
        }
    for (std::size_t k = 0; k < n.branches.size(); ++k) {
        const Branch& br = n.branches[k];
        const FlowCoefficients fc = branch_constants(br);
        const std::size_t fi = static_cast<std::size_t>(n.bus_idx(br.from_bus));
        const std::size_t ti = static_cast<std::size_t>(n.bus_idx(br.to_bus));
        const std::size_t e = static_cast<std::size_t>(edge_of_branch[k]);
        const double wf = pt.v[fi] * pt.v[fi], wt = pt.v[ti] * pt.v[ti];
        const double pr = wr[e], pi = sg[k] * wi[e];
        x[static_cast<std::size_t>(m.flow_of_branch[k][0])] =
            fc.from_self.real() * wf + fc.from_pair.real() * pr - fc.from_pair.imag() * pi;
        x[static_cast<std::size_t>(m.flow_of_branch[k][1])] =
            fc.from_self.imag() * wf + fc.from_pair.imag() * pr + fc.from_pair.real() * pi;
        x[static_cast<std::size_t>(m.flow_of_branch[k][2])] =
            fc.to_self.real() * wt + fc.to_pair.real() * pr + fc.to_pair.imag() * pi;
        x[static_cast<std::size_t>(m.flow_of_branch[k][3])] =
            fc.to_self.imag() * wt + fc.to_pair.imag() * pr - fc.to_pair.real() * pi;
    }
    for (std::size_t g = 0; g < n.generators.size(); ++g) {
        const CostPoly q = cost_poly(n.generators[g], n.base_mva);
        x[static_cast<std::size_t>(m.gen_of[g][0])] = pt.gen_p[g];
        x[static_cast<std::size_t>(m.gen_of[g][1])] = pt.gen_q[g];
        x[static_cast<std::size_t>(m.gen_of[g][2])] = q(pt.gen_p[g]);
    }
    return x;
}

double model_violation(const RelaxModel& m, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& row : m.rows) worst = std::max(worst, -linear_slack(row, x));
    for (const auto& q : m.quads) worst = std::max(worst, quad_violation(q, x));
    for (const auto& s : m.socs)
        worst = std::max(worst, std::hypot(x[static_cast<std::size_t>(s.x)],
                                           x[static_cast<std::size_t>(s.y)]) - s.cap);
    for (const auto& c : m.rcones) {
        const double wr = x[static_cast<std::size_t>(c.wr)], wi = x[static_cast<std::size_t>(c.wi)];
        worst = std::max(worst, wr * wr + wi * wi - x[static_cast<std::size_t>(c.wii)] *
                                                        x[static_cast<std::size_t>(c.wjj)]);
    }
    for (std::size_t j = 0; j < m.vars.size(); ++j) {
        worst = std::max(worst, m.vars[j].bounds.lo - x[j]);
        worst = std::max(worst, x[j] - m.vars[j].bounds.hi);
    }
    return worst;
}

}  // namespace acrelax
