#include "acrelax/json_io.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace acrelax {

using nlohmann::json;

std::string network_to_json(const Network& n) {
    json j;
    j["name"] = n.name;
    j["base_mva"] = n.base_mva;
    j["counts"] = {{"buses", n.buses.size()},
                   {"generators", n.generators.size()},
                   {"branches", n.branches.size()},
                   {"edges", build_edges(n).size()}};
    j["warnings"] = n.warnings;
    json buses = json::array();
    for (const auto& b : n.buses)
        buses.push_back({{"id", b.id},
                         {"v_min", b.v_min},
                         {"v_max", b.v_max},
                         {"p_demand", b.p_demand},
                         {"q_demand", b.q_demand},
                         {"shunt_g", b.shunt_g},
                         {"shunt_b", b.shunt_b},
                         {"reference", b.is_reference}});
    j["buses"] = std::move(buses);
    json gens = json::array();
    for (const auto& g : n.generators)
        gens.push_back({{"bus", g.bus_id},
                        {"p_min", g.p_min},
                        {"p_max", g.p_max},
                        {"q_min", g.q_min},
                        {"q_max", g.q_max},
                        {"cost", {g.cost_c2, g.cost_c1, g.cost_c0}}});
    j["generators"] = std::move(gens);
    json brs = json::array();
    for (const auto& b : n.branches)
        brs.push_back({{"from", b.from_bus},
                       {"to", b.to_bus},
                       {"r", b.r},
                       {"x", b.x},
                       {"b_charge", b.b_charge},
                       {"tap", b.tap},
                       {"shift", b.shift},
                       {"s_max", b.s_max},
                       {"angmin", b.angmin},
                       {"angmax", b.angmax},
                       {"pad_defaulted", b.pad_defaulted}});
    j["branches"] = std::move(brs);
    return j.dump(2);
}

std::string model_to_json(const RelaxModel& m) {
    json j;
    j["kind"] = to_string(m.kind);
    json vars = json::array();
    for (const auto& v : m.vars)
        vars.push_back({{"name", v.name}, {"lb", v.bounds.lo}, {"ub", v.bounds.hi}});
    j["variables"] = std::move(vars);
    json lin = json::array();
    for (const auto& r : m.rows) {
        json terms = json::array();
        for (const auto& t : r.terms)
            terms.push_back({{"var", m.vars[static_cast<std::size_t>(t.var)].name}, {"coef", t.coef}});
        lin.push_back({{"terms", std::move(terms)},
                       {"sense", r.rel == Rel::Le ? "<=" : r.rel == Rel::Ge ? ">=" : "=="},
                       {"rhs", r.rhs},
                       {"tag", r.tag}});
    }
    j["linear"] = std::move(lin);
    json cones = json::array();
    for (const auto& s : m.socs)
        cones.push_back({{"type", "soc2"},
                         {"x", m.vars[static_cast<std::size_t>(s.x)].name},
                         {"y", m.vars[static_cast<std::size_t>(s.y)].name},
                         {"cap", s.cap}});
    for (const auto& c : m.rcones)
        cones.push_back({{"type", "rotated"},
                         {"wr", m.vars[static_cast<std::size_t>(c.wr)].name},
                         {"wi", m.vars[static_cast<std::size_t>(c.wi)].name},
                         {"wii", m.vars[static_cast<std::size_t>(c.wii)].name},
                         {"wjj", m.vars[static_cast<std::size_t>(c.wjj)].name}});
    for (const auto& q : m.quads) {
        json quad = json::array(), linp = json::array();
        for (const auto& t : q.quad)
            quad.push_back({{"var", m.vars[static_cast<std::size_t>(t.var)].name}, {"coef", t.coef}});
        for (const auto& t : q.lin)
            linp.push_back({{"var", m.vars[static_cast<std::size_t>(t.var)].name}, {"coef", t.coef}});
        cones.push_back({{"type", "quad"},
                         {"quad", std::move(quad)},
                         {"lin", std::move(linp)},
                         {"constant", q.constant},
                         {"tag", q.tag}});
    }
    j["cones"] = std::move(cones);
    json obj = json::array();
    for (const auto& t : m.objective)
        obj.push_back({{"var", m.vars[static_cast<std::size_t>(t.var)].name}, {"coef", t.coef}});
    j["objective"] = {{"terms", std::move(obj)}, {"constant", m.obj_const}};
    return j.dump(2);
}

std::string bounds_to_json(const Network& n, const std::vector<Edge>& edges, const BoundSet& b) {
    json j;
    json buses = json::array();
    for (std::size_t k = 0; k < n.buses.size(); ++k)
        buses.push_back({{"bus", n.buses[k].id},
                         {"v_lo", b.bus_v[k].lo},
                         {"v_hi", b.bus_v[k].hi},
                         {"w_lo", b.bus_v[k].lo * b.bus_v[k].lo},
                         {"w_hi", b.bus_v[k].hi * b.bus_v[k].hi}});
    j["buses"] = std::move(buses);
    json es = json::array();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const EdgeParams p =
            edge_params(b.bus_v[static_cast<std::size_t>(edges[e].bus_i)],
                        b.bus_v[static_cast<std::size_t>(edges[e].bus_j)], b.edge_theta[e]);
        const ComplexBox wb = w_offdiag_bounds(p);
        es.push_back({{"from", n.buses[static_cast<std::size_t>(edges[e].bus_i)].id},
                      {"to", n.buses[static_cast<std::size_t>(edges[e].bus_j)].id},
                      {"pad_lo", b.edge_theta[e].lo},
                      {"pad_hi", b.edge_theta[e].hi},
                      {"wr_lo", wb.re.lo},
                      {"wr_hi", wb.re.hi},
                      {"wi_lo", wb.im.lo},
                      {"wi_hi", wb.im.hi}});
    }
    j["edges"] = std::move(es);
    return j.dump(2);
}

std::string solve_report_to_json(const SolveReport& rep, ModelKind kind, double ac_obj,
                                 bool have_ac) {
    json j;
    j["model"] = to_string(kind);
    j["status"] = rep.status;
    j["lower_bound"] = rep.lower_bound;
    j["iterations"] = rep.iterations;
    j["cuts_added"] = rep.cuts_added;
    j["lnc_count"] = rep.lnc_count;
    j["wall_ms"] = rep.wall_ms;
    if (have_ac) {
        bool neg = false;
        j["ac_objective"] = ac_obj;
        j["gap_percent"] = optimality_gap(ac_obj, rep.lower_bound, &neg);
        if (neg) j["gap_warning"] = "negative AC objective; |ac| used as denominator";
    }
    return j.dump(2);
}

std::string fuzz_report_to_json(const FuzzReport& rep, const EdgeParams* params) {
    json j;
    if (params) {
        j["params"] = {{"v_i", {params->vi.lo, params->vi.hi}},
                       {"v_j", {params->vj.lo, params->vj.hi}},
                       {"theta", {params->theta.lo, params->theta.hi}}};
    }
    j["count"] = rep.samples;
    j["cuts_checked"] = rep.cuts_checked;
    j["min_slack"] = rep.min_slack;
    json viols = json::array();
    for (const auto& v : rep.violations)
        viols.push_back({{"cut", v.cut},
                         {"point", {v.point[0], v.point[1], v.point[2], v.point[3]}},
                         {"slack", v.slack}});
    j["violations"] = std::move(viols);
    return j.dump(2);
}

std::string obbt_report_to_json(const Network& n, const std::vector<Edge>& edges,
                                const ObbtReport& rep) {
    json j;
    j["passes"] = rep.passes;
    j["fixpoint"] = rep.fixpoint;
    j["infeasible"] = rep.infeasible;
    if (rep.infeasible) j["detail"] = rep.infeasible_detail;
    j["tightened_sides"] = rep.tightened_sides;
    j["total_shrink"] = rep.total_shrink;
    j["pass_shrink"] = rep.pass_shrink;
    j["bounds"] = json::parse(bounds_to_json(n, edges, rep.bounds));
    return j.dump(2);
}

std::string cuts_to_csv(const Network& n, const std::vector<Edge>& edges, const BoundSet& b) {
    std::ostringstream os;
    os << "edge,cut_kind,c_wr,c_wi,c_w_i,c_w_j,rhs,sense\n";
    os.precision(17);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const EdgeParams p =
            edge_params(b.bus_v[static_cast<std::size_t>(edges[e].bus_i)],
                        b.bus_v[static_cast<std::size_t>(edges[e].bus_j)], b.edge_theta[e]);
        const std::string label =
            std::to_string(n.buses[static_cast<std::size_t>(edges[e].bus_i)].id) + "-" +
            std::to_string(n.buses[static_cast<std::size_t>(edges[e].bus_j)].id);
        std::vector<LinearCut> cuts{extreme_cut(p, Side::I), extreme_cut(p, Side::J)};
        const auto [l1, l2] = lnc_cuts(p);
        cuts.push_back(l1);
        cuts.push_back(l2);
        if (p.thl() != 0.0 && p.thu() != 0.0) {
            const auto [c1, c2] = chen_cuts(p);
            cuts.push_back(c1);
            cuts.push_back(c2);
        }
        if (p.thl() > 0.0) cuts.push_back(wbound_cut(p));
        for (const auto& c : cuts)
            os << label << ',' << c.kind << ',' << c.c_wr << ',' << c.c_wi << ',' << c.c_w_i
               << ',' << c.c_w_j << ',' << c.rhs << ',' << (c.sense == CutSense::Ge ? ">=" : "<=")
               << "\n";
    }
    return os.str();
}

double optimality_gap(double ac_obj, double lower_bound, bool* negative_denominator) {
    if (negative_denominator) *negative_denominator = ac_obj < 0.0;
    if (ac_obj == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 100.0 * (ac_obj - lower_bound) / std::fabs(ac_obj);
}

}  // namespace acrelax
