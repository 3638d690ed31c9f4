#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "acrelax/obbt.hpp"
#include "acrelax/oracle.hpp"
#include "nets.hpp"

using namespace acrelax;

namespace {
constexpr double kPi = 3.14159265358979323846;

bool nested(const BoundSet& inner, const BoundSet& outer, double tol = 1e-12) {
    for (std::size_t k = 0; k < inner.bus_v.size(); ++k)
        if (inner.bus_v[k].lo < outer.bus_v[k].lo - tol ||
            inner.bus_v[k].hi > outer.bus_v[k].hi + tol)
            return false;
    for (std::size_t k = 0; k < inner.edge_theta.size(); ++k)
        if (inner.edge_theta[k].lo < outer.edge_theta[k].lo - tol ||
            inner.edge_theta[k].hi > outer.edge_theta[k].hi + tol)
            return false;
    return true;
}
}  // namespace

TEST_CASE("obbt shrinks the defaulted PAD interval of the two-bus network") {
    const Network net = testnets::load(testnets::case2_lossless());
    const auto edges = build_edges(net);
    const BoundSet init = default_bounds(net, edges);
    REQUIRE(init.edge_theta[0].lo == doctest::Approx(-kPi / 3));
    const ObbtReport rep = tighten(net, ModelKind::Qc, init);
    REQUIRE_FALSE(rep.infeasible);
    CHECK(rep.passes >= 1);
    CHECK(rep.bounds.edge_theta[0].lo > init.edge_theta[0].lo + 1e-3);
    CHECK(rep.bounds.edge_theta[0].hi < init.edge_theta[0].hi - 1e-3);
    // the lossless manifold point solves sin(2 theta) = 2 p x exactly
    // (v2 = cos(theta), generation = load); it must stay inside
    const double td = 0.5 * std::asin(0.2);
    const double v2 = std::cos(td);
    CHECK(td >= rep.bounds.edge_theta[0].lo - 1e-8);
    CHECK(td <= rep.bounds.edge_theta[0].hi + 1e-8);
    CHECK(v2 >= rep.bounds.bus_v[1].lo - 1e-8);
    CHECK(v2 <= rep.bounds.bus_v[1].hi + 1e-8);
    // slack absorbs the line's reactive draw: q_g = b (1 - v2^2) with b = 1/x
    const AcPoint exact{{1.0, v2}, {0.0, -td}, {1.0}, {10.0 * (1.0 - v2 * v2)}, {}, {}};
    CHECK(ac_feasibility_check(net, exact, 1e-9).feasible(1e-9));
}

TEST_CASE("obbt passes contract monotonically and reach a fixpoint") {
    const Network net = testnets::load(testnets::case2_gen2(false));
    const auto edges = build_edges(net);
    const BoundSet init = default_bounds(net, edges);

    ObbtParams one;
    one.max_passes = 1;
    const ObbtReport pass1 = tighten(net, ModelKind::Qc, init, one);
    REQUIRE_FALSE(pass1.infeasible);
    const ObbtReport pass2 = tighten(net, ModelKind::Qc, pass1.bounds, one);
    REQUIRE_FALSE(pass2.infeasible);
    CHECK(nested(pass1.bounds, init));
    CHECK(nested(pass2.bounds, pass1.bounds));

    ObbtParams full;
    full.max_passes = 6;
    const ObbtReport all = tighten(net, ModelKind::Qc, init, full);
    CHECK(all.fixpoint);
    // a fixpoint means one more pass is a no-op
    const ObbtReport again = tighten(net, ModelKind::Qc, all.bounds, one);
    CHECK(again.tightened_sides == 0);
}

TEST_CASE("obbt is sound for soc and qc kinds on oracle networks") {
    for (const std::string& text :
         {testnets::case2_gen2(false), testnets::case2_nco(true), testnets::case3_loop(false)}) {
        const Network net = testnets::load(text);
        const auto edges = build_edges(net);
        const BoundSet init = default_bounds(net, edges);
        const GridResult opt = grid_global_opf(net, 150);
        REQUIRE(opt.feasible);
        for (const ModelKind kind : {ModelKind::Soc, ModelKind::Qc, ModelKind::QcLnc}) {
            const ObbtReport rep = tighten(net, kind, init);
            REQUIRE_FALSE(rep.infeasible);
            for (std::size_t b = 0; b < net.buses.size(); ++b) {
                CHECK(opt.v[b] >= rep.bounds.bus_v[b].lo - 1e-8);
                CHECK(opt.v[b] <= rep.bounds.bus_v[b].hi + 1e-8);
            }
            for (std::size_t e = 0; e < edges.size(); ++e) {
                const double td = opt.theta[static_cast<std::size_t>(edges[e].bus_i)] -
                                  opt.theta[static_cast<std::size_t>(edges[e].bus_j)];
                CHECK(td >= rep.bounds.edge_theta[e].lo - 1e-8);
                CHECK(td <= rep.bounds.edge_theta[e].hi + 1e-8);
            }
        }
    }
}

TEST_CASE("tightened bounds never lower the relaxation bound") {
    for (const std::string& text : {testnets::case2_gen2(false), testnets::case2_nco(true)}) {
        const Network net = testnets::load(text);
        const auto edges = build_edges(net);
        const BoundSet init = default_bounds(net, edges);
        SolveParams sp;
        sp.max_iter = 800;
        sp.tol_rel = 1e-9;
        sp.stall_window = 12;
        for (const ModelKind kind : {ModelKind::Soc, ModelKind::Qc, ModelKind::QcLnc}) {
            RelaxModel before = build_model(net, init, kind);
            OaSolver s0 = make_solver(before);
            const double lb0 = s0.minimize(sp).lower_bound;
            const ObbtReport rep = tighten(net, kind, init);
            REQUIRE_FALSE(rep.infeasible);
            RelaxModel after = build_model(net, rep.bounds, kind);
            OaSolver s1 = make_solver(after);
            const double lb1 = s1.minimize(sp).lower_bound;
            CHECK(lb1 >= lb0 - 1e-6 * std::max(1.0, std::fabs(lb0)));
        }
    }
}

TEST_CASE("an unservable load yields an infeasibility certificate") {
    std::string text = testnets::case2_gen2(false);
    const auto pos = text.find("2 1 0.8 0.2");
    text.replace(pos, std::string("2 1 0.8 0.2").size(), "2 1 9.0 0.2");
    const Network net = testnets::load(text);
    const auto edges = build_edges(net);
    const ObbtReport rep = tighten(net, ModelKind::Soc, default_bounds(net, edges));
    CHECK(rep.infeasible);
    CHECK_FALSE(rep.infeasible_detail.empty());
}
