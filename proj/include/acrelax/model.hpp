#pragma once

#include <array>
#include <string>
#include <vector>

#include "acrelax/cuts.hpp"
#include "acrelax/envelope.hpp"
#include "acrelax/interval.hpp"
#include "acrelax/network.hpp"
#include "acrelax/oa.hpp"

namespace acrelax {

enum class ModelKind { Soc, Qc, QcLnc };

ModelKind model_kind_from_string(const std::string& s);
const char* to_string(ModelKind k);

// Voltage magnitude box per bus and PAD box per canonical edge; everything
// else in the model derives from these via interval arithmetic.
struct BoundSet {
    std::vector<Interval> bus_v;
    std::vector<Interval> edge_theta;
};

BoundSet default_bounds(const Network& n, const std::vector<Edge>& edges);

struct ModelVar {
    std::string name;
    Interval bounds;
};

// |(x, y)| <= cap
struct Soc2Con {
    int x = -1, y = -1;
    double cap = 0.0;
    std::string tag;
};

// wr^2 + wi^2 <= wii * wjj (rotated cone)
struct RconeCon {
    int wr = -1, wi = -1, wii = -1, wjj = -1;
    std::string tag;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RelaxModel {
    ModelKind kind = ModelKind::Soc;
    const Network* net = nullptr;
    std::vector<Edge> edges;
    BoundSet bounds;

    std::vector<ModelVar> vars;
    std::vector<LinearCon> rows;
    std::vector<QuadCon> quads;
    std::vector<Soc2Con> socs;
    std::vector<RconeCon> rcones;
    std::vector<LinTerm> objective;
    double obj_const = 0.0;
    int lnc_rows = 0;

    // index tables (-1 when the variable family is absent)
    std::vector<int> w_of_bus, v_of_bus, th_of_bus;
    std::vector<int> wr_of_edge, wi_of_edge;
    std::vector<int> thc_of_edge, ths_of_edge, vv_of_edge, cs_of_edge, sn_of_edge;
    std::vector<std::array<int, 4>> flow_of_branch;  // pf, qf, pt, qt
    std::vector<std::array<int, 3>> gen_of;          // pg, qg, tg

    int add_var(std::string name, Interval b) {
        vars.push_back(ModelVar{std::move(name), b});
        return static_cast<int>(vars.size()) - 1;
    }
    VarRef ref(int id) const { return VarRef{id, vars[static_cast<std::size_t>(id)].bounds}; }
};

RelaxModel build_soc(const Network& n, const BoundSet& bounds);
RelaxModel build_qc(const Network& n, const BoundSet& bounds);

// Dispatches on kind; QcLnc = build_qc + add_lnc.
RelaxModel build_model(const Network& n, const BoundSet& bounds, ModelKind kind);

// Appends the two lifted nonlinear cuts per edge as linear rows. Cuts whose
// normalized coefficients match an existing LNC row are skipped, making the
// call idempotent. Returns the number of rows appended.
int add_lnc(RelaxModel& m);

// Assembles the LP restriction plus convex oracles (cones seeded with
// eight supporting hyperplanes each).
OaSolver make_solver(const RelaxModel& m);

struct AcPoint {
    std::vector<double> v, theta;  // per bus (radians)
    std::vector<double> gen_p, gen_q;
    std::vector<double> wr, wi;  // per canonical edge; empty = derived from v, theta
};

struct ResidualReport {
    double product = 0.0;
    double balance_p = 0.0, balance_q = 0.0;
    double thermal = 0.0, pad = 0.0;
    double v_bounds = 0.0, gen_bounds = 0.0;
    double max_residual() const;
    bool feasible(double tol) const { return max_residual() <= tol; }
};

ResidualReport ac_feasibility_check(const Network& n, const AcPoint& pt, double tol);

// Lifts an AC point into the model's full variable vector (auxiliaries set
// to their true nonlinear values); used by soundness checks.
std::vector<double> embed_ac_point(const RelaxModel& m, const AcPoint& pt);

// Worst violation of any model constraint (rows, quads, cones) at x.
double model_violation(const RelaxModel& m, const std::vector<double>& x);

}  // namespace acrelax
