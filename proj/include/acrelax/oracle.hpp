#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "acrelax/cuts.hpp"
#include "acrelax/interval.hpp"
#include "acrelax/network.hpp"

namespace acrelax {

// A point of the nonconvex per-edge set, in (w^R, w^I, w_i, w_j).
struct SpPoint {
    double wr = 0.0, wi = 0.0, w_ii = 0.0, w_jj = 0.0;
};

// Uniform (v_i, v_j, theta) draws mapped through the lifting; every point
// satisfies the defining equations by construction.
std::vector<SpPoint> sample_sp(const EdgeParams& p, std::size_t count, std::uint64_t seed);

struct CutViolation {
    std::string cut;
    std::array<double, 4> point;
    double slack = 0.0;  // negative = violated by |slack|
};

struct FuzzReport {
    long long samples = 0;
    long long cuts_checked = 0;
    double min_slack = 0.0;
    std::vector<CutViolation> violations;  // slack < -tol only (capped)
};

// Samples S_p and evaluates every applicable cut family: extreme (both
// sides), VUB/VLB nonlinear, LNC, Chen, and the w-bound cut.
FuzzReport fuzz_edge_cuts(const EdgeParams& p, std::size_t samples, std::uint64_t seed,
                          double tol = 1e-9);

// Membership tests for the per-edge sets in (w^R, w^I, w_i) space.
bool sp_member(const EdgeParams& p, double wr, double wi, double w_ii, double tol = 0.0);
bool sc_member(const EdgeParams& p, double wr, double wi, double w_ii, double tol = 0.0);

enum class SetKind { Sp, Sc };

// CSV rows (w_r, w_i, w_ii, member) over a resolution^3 grid of the
// implied box.
void export_set_surface(const EdgeParams& p, SetKind which, int resolution, std::ostream& os);

struct GridOptions {
    double balance_tol_floor = 1e-9;  // no-generator bus mismatch allowance floor
    long long full_grid_budget = 4'000'000;
    int stage_points = 33;  // per axis, when zoom refinement is used
};

struct GridResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> v, theta;        // per bus
    std::vector<double> gen_p, gen_q;    // per generator
    double effective_resolution = 0.0;   // axis range / final step
    double lipschitz_bound = 0.0;        // |objective| change bound for one step
    double balance_tol_used = 0.0;
    long long evaluated = 0;
};

// Exhaustive grid search over the non-reference (v, theta) axes of a
// <= 3 bus network; larger axis counts are handled by coarse-to-fine
// zooming until the effective per-axis resolution reaches `resolution`.
// The reference bus voltage interval must be degenerate.
GridResult grid_global_opf(const Network& n, int resolution, const GridOptions& opt = {});

}  // namespace acrelax
