#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "acrelax/interval.hpp"

namespace acrelax {

struct UnsupportedCaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CutSense { Le, Ge };

// Linear inequality over the lifted edge variables (w^R, w^I, w_i, w_j).
struct LinearCut {
    double c_wr = 0.0;
    double c_wi = 0.0;
    double c_w_i = 0.0;
    double c_w_j = 0.0;
    double rhs = 0.0;
    CutSense sense = CutSense::Ge;
    std::string kind;

    double lhs(double wr, double wi, double wii, double wjj) const {
        return c_wr * wr + c_wi * wi + c_w_i * wii + c_w_j * wjj;
    }
    // signed slack, >= 0 when the point satisfies the cut
    double slack(double wr, double wi, double wii, double wjj) const {
        const double v = lhs(wr, wi, wii, wjj) - rhs;
        return sense == CutSense::Ge ? v : -v;
    }
    // Canonical form for comparisons: Ge-oriented, unit Euclidean norm of
    // the coefficient vector, sign fixed so the w^R coefficient is >= 0.
    // Returns {c_wr, c_wi, c_w_i, c_w_j, rhs}.
    std::array<double, 5> normalized() const;
};

enum class Side { I, J };
enum class NLKind { VUB, VLB };

// The five constants of a VUB or VLB nonlinear cut.
struct NLCutConstants {
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
    // c1 wr + c2 wi + c3 wi_diag + c4 (wr^2+wi^2)/wi_diag + c5
    double eval(double wr, double wi, double wii) const {
        return c1 * wr + c2 * wi + c3 * wii + c4 * (wr * wr + wi * wi) / wii + c5;
    }
};

struct ChenConstants {
    double pi0 = 0, pi1 = 0, pi2 = 0, pi3 = 0, pi4 = 0;
};

// Three-variable cut tight at the four extreme points of the per-edge
// nonconvex set; side selects the projection (w_j or w_i dropped).
LinearCut extreme_cut(const EdgeParams& p, Side side);

// The four points where the extreme cut and the reverse-convex boundary
// meet; each entry is (w^R, w^I, w_diag) with w_diag = w_i for Side::I.
std::array<std::array<double, 3>, 4> extreme_cut_points(const EdgeParams& p, Side side);

NLCutConstants nl_cut_constants(const EdgeParams& p, NLKind kind);

// The pair of lifted nonlinear cuts over all four lifted variables.
std::pair<LinearCut, LinearCut> lnc_cuts(const EdgeParams& p);

// cos(phi) w^R + sin(phi) w^I >= v^l_i v^l_j cos(delta); only the
// 0 < theta^l < theta^u <= pi/2 case is derived, others error out.
LinearCut wbound_cut(const EdgeParams& p);

// Simplified pi constants; errors on the tan special cases
// (theta^l == 0 or theta^u == 0).
ChenConstants chen_constants(const EdgeParams& p);

// Unsimplified tan-based evaluation of the f/g ratios, for cross-checks.
double chen_f_tan(double tan_thl, double tan_thu);
double chen_g_tan(double tan_thl, double tan_thu);

std::pair<LinearCut, LinearCut> chen_cuts(const EdgeParams& p);

struct Box4 {
    Interval wr, wi, w_i, w_j;
};

// Variable box implied by the edge parameters (voltage-product boxes and squared
// voltage ranges).
Box4 implied_box(const EdgeParams& p);

struct DominanceReport {
    long long samples = 0;       // box points drawn
    long long accepted = 0;      // points satisfying both LNC cuts
    bool box_within_bounds = true;
    std::vector<std::array<double, 4>> counterexamples;  // LNC-feasible, extreme-violating
};

// Samples the box, keeps points satisfying both LNC cuts, and verifies
// both extreme cuts hold on them (tolerance 1e-9).
DominanceReport check_dominance(const std::pair<LinearCut, LinearCut>& lnc,
                                const std::pair<LinearCut, LinearCut>& extreme,
                                const Box4& box, const EdgeParams& p, long long samples,
                                std::uint64_t seed);

}  // namespace acrelax
