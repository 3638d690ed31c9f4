#pragma once

#include <string>
#include <vector>

#include "acrelax/model.hpp"

namespace acrelax {

struct ObbtParams {
    double eps = 1e-4;  // per-unit / radians improvement threshold
    int max_passes = 5;
    // subproblems need only a handful of outer iterations: their Kelley
    // bound is sound at any depth, deeper solves just tighten further
    SolveParams solve{1e-6, 1e-7, 30, 5, false};
};

struct ObbtReport {
    int passes = 0;
    bool fixpoint = false;
    bool infeasible = false;
    std::string infeasible_detail;
    int tightened_sides = 0;
    double total_shrink = 0.0;
    std::vector<double> pass_shrink;  // largest single-side improvement per pass
    BoundSet bounds;
};

// Optimization-based bound tightening: min/max each bus voltage and each
// edge angle handle over the chosen relaxation, Jacobi-style within a pass,
// envelopes and cuts rebuilt from the updated bounds between passes.
// Bounds only ever contract; stops at a fixpoint or max_passes.
ObbtReport tighten(const Network& n, ModelKind kind, const BoundSet& initial,
                   const ObbtParams& params = {});

}  // namespace acrelax
