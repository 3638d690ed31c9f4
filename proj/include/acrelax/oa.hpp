#pragma once

#include <functional>
#include <string>
#include <vector>

#include "acrelax/simplex.hpp"

namespace acrelax {

// Convex-function oracle: returns f(x) (feasible iff <= 0) and fills a
// subgradient; the caller guarantees convexity on the variable box.
struct ConvexOracle {
    std::string name;
    std::function<double(const std::vector<double>& x, std::vector<LinTerm>& grad)> eval;
};

struct SolveParams {
    double tol_viol = 1e-7;  // absolute oracle violation triggering a cut
    double tol_rel = 1e-6;   // relative objective-change convergence
    int max_iter = 200;
    int stall_window = 5;
    bool collect_trace = false;
};

struct TraceRow {
    int iter = 0;
    double lp_obj = 0.0;
    double max_violation = 0.0;
    int cuts_added = 0;
};

struct SolveReport {
    std::string status;  // optimal | stalled | iteration-limit | infeasible | unbounded | numerical
    double lower_bound = 0.0;
    bool bound_valid = false;  // at least one LP restriction solved to optimality
    int iterations = 0;
    int cuts_added = 0;
    int lnc_count = 0;       // LNC rows present in the model (reporting)
    double wall_ms = 0.0;
    std::vector<TraceRow> trace;
    std::vector<double> point;  // last LP solution over model variables

    bool ok() const { return status == "optimal" || status == "stalled"; }
};

// Kelley-style cutting-plane driver: LP restriction plus supporting
// hyperplanes of every violated convex descriptor. Accumulated cuts stay
// in the LP across minimize() calls, so repeated solves over the same
// model (OBBT subproblems) warm-start each other.
class OaSolver {
  public:
    OaSolver(lp::LinearProgram base, std::vector<ConvexOracle> oracles,
             std::vector<LinTerm> objective, double obj_const);

    SolveReport minimize(const SolveParams& params);
    SolveReport minimize(const std::vector<LinTerm>& objective, double obj_const,
                         const SolveParams& params);

    int lp_rows() const { return static_cast<int>(lp_.rows.size()); }
    const lp::LinearProgram& lp() const { return lp_; }

  private:
    lp::LinearProgram lp_;
    std::vector<ConvexOracle> oracles_;
    std::vector<LinTerm> default_obj_;
    double default_const_ = 0.0;
    int base_rows_ = 0;      // rows present at construction (never evicted)
    int cut_pool_cap_ = 400; // carried-over cut rows kept between solves
};

const char* csv_trace_header();
std::string csv_trace(const std::vector<TraceRow>& rows);

}  // namespace acrelax
