#pragma once

#include <string>
#include <vector>

#include "acrelax/envelope.hpp"

namespace acrelax::lp {

struct Row {
    std::vector<LinTerm> terms;
    Rel rel = Rel::Le;
    double rhs = 0.0;
};

// min cost'x + cost_const  s.t. rows, lb <= x <= ub.
// Structural variable bounds must be finite.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> lb, ub;
    std::vector<double> cost;
    double cost_const = 0.0;
    std::vector<Row> rows;

    int add_var(double l, double u, double c = 0.0) {
        lb.push_back(l);
        ub.push_back(u);
        cost.push_back(c);
        return num_vars++;
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit, Numerical };

const char* to_string(LpStatus s);

struct LpResult {
    LpStatus status = LpStatus::Numerical;
    double objective = 0.0;
    std::vector<double> x;
    int iterations = 0;
    std::string note;
};

// Dense bounded-variable primal simplex, two phases with artificials.
// Dantzig pricing, switching to Bland's rule after a stall.
LpResult lp_solve(const LinearProgram& lp);

}  // namespace acrelax::lp
