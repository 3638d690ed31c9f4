#pragma once

#include <string>
#include <vector>

#include "acrelax/interval.hpp"

namespace acrelax {

// A model variable reference: integer column id plus its box.
struct VarRef {
    int id = -1;
    Interval bounds;
};

enum class Rel { Le, Ge, Eq };

struct LinTerm {
    int var = -1;
    double coef = 0.0;
};

struct LinearCon {
    std::vector<LinTerm> terms;
    Rel rel = Rel::Le;
    double rhs = 0.0;
    std::string tag;
};

// Convex quadratic constraint in the form
//   sum_k quad[k].coef * x_{quad[k].var}^2 + sum lin + constant <= 0
// with every quad coefficient nonnegative.
struct QuadCon {
    std::vector<LinTerm> quad;
    std::vector<LinTerm> lin;
    double constant = 0.0;
    std::string tag;
};

// Descriptors produced by one envelope instance. `bounds` is the box of
// the output variable, from interval arithmetic on the input boxes.
struct Envelope {
    Interval bounds;
    std::vector<LinearCon> lin;
    std::vector<QuadCon> quad;
};

// out >= x^2 (quadratic) and out <= (x^l+x^u) x - x^l x^u (linear).
Envelope square_envelope(const VarRef& x, int out);

// The four McCormick inequalities for out = x*y.
Envelope mccormick(const VarRef& x, const VarRef& y, int out);

// Quadratic upper bound through cos(x^m) plus the secant chord below,
// x^m = max(|t.lo|, |t.hi|). Requires t inside [-pi/2, pi/2].
// Degenerate t collapses to the equality out = cos(t.lo).
Envelope cos_envelope(const VarRef& t, int out);

// Two tangent lines at +-x^m/2, plus the secant chord when the interval
// is sign-definite (>= chord if t.lo >= 0, <= chord if t.hi <= 0).
Envelope sin_envelope(const VarRef& t, int out);

// Evaluates a linear constraint's signed slack at a point: >= 0 means
// satisfied for Le/Ge (absolute residual for Eq is returned negated).
double linear_slack(const LinearCon& c, const std::vector<double>& x);
double quad_violation(const QuadCon& c, const std::vector<double>& x);

}  // namespace acrelax
