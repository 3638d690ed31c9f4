#pragma once

#include <cmath>
#include <stdexcept>

namespace acrelax {

// Closed real interval [lo, hi]. Plain doubles, no directed rounding;
// callers account for floating-point slack in their tolerances.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw std::invalid_argument("Interval: lo > hi");
    }
    static Interval point(double v) { return {v, v}; }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool degenerate() const { return lo == hi; }
    bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
    bool contains(const Interval& o, double tol = 0.0) const {
        return o.lo >= lo - tol && o.hi <= hi + tol;
    }
};

inline Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Rectangular bounds on a complex quantity (the lifted W_ij variable).
struct ComplexBox {
    Interval re;
    Interval im;
};

// Per-edge constants derived from the voltage magnitude and phase angle
// difference bounds: the angle midpoint phi, half-width delta, and the
// bound sums v_sigma that parameterize every cut.
struct EdgeParams {
    Interval vi;      // voltage magnitude bounds at the from bus, >= 0
    Interval vj;      // voltage magnitude bounds at the to bus, >= 0
    Interval theta;   // phase angle difference bounds, inside (-pi/2, pi/2)
    double phi = 0.0;
    double delta = 0.0;
    double v_sigma_i = 0.0;
    double v_sigma_j = 0.0;

    double vli() const { return vi.lo; }
    double vui() const { return vi.hi; }
    double vlj() const { return vj.lo; }
    double vuj() const { return vj.hi; }
    double thl() const { return theta.lo; }
    double thu() const { return theta.hi; }
};

// Exact min/max of x*y over the box. The first factor usually satisfies
// a.lo >= 0 (voltage products); general four-corner fallback otherwise.
Interval interval_mul(const Interval& a, const Interval& b);

// Exact range of cos over t, honoring the maximum at 0. Requires
// t inside [-pi/2, pi/2] (domain_error otherwise).
Interval interval_cos(const Interval& t);

// Exact range of sin over t (monotone on [-pi/2, pi/2]).
Interval interval_sin(const Interval& t);

// Validates invariants and computes phi, delta, v_sigma.
EdgeParams edge_params(const Interval& vi, const Interval& vj, const Interval& theta);

// Off-diagonal W bounds for an edge: the three sign cases on the angle
// interval, composed from the product and trig ranges.
ComplexBox w_offdiag_bounds(const EdgeParams& p);

// Off-diagonal W bounds for a non-edge bus pair: no angle constraint,
// so both components range over [-vu_i*vu_j, vu_i*vu_j].
ComplexBox w_nonedge_bounds(const Interval& vi, const Interval& vj);

// Angle range of a complex box confined to the open right half plane
// (re.lo > 0 required).
Interval atan2_range(const ComplexBox& b);

}  // namespace acrelax
