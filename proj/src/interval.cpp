#include "acrelax/interval.hpp"

#include <algorithm>

namespace acrelax {

namespace {
constexpr double kHalfPi = 1.57079632679489661923;
constexpr double kTrigDomainTol = 1e-12;
}  // namespace

Interval interval_mul(const Interval& a, const Interval& b) {
    if (a.lo >= 0.0) {
        if (b.lo >= 0.0) return {a.lo * b.lo, a.hi * b.hi};
        if (b.hi <= 0.0) return {a.hi * b.lo, a.lo * b.hi};
        return {a.hi * b.lo, a.hi * b.hi};
    }
    const double c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4})};
}

static void check_trig_domain(const Interval& t) {
    if (t.lo < -kHalfPi - kTrigDomainTol || t.hi > kHalfPi + kTrigDomainTol)
        throw std::domain_error("interval trig: interval not inside [-pi/2, pi/2]");
}

Interval interval_cos(const Interval& t) {
    check_trig_domain(t);
    if (t.hi <= 0.0) return {std::cos(t.lo), std::cos(t.hi)};  // monotone increasing
    if (t.lo >= 0.0) return {std::cos(t.hi), std::cos(t.lo)};  // monotone decreasing
    return {std::min(std::cos(t.lo), std::cos(t.hi)), 1.0};    // max at interior 0
}

Interval interval_sin(const Interval& t) {
    check_trig_domain(t);
    return {std::sin(t.lo), std::sin(t.hi)};
}

EdgeParams edge_params(const Interval& vi, const Interval& vj, const Interval& theta) {
    if (vi.lo < 0.0 || vj.lo < 0.0)
        throw std::invalid_argument("edge_params: voltage bounds must be nonnegative");
    if (!(theta.lo > -kHalfPi && theta.hi < kHalfPi))
        throw std::invalid_argument("edge_params: theta not inside (-pi/2, pi/2)");
    EdgeParams p;
    p.vi = vi;
    p.vj = vj;
    p.theta = theta;
    p.phi = 0.5 * (theta.hi + theta.lo);
    p.delta = 0.5 * (theta.hi - theta.lo);
    p.v_sigma_i = vi.lo + vi.hi;
    p.v_sigma_j = vj.lo + vj.hi;
    return p;
}

ComplexBox w_offdiag_bounds(const EdgeParams& p) {
    const double vl = p.vli() * p.vlj();
    const double vu = p.vui() * p.vuj();
    const double tl = p.thl(), tu = p.thu();
    ComplexBox b;
    if (tu <= 0.0) {
        b.re = {vl * std::cos(tl), vu * std::cos(tu)};
        b.im = {vu * std::sin(tl), vl * std::sin(tu)};
    } else if (tl >= 0.0) {
        b.re = {vl * std::cos(tu), vu * std::cos(tl)};
        b.im = {vl * std::sin(tl), vu * std::sin(tu)};
    } else {
        b.re = {std::min(vl * std::cos(tl), vl * std::cos(tu)), vu};
        b.im = {vu * std::sin(tl), vu * std::sin(tu)};
    }
    return b;
}

ComplexBox w_nonedge_bounds(const Interval& vi, const Interval& vj) {
    if (vi.lo < 0.0 || vj.lo < 0.0)
        throw std::invalid_argument("w_nonedge_bounds: voltage bounds must be nonnegative");
    const double m = vi.hi * vj.hi;
    return {{-m, m}, {-m, m}};
}

Interval atan2_range(const ComplexBox& b) {
    if (!(b.re.lo > 0.0))
        throw std::invalid_argument("atan2_range: box must lie in the open right half plane");
    const double lo = std::atan2(b.im.lo, b.im.lo >= 0.0 ? b.re.hi : b.re.lo);
    const double hi = std::atan2(b.im.hi, b.im.hi >= 0.0 ? b.re.lo : b.re.hi);
    return {lo, hi};
}

}  // namespace acrelax
