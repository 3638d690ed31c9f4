#include "acrelax/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace acrelax {

Envelope square_envelope(const VarRef& x, int out) {
    const double l = x.bounds.lo, u = x.bounds.hi;
    Envelope e;
    const double sq_lo = (l <= 0.0 && u >= 0.0) ? 0.0 : std::min(l * l, u * u);
    e.bounds = {sq_lo, std::max(l * l, u * u)};
    e.quad.push_back(QuadCon{{{x.id, 1.0}}, {{out, -1.0}}, 0.0, "tconv_lb"});
    // out <= (l+u) x - l u
    e.lin.push_back(LinearCon{{{out, 1.0}, {x.id, -(l + u)}}, Rel::Le, -l * u, "tconv_ub"});
    return e;
}

Envelope mccormick(const VarRef& x, const VarRef& y, int out) {
    const double xl = x.bounds.lo, xu = x.bounds.hi;
    const double yl = y.bounds.lo, yu = y.bounds.hi;
    Envelope e;
    e.bounds = interval_mul(x.bounds, y.bounds);
    // out >= xl y + yl x - xl yl
    e.lin.push_back(LinearCon{{{out, -1.0}, {y.id, xl}, {x.id, yl}}, Rel::Le, xl * yl, "mc_lb1"});
    // out >= xu y + yu x - xu yu
    e.lin.push_back(LinearCon{{{out, -1.0}, {y.id, xu}, {x.id, yu}}, Rel::Le, xu * yu, "mc_lb2"});
    // out <= xl y + yu x - xl yu
    e.lin.push_back(LinearCon{{{out, 1.0}, {y.id, -xl}, {x.id, -yu}}, Rel::Le, -xl * yu, "mc_ub1"});
    // out <= xu y + yl x - xu yl
    e.lin.push_back(LinearCon{{{out, 1.0}, {y.id, -xu}, {x.id, -yl}}, Rel::Le, -xu * yl, "mc_ub2"});
    return e;
}

namespace {
constexpr double kHalfPi = 1.57079632679489661923;

void check_angle_domain(const Interval& t) {
    if (t.lo < -kHalfPi - 1e-12 || t.hi > kHalfPi + 1e-12)
        throw std::domain_error("trig envelope: interval not inside [-pi/2, pi/2]");
}
}  // namespace

Envelope cos_envelope(const VarRef& t, int out) {
    check_angle_domain(t.bounds);
    const double l = t.bounds.lo, u = t.bounds.hi;
    Envelope e;
    e.bounds = interval_cos(t.bounds);
    if (t.bounds.degenerate()) {
        e.lin.push_back(LinearCon{{{out, 1.0}}, Rel::Eq, std::cos(l), "cconv_eq"});
        return e;
    }
    const double xm = std::max(std::fabs(l), std::fabs(u));
    const double k = (1.0 - std::cos(xm)) / (xm * xm);
    // out <= 1 - k t^2   =>   k t^2 + out - 1 <= 0
    e.quad.push_back(QuadCon{{{t.id, k}}, {{out, 1.0}}, -1.0, "cconv_ub"});
    // out >= chord through (l, cos l) and (u, cos u)
    const double slope = (std::cos(l) - std::cos(u)) / (l - u);
    e.lin.push_back(
        LinearCon{{{out, -1.0}, {t.id, slope}}, Rel::Le, slope * l - std::cos(l), "cconv_chord"});
    return e;
}

Envelope sin_envelope(const VarRef& t, int out) {
    check_angle_domain(t.bounds);
    const double l = t.bounds.lo, u = t.bounds.hi;
    Envelope e;
    e.bounds = interval_sin(t.bounds);
    if (t.bounds.degenerate()) {
        e.lin.push_back(LinearCon{{{out, 1.0}}, Rel::Eq, std::sin(l), "sconv_eq"});
        return e;
    }
    const double xm = std::max(std::fabs(l), std::fabs(u));
    const double ch = std::cos(0.5 * xm), sh = std::sin(0.5 * xm);
    // out <= ch (t - xm/2) + sh
    e.lin.push_back(
        LinearCon{{{out, 1.0}, {t.id, -ch}}, Rel::Le, sh - ch * 0.5 * xm, "sconv_ub"});
    // out >= ch (t + xm/2) - sh
    e.lin.push_back(
        LinearCon{{{out, -1.0}, {t.id, ch}}, Rel::Le, sh - ch * 0.5 * xm, "sconv_lb"});
    const double slope = (std::sin(l) - std::sin(u)) / (l - u);
    if (l >= 0.0) {
        // out >= chord
        e.lin.push_back(LinearCon{
            {{out, -1.0}, {t.id, slope}}, Rel::Le, slope * l - std::sin(l), "sconv_chord_lb"});
    } else if (u <= 0.0) {
        // out <= chord
        e.lin.push_back(LinearCon{
            {{out, 1.0}, {t.id, -slope}}, Rel::Le, std::sin(l) - slope * l, "sconv_chord_ub"});
    }
    return e;
}

double linear_slack(const LinearCon& c, const std::vector<double>& x) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * x[static_cast<std::size_t>(t.var)];
    switch (c.rel) {
        case Rel::Le: return c.rhs - lhs;
        case Rel::Ge: return lhs - c.rhs;
        case Rel::Eq: return -std::fabs(lhs - c.rhs);
    }
    return 0.0;
}

double quad_violation(const QuadCon& c, const std::vector<double>& x) {
    double v = c.constant;
    for (const auto& t : c.quad) {
        const double xv = x[static_cast<std::size_t>(t.var)];
        v += t.coef * xv * xv;
    }
    for (const auto& t : c.lin) v += t.coef * x[static_cast<std::size_t>(t.var)];
    return v;
}

}  // namespace acrelax
