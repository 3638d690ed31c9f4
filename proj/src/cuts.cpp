#include "acrelax/cuts.hpp"

#include <cmath>

#include "acrelax/rng.hpp"

namespace acrelax {

std::array<double, 5> LinearCut::normalized() const {
    std::array<double, 5> v{c_wr, c_wi, c_w_i, c_w_j, rhs};
    if (sense == CutSense::Le)
        for (auto& x : v) x = -x;
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    if (n > 0.0)
        for (auto& x : v) x /= n;
    if (v[0] < 0.0)
        for (auto& x : v) x = -x;
    return v;
}

LinearCut extreme_cut(const EdgeParams& p, Side side) {
    const double cd = std::cos(p.delta), cp = std::cos(p.phi), sp = std::sin(p.phi);
    LinearCut c;
    c.sense = CutSense::Le;
    if (side == Side::I) {
        c.kind = "extreme_i";
        c.c_w_i = p.vlj() * cd;
        c.c_wr = -p.v_sigma_i * cp;
        c.c_wi = -p.v_sigma_i * sp;
        c.rhs = -(p.vli() * p.vui() * p.vlj() * cd);
    } else {
        c.kind = "extreme_j";
        c.c_w_j = p.vli() * cd;
        c.c_wr = -p.v_sigma_j * cp;
        c.c_wi = -p.v_sigma_j * sp;
        c.rhs = -(p.vlj() * p.vuj() * p.vli() * cd);
    }
    return c;
}

std::array<std::array<double, 3>, 4> extreme_cut_points(const EdgeParams& p, Side side) {
    const double a1 = p.phi - p.delta, a2 = p.phi + p.delta;
    std::array<std::array<double, 3>, 4> pts;
    if (side == Side::I) {
        const double vl = p.vli(), vu = p.vui(), vo = p.vlj();
        pts[0] = {vl * vo * std::cos(a1), vl * vo * std::sin(a1), vl * vl};
        pts[1] = {vl * vo * std::cos(a2), vl * vo * std::sin(a2), vl * vl};
        pts[2] = {vu * vo * std::cos(a1), vu * vo * std::sin(a1), vu * vu};
        pts[3] = {vu * vo * std::cos(a2), vu * vo * std::sin(a2), vu * vu};
    } else {
        const double vl = p.vlj(), vu = p.vuj(), vo = p.vli();
        pts[0] = {vl * vo * std::cos(a1), vl * vo * std::sin(a1), vl * vl};
        pts[1] = {vl * vo * std::cos(a2), vl * vo * std::sin(a2), vl * vl};
        pts[2] = {vu * vo * std::cos(a1), vu * vo * std::sin(a1), vu * vu};
        pts[3] = {vu * vo * std::cos(a2), vu * vo * std::sin(a2), vu * vu};
    }
    return pts;
}

NLCutConstants nl_cut_constants(const EdgeParams& p, NLKind kind) {
    const double cd = std::cos(p.delta), cp = std::cos(p.phi), sp = std::sin(p.phi);
    NLCutConstants c;
    c.c1 = p.v_sigma_i * p.v_sigma_j * cp;
    c.c2 = p.v_sigma_i * p.v_sigma_j * sp;
    const double gap = p.vli() * p.vlj() - p.vui() * p.vuj();
    if (kind == NLKind::VUB) {
        c.c3 = -p.vuj() * cd * p.v_sigma_j;
        c.c4 = -p.vui() * cd * p.v_sigma_i;
        c.c5 = -p.vui() * p.vuj() * cd * gap;
    } else {
        c.c3 = -p.vlj() * cd * p.v_sigma_j;
        c.c4 = -p.vli() * cd * p.v_sigma_i;
        c.c5 = p.vli() * p.vlj() * cd * gap;
    }
    return c;
}

std::pair<LinearCut, LinearCut> lnc_cuts(const EdgeParams& p) {
    const NLCutConstants a = nl_cut_constants(p, NLKind::VUB);
    const NLCutConstants b = nl_cut_constants(p, NLKind::VLB);
    LinearCut c1;
    c1.kind = "lnc1";
    c1.c_wr = a.c1;
    c1.c_wi = a.c2;
    c1.c_w_i = a.c3;
    c1.c_w_j = a.c4;
    c1.rhs = -a.c5;
    LinearCut c2;
    c2.kind = "lnc2";
    c2.c_wr = b.c1;
    c2.c_wi = b.c2;
    c2.c_w_i = b.c3;
    c2.c_w_j = b.c4;
    c2.rhs = -b.c5;
    return {c1, c2};
}

LinearCut wbound_cut(const EdgeParams& p) {
    constexpr double kHalfPi = 1.57079632679489661923;
    if (!(p.thl() > 0.0 && p.thl() < p.thu() && p.thu() <= kHalfPi))
        throw UnsupportedCaseError("wbound_cut: requires 0 < theta^l < theta^u <= pi/2");
    LinearCut c;
    c.kind = "wbound";
    c.c_wr = std::cos(p.phi);
    c.c_wi = std::sin(p.phi);
    c.rhs = p.vli() * p.vlj() * std::cos(p.delta);
    return c;
}

ChenConstants chen_constants(const EdgeParams& p) {
    if (p.thl() == 0.0 || p.thu() == 0.0)
        throw UnsupportedCaseError("chen_constants: tan special case theta bound == 0");
    ChenConstants c;
    c.pi0 = -p.vli() * p.vlj() * p.vui() * p.vuj();
    c.pi1 = -p.vlj() * p.vuj();
    c.pi2 = -p.vli() * p.vui();
    const double cd = std::cos(p.delta);
    c.pi3 = p.v_sigma_i * p.v_sigma_j * std::cos(p.phi) / cd;
    c.pi4 = p.v_sigma_i * p.v_sigma_j * std::sin(p.phi) / cd;
    return c;
}

static double chen_q(double t) { return (std::sqrt(1.0 + t * t) - 1.0) / t; }

double chen_f_tan(double tan_thl, double tan_thu) {
    const double q = chen_q(tan_thl) * chen_q(tan_thu);
    return (1.0 - q) / (1.0 + q);
}

double chen_g_tan(double tan_thl, double tan_thu) {
    const double ql = chen_q(tan_thl), qu = chen_q(tan_thu);
    return (ql + qu) / (1.0 + ql * qu);
}

std::pair<LinearCut, LinearCut> chen_cuts(const EdgeParams& p) {
    const ChenConstants k = chen_constants(p);
    const double wui = p.vui() * p.vui(), wuj = p.vuj() * p.vuj();
    const double wli = p.vli() * p.vli(), wlj = p.vlj() * p.vlj();
    LinearCut c1;
    c1.kind = "chen1";
    c1.c_wr = k.pi3;
    c1.c_wi = k.pi4;
    c1.c_w_i = k.pi1 - wuj;
    c1.c_w_j = k.pi2 - wui;
    c1.rhs = -(k.pi0 + wui * wuj);
    LinearCut c2;
    c2.kind = "chen2";
    c2.c_wr = k.pi3;
    c2.c_wi = k.pi4;
    c2.c_w_i = k.pi1 - wlj;
    c2.c_w_j = k.pi2 - wli;
    c2.rhs = -(k.pi0 + wli * wlj);
    return {c1, c2};
}

Box4 implied_box(const EdgeParams& p) {
    const ComplexBox wb = w_offdiag_bounds(p);
    Box4 b;
    b.wr = wb.re;
    b.wi = wb.im;
    b.w_i = {p.vli() * p.vli(), p.vui() * p.vui()};
    b.w_j = {p.vlj() * p.vlj(), p.vuj() * p.vuj()};
    return b;
}

DominanceReport check_dominance(const std::pair<LinearCut, LinearCut>& lnc,
                                const std::pair<LinearCut, LinearCut>& extreme,
                                const Box4& box, const EdgeParams& p, long long samples,
                                std::uint64_t seed) {
    constexpr double kTol = 1e-9;
    DominanceReport rep;
    rep.samples = samples;
    const Box4 impl = implied_box(p);
    rep.box_within_bounds = impl.wr.contains(box.wr, 1e-12) && impl.wi.contains(box.wi, 1e-12) &&
                            impl.w_i.contains(box.w_i, 1e-12) && impl.w_j.contains(box.w_j, 1e-12);
    Rng rng(seed);
    for (long long s = 0; s < samples; ++s) {
        const double wr = rng.uniform(box.wr.lo, box.wr.hi);
        const double wi = rng.uniform(box.wi.lo, box.wi.hi);
        const double wii = rng.uniform(box.w_i.lo, box.w_i.hi);
        const double wjj = rng.uniform(box.w_j.lo, box.w_j.hi);
        if (lnc.first.slack(wr, wi, wii, wjj) < 0.0) continue;
        if (lnc.second.slack(wr, wi, wii, wjj) < 0.0) continue;
        ++rep.accepted;
        if (extreme.first.slack(wr, wi, wii, wjj) < -kTol ||
            extreme.second.slack(wr, wi, wii, wjj) < -kTol) {
            if (rep.counterexamples.size() < 16)
                rep.counterexamples.push_back({wr, wi, wii, wjj});
        }
    }
    return rep;
}

}  // namespace acrelax
