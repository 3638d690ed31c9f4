#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "acrelax/cuts.hpp"
#include "acrelax/oracle.hpp"
#include "acrelax/rng.hpp"

using namespace acrelax;

namespace {
constexpr double kPi = 3.14159265358979323846;

EdgeParams illustrative() {
    return edge_params({0.9, 1.2}, {0.8, 1.0}, {kPi / 12, 5 * kPi / 12});
}

EdgeParams random_params(Rng& rng) {
    const double a = rng.uniform(-1.4, 1.4), b = rng.uniform(-1.4, 1.4);
    return edge_params({rng.uniform(0.85, 0.95), rng.uniform(1.05, 1.25)},
                       {rng.uniform(0.85, 0.95), rng.uniform(1.05, 1.25)},
                       {std::min(a, b), std::max(a, b)});
}
}  // namespace

TEST_CASE("extreme cut coefficients for the illustrative parameters") {
    const EdgeParams p = illustrative();
    const LinearCut c = extreme_cut(p, Side::I);
    CHECK(c.sense == CutSense::Le);
    CHECK(c.c_w_i == doctest::Approx(0.692820).epsilon(1e-5));
    CHECK(c.c_wr == doctest::Approx(-1.484924).epsilon(1e-5));
    CHECK(c.c_wi == doctest::Approx(-1.484924).epsilon(1e-5));
    CHECK(c.rhs == doctest::Approx(-0.748246).epsilon(1e-5));  // constant moved across
    CHECK(c.c_w_j == 0.0);

    const LinearCut cj = extreme_cut(p, Side::J);
    CHECK(cj.c_w_i == 0.0);
    CHECK(cj.c_w_j == doctest::Approx(p.vli() * std::cos(p.delta)).epsilon(1e-12));
}

TEST_CASE("extreme cut is active at its four generating points") {
    const EdgeParams p = illustrative();
    const auto pts = extreme_cut_points(p, Side::I);
    CHECK(pts[0][0] == doctest::Approx(0.695467).epsilon(1e-5));
    CHECK(pts[0][1] == doctest::Approx(0.186350).epsilon(1e-5));
    CHECK(pts[0][2] == doctest::Approx(0.81).epsilon(1e-12));
    const LinearCut c = extreme_cut(p, Side::I);
    for (const auto& pt : pts)
        CHECK(std::fabs(c.lhs(pt[0], pt[1], pt[2], 0.0) - c.rhs) < 1e-6);

    Rng rng(13);
    for (int k = 0; k < 300; ++k) {
        const EdgeParams q = random_params(rng);
        for (const Side s : {Side::I, Side::J}) {
            const LinearCut cut = extreme_cut(q, s);
            for (const auto& pt : extreme_cut_points(q, s)) {
                const double lhs = s == Side::I ? cut.lhs(pt[0], pt[1], pt[2], 0.0)
                                                : cut.lhs(pt[0], pt[1], 0.0, pt[2]);
                CHECK(std::fabs(lhs - cut.rhs) < 1e-9);
            }
        }
    }
}

TEST_CASE("extreme cut reduces to w_r >= cos(delta) at unit voltages") {
    const double thm = 0.6;
    const EdgeParams p = edge_params({1, 1}, {1, 1}, {-thm, thm});
    const LinearCut c = extreme_cut(p, Side::I);
    // cos(delta) w_i - 2 w_r + cos(delta) <= 0
    CHECK(c.c_w_i == doctest::Approx(std::cos(thm)));
    CHECK(c.c_wr == doctest::Approx(-2.0));
    CHECK(c.c_wi == doctest::Approx(0.0));
    CHECK(c.rhs == doctest::Approx(-std::cos(thm)));
    // at w_i = 1 the cut says w_r >= cos(delta)
    CHECK(c.slack(std::cos(thm), 0.0, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.slack(std::cos(thm) - 1e-6, 0.0, 1.0, 1.0) < 0.0);
}

TEST_CASE("VUB/VLB nonlinear cut constants") {
    const EdgeParams p = illustrative();
    const NLCutConstants vub = nl_cut_constants(p, NLKind::VUB);
    CHECK(vub.c1 == doctest::Approx(2.6728636).epsilon(1e-6));
    CHECK(vub.c2 == doctest::Approx(2.6728636).epsilon(1e-6));
    CHECK(vub.c3 == doctest::Approx(-1.5588457).epsilon(1e-6));
    CHECK(vub.c4 == doctest::Approx(-2.1823840).epsilon(1e-6));
    CHECK(vub.c5 == doctest::Approx(0.4988306).epsilon(1e-6));
    CHECK(vub.c4 < 0.0);  // concavity requirement of the lifting argument

    const NLCutConstants vlb = nl_cut_constants(p, NLKind::VLB);
    CHECK(vlb.c3 == doctest::Approx(-0.8 * std::cos(kPi / 6) * 1.8).epsilon(1e-9));
    CHECK(vlb.c3 == doctest::Approx(-1.247077).epsilon(1e-5));

    const EdgeParams u = edge_params({1, 1}, {1, 1}, {-0.5, 0.5});
    const NLCutConstants su = nl_cut_constants(u, NLKind::VUB);
    CHECK(su.c1 == doctest::Approx(4.0));
    CHECK(su.c2 == doctest::Approx(0.0));
    CHECK(su.c3 == doctest::Approx(-2.0 * std::cos(0.5)));
    CHECK(su.c4 == doctest::Approx(-2.0 * std::cos(0.5)));
    CHECK(su.c5 == doctest::Approx(0.0));
}

TEST_CASE("LNC cuts: illustrative coefficients and the unit-symmetric reduction") {
    const EdgeParams p = illustrative();
    const auto [c1, c2] = lnc_cuts(p);
    CHECK(c1.sense == CutSense::Ge);
    CHECK(c1.c_wr == doctest::Approx(2.6728636).epsilon(1e-6));
    CHECK(c1.c_wi == doctest::Approx(2.6728636).epsilon(1e-6));
    CHECK(c1.c_w_i == doctest::Approx(-1.5588457).epsilon(1e-6));
    CHECK(c1.c_w_j == doctest::Approx(-2.1823840).epsilon(1e-6));
    CHECK(c1.rhs == doctest::Approx(-0.4988306).epsilon(1e-6));

    const double thm = 0.37;
    const EdgeParams u = edge_params({1, 1}, {1, 1}, {-thm, thm});
    const auto [u1, u2] = lnc_cuts(u);
    for (const LinearCut* c : {&u1, &u2}) {
        // exactly proportional (factor 2) to 2 w_r - cos(thm)(w_i + w_j) >= 0
        CHECK(c->c_wr / 2.0 == 2.0);
        CHECK(c->c_wi == 0.0);
        CHECK(c->c_w_i / 2.0 == -std::cos(thm));
        CHECK(c->c_w_j / 2.0 == -std::cos(thm));
        CHECK(c->rhs == 0.0);
        // w_r >= cos(thm) at w_i = w_j = 1
        CHECK(c->slack(std::cos(thm), 0.0, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("fixing w_j at its lower bound in LNC cut 2 reproduces the extreme cut") {
    Rng rng(29);
    for (int k = 0; k < 200; ++k) {
        const EdgeParams p = random_params(rng);
        const auto [c1, c2] = lnc_cuts(p);
        const LinearCut exi = extreme_cut(p, Side::I);
        const double wlj = p.vlj() * p.vlj();
        // (lnc2 with w_j fixed) scaled by -1/v_sigma_j == extreme side-i as <= 0
        const double s = -1.0 / p.v_sigma_j;
        CHECK(exi.c_wr == doctest::Approx(s * c2.c_wr).epsilon(1e-12));
        CHECK(exi.c_wi == doctest::Approx(s * c2.c_wi).epsilon(1e-12));
        CHECK(exi.c_w_i == doctest::Approx(s * c2.c_w_i).epsilon(1e-12));
        CHECK(exi.rhs == doctest::Approx(s * (c2.rhs - c2.c_w_j * wlj)).epsilon(5e-11));
        // the symmetric substitution w_i = (v^l_i)^2 in cut 2 gives side j
        const LinearCut exj = extreme_cut(p, Side::J);
        const double wli = p.vli() * p.vli();
        const double sj = -1.0 / p.v_sigma_i;
        CHECK(exj.c_wr == doctest::Approx(sj * c2.c_wr).epsilon(1e-12));
        CHECK(exj.c_w_j == doctest::Approx(sj * c2.c_w_j).epsilon(1e-12));
        CHECK(exj.rhs == doctest::Approx(sj * (c2.rhs - c2.c_w_i * wli)).epsilon(5e-11));
        (void)c1;
    }
}

TEST_CASE("w-bound cut: value, activity, and the strict precondition") {
    const EdgeParams p = illustrative();
    const LinearCut c = wbound_cut(p);
    CHECK(c.c_wr == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-12));
    CHECK(c.c_wi == doctest::Approx(std::sin(kPi / 4)).epsilon(1e-12));
    CHECK(c.rhs == doctest::Approx(0.72 * std::cos(kPi / 6)).epsilon(1e-12));
    CHECK(c.rhs == doctest::Approx(0.623538).epsilon(1e-5));
    // active at the lower-corner construction point
    const double x2 = 0.72 * std::cos(p.thl()), y2 = 0.72 * std::sin(p.thl());
    CHECK(std::fabs(c.lhs(x2, y2, 0, 0) - c.rhs) < 1e-9);

    CHECK_THROWS_AS(wbound_cut(edge_params({0.9, 1.2}, {0.8, 1.0}, {0.0, 0.5})),
                    UnsupportedCaseError);
    CHECK_THROWS_AS(wbound_cut(edge_params({0.9, 1.2}, {0.8, 1.0}, {-0.5, 0.5})),
                    UnsupportedCaseError);
}

TEST_CASE("chen constants: simplified values and the tan-form identities") {
    const EdgeParams p = illustrative();
    const ChenConstants k = chen_constants(p);
    CHECK(k.pi0 == doctest::Approx(-0.864).epsilon(1e-9));
    CHECK(k.pi1 == doctest::Approx(-0.8).epsilon(1e-9));
    CHECK(k.pi2 == doctest::Approx(-1.08).epsilon(1e-9));
    CHECK(k.pi3 == doctest::Approx(3.0863571).epsilon(1e-6));
    CHECK(k.pi4 == doctest::Approx(3.0863571).epsilon(1e-6));
    CHECK(k.pi0 <= 0.0);
    CHECK(k.pi1 <= 0.0);
    CHECK(k.pi2 <= 0.0);

    CHECK(chen_f_tan(std::tan(kPi / 12), std::tan(5 * kPi / 12)) ==
          doctest::Approx(std::cos(kPi / 4) / std::cos(kPi / 6)).epsilon(1e-12));
    CHECK(chen_f_tan(std::tan(kPi / 12), std::tan(5 * kPi / 12)) ==
          doctest::Approx(0.816497).epsilon(1e-5));
    CHECK(chen_g_tan(std::tan(kPi / 12), std::tan(5 * kPi / 12)) ==
          doctest::Approx(std::sin(kPi / 4) / std::cos(kPi / 6)).epsilon(1e-12));

    // tan-based evaluation agrees with the simplified constants away from 0
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        EdgeParams q = random_params(rng);
        if (std::fabs(q.thl()) < 1e-3 || std::fabs(q.thu()) < 1e-3) continue;
        const ChenConstants kk = chen_constants(q);
        const double f = chen_f_tan(std::tan(q.thl()), std::tan(q.thu()));
        const double g = chen_g_tan(std::tan(q.thl()), std::tan(q.thu()));
        CHECK(kk.pi3 == doctest::Approx(q.v_sigma_i * q.v_sigma_j * f).epsilon(1e-9));
        CHECK(kk.pi4 == doctest::Approx(q.v_sigma_i * q.v_sigma_j * g).epsilon(1e-9));
    }

    CHECK_THROWS_AS(chen_constants(edge_params({1, 1}, {1, 1}, {0.0, 0.5})),
                    UnsupportedCaseError);
}

TEST_CASE("chen cuts equal the LNC cuts after normalization") {
    const EdgeParams p = illustrative();
    const auto [h1, h2] = chen_cuts(p);
    CHECK(h1.c_w_i == doctest::Approx(-1.8).epsilon(1e-9));  // pi1 - (v^u_j)^2

    Rng rng(41);
    int tested = 0;
    for (int k = 0; k < 400; ++k) {
        const EdgeParams q = random_params(rng);
        if (q.thl() == 0.0 || q.thu() == 0.0) continue;
        ++tested;
        const auto [l1, l2] = lnc_cuts(q);
        const auto [c1, c2] = chen_cuts(q);
        const auto nl1 = l1.normalized(), nc1 = c1.normalized();
        const auto nl2 = l2.normalized(), nc2 = c2.normalized();
        for (int i = 0; i < 5; ++i) {
            CHECK(std::fabs(nl1[static_cast<std::size_t>(i)] - nc1[static_cast<std::size_t>(i)]) < 1e-9);
            CHECK(std::fabs(nl2[static_cast<std::size_t>(i)] - nc2[static_cast<std::size_t>(i)]) < 1e-9);
        }
    }
    CHECK(tested > 350);

    // unit-symmetric case reduces to the same normalized vector as the LNC form
    const double thm = 0.45;
    const EdgeParams u = edge_params({1, 1}, {1, 1}, {-thm, thm});
    const auto [uc1, uc2] = chen_cuts(u);
    LinearCut ref;
    ref.c_wr = 2.0;
    ref.c_w_i = -std::cos(thm);
    ref.c_w_j = -std::cos(thm);
    ref.rhs = 0.0;
    const auto a = uc1.normalized(), b = ref.normalized();
    for (int i = 0; i < 5; ++i)
        CHECK(std::fabs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) < 1e-12);
}

TEST_CASE("all cut families hold on sampled S_p points") {
    Rng rng(53);
    for (int k = 0; k < 50; ++k) {
        const EdgeParams p = random_params(rng);
        const FuzzReport rep = fuzz_edge_cuts(p, 2000, rng.next(), 1e-9);
        CHECK(rep.violations.empty());
        CHECK(rep.min_slack > -1e-9);
    }
}

TEST_CASE("LNC dominance over the extreme cuts by box sampling") {
    const EdgeParams p = illustrative();
    const auto lnc = lnc_cuts(p);
    const std::pair<LinearCut, LinearCut> ext{extreme_cut(p, Side::I), extreme_cut(p, Side::J)};
    const DominanceReport rep = check_dominance(lnc, ext, implied_box(p), p, 1000000, 99);
    CHECK(rep.box_within_bounds);
    CHECK(rep.accepted > 0);
    CHECK(rep.counterexamples.empty());

    // widening the box beyond the variable bounds is flagged
    Box4 wide = implied_box(p);
    wide.w_j.lo -= 0.5;
    const DominanceReport rep2 = check_dominance(lnc, ext, wide, p, 10000, 99);
    CHECK_FALSE(rep2.box_within_bounds);
}

TEST_CASE("the w-bound cut is the LNC cut 2 substitution at both lower bounds") {
    Rng rng(71);
    int tested = 0;
    while (tested < 150) {
        const EdgeParams p = random_params(rng);
        if (!(p.thl() > 0.0)) continue;
        ++tested;
        const LinearCut wb = wbound_cut(p);
        const auto [c1, c2] = lnc_cuts(p);
        const double wli = p.vli() * p.vli(), wlj = p.vlj() * p.vlj();
        const double scale = p.v_sigma_i * p.v_sigma_j;
        CHECK(wb.c_wr == doctest::Approx(c2.c_wr / scale).epsilon(1e-12));
        CHECK(wb.c_wi == doctest::Approx(c2.c_wi / scale).epsilon(1e-12));
        CHECK(wb.rhs ==
              doctest::Approx((c2.rhs - c2.c_w_i * wli - c2.c_w_j * wlj) / scale).epsilon(1e-11));
        (void)c1;
    }
}

TEST_CASE("extreme point 1 with w_j at its lower bound makes LNC cut 2 active") {
    Rng rng(61);
    for (int k = 0; k < 100; ++k) {
        const EdgeParams p = random_params(rng);
        const auto [c1, c2] = lnc_cuts(p);
        const auto pts = extreme_cut_points(p, Side::I);
        const double wlj = p.vlj() * p.vlj();
        // points 1 and 2 sit at v_i = v^l_i, v_j = v^l_j: vertices of S_p
        CHECK(std::fabs(c2.slack(pts[0][0], pts[0][1], pts[0][2], wlj)) < 1e-9);
        CHECK(std::fabs(c2.slack(pts[1][0], pts[1][1], pts[1][2], wlj)) < 1e-9);
    }
}
