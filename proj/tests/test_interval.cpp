#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "acrelax/interval.hpp"
#include "acrelax/rng.hpp"

using namespace acrelax;

namespace {
constexpr double kPi = 3.14159265358979323846;

// dense-sampling range oracle for f over [t.lo, t.hi]
template <typename F>
Interval sampled_range(F f, const Interval& t, int n) {
    double lo = f(t.lo), hi = lo;
    for (int k = 0; k <= n; ++k) {
        const double x = t.lo + (t.hi - t.lo) * k / n;
        const double v = f(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}
}  // namespace

TEST_CASE("interval_mul follows the sign-case product rules") {
    const Interval pp = interval_mul({1, 2}, {3, 4});
    CHECK(pp.lo == doctest::Approx(3.0));
    CHECK(pp.hi == doctest::Approx(8.0));
    const Interval pn = interval_mul({1, 2}, {-4, -3});
    CHECK(pn.lo == doctest::Approx(-8.0));
    CHECK(pn.hi == doctest::Approx(-3.0));
    const Interval pm = interval_mul({1, 2}, {-1, 2});
    CHECK(pm.lo == doctest::Approx(-2.0));
    CHECK(pm.hi == doctest::Approx(4.0));
}

TEST_CASE("interval_mul general fallback covers sign-mixed first factors") {
    Rng rng(7);
    for (int k = 0; k < 2000; ++k) {
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        const double c = rng.uniform(-2, 2), d = rng.uniform(-2, 2);
        const Interval x{std::min(a, b), std::max(a, b)}, y{std::min(c, d), std::max(c, d)};
        const Interval m = interval_mul(x, y);
        for (int s = 0; s < 50; ++s) {
            const double xv = rng.uniform(x.lo, x.hi), yv = rng.uniform(y.lo, y.hi);
            CHECK(m.contains(xv * yv, 1e-12));
        }
    }
}

TEST_CASE("interval_cos frozen examples") {
    const Interval p = interval_cos({0, 0});
    CHECK(p.lo == doctest::Approx(1.0));
    CHECK(p.hi == doctest::Approx(1.0));

    // oracle: dense sampling at 1e6 points
    const Interval t1{kPi / 12, 5 * kPi / 12};
    const Interval o1 = sampled_range([](double x) { return std::cos(x); }, t1, 1000000);
    const Interval c1 = interval_cos(t1);
    CHECK(c1.lo == doctest::Approx(o1.lo).epsilon(1e-9));
    CHECK(c1.hi == doctest::Approx(o1.hi).epsilon(1e-9));
    CHECK(c1.lo == doctest::Approx(0.258819).epsilon(1e-6));
    CHECK(c1.hi == doctest::Approx(0.965926).epsilon(1e-6));

    const Interval t2{-kPi / 3, kPi / 6};
    const Interval o2 = sampled_range([](double x) { return std::cos(x); }, t2, 1000000);
    const Interval c2 = interval_cos(t2);
    CHECK(c2.lo == doctest::Approx(o2.lo).epsilon(1e-9));
    CHECK(c2.hi == doctest::Approx(o2.hi).epsilon(1e-9));
    CHECK(c2.lo == doctest::Approx(0.5));
    CHECK(c2.hi == doctest::Approx(1.0));  // max at interior 0

    CHECK_THROWS_AS(interval_cos({-2.0, 0.0}), std::domain_error);
}

TEST_CASE("interval_sin frozen examples") {
    const Interval z = interval_sin({0, 0});
    CHECK(z.lo == doctest::Approx(0.0));
    CHECK(z.hi == doctest::Approx(0.0));

    const Interval t1{kPi / 12, 5 * kPi / 12};
    const Interval s1 = interval_sin(t1);
    CHECK(s1.lo == doctest::Approx(0.258819).epsilon(1e-6));
    CHECK(s1.hi == doctest::Approx(0.965926).epsilon(1e-6));

    const Interval t2{-kPi / 3, kPi / 6};
    const Interval s2 = interval_sin(t2);
    CHECK(s2.lo == doctest::Approx(-0.866025).epsilon(1e-6));
    CHECK(s2.hi == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("trig ranges agree with dense sampling on random subintervals") {
    Rng rng(11);
    for (int k = 0; k < 1000; ++k) {
        const double a = rng.uniform(-kPi / 2, kPi / 2), b = rng.uniform(-kPi / 2, kPi / 2);
        const Interval t{std::min(a, b), std::max(a, b)};
        const Interval oc = sampled_range([](double x) { return std::cos(x); }, t, 2000);
        const Interval os = sampled_range([](double x) { return std::sin(x); }, t, 2000);
        const Interval c = interval_cos(t), s = interval_sin(t);
        CHECK(std::fabs(c.lo - oc.lo) < 1e-6);
        CHECK(std::fabs(c.hi - oc.hi) < 1e-6);
        CHECK(std::fabs(s.lo - os.lo) < 1e-6);
        CHECK(std::fabs(s.hi - os.hi) < 1e-6);
        CHECK(c.lo <= oc.lo + 1e-12);  // sound
        CHECK(c.hi >= oc.hi - 1e-12);
    }
}

TEST_CASE("edge_params computes phi, delta, v_sigma") {
    const EdgeParams p = edge_params({0.9, 1.2}, {0.8, 1.0}, {kPi / 12, 5 * kPi / 12});
    CHECK(p.phi == doctest::Approx(kPi / 4));
    CHECK(p.delta == doctest::Approx(kPi / 6));
    CHECK(p.v_sigma_i == doctest::Approx(2.1));
    CHECK(p.v_sigma_j == doctest::Approx(1.8));

    const double thm = 0.7;
    const EdgeParams q = edge_params({1, 1}, {1, 1}, {-thm, thm});
    CHECK(q.phi == doctest::Approx(0.0));
    CHECK(q.delta == doctest::Approx(thm));

    CHECK_THROWS(edge_params({0.9, 1.2}, {0.8, 1.0}, {-kPi / 2, 0.1}));
}

TEST_CASE("w_offdiag_bounds: asymmetric example (nonnegative angle case)") {
    const EdgeParams p = edge_params({0.9, 1.2}, {0.8, 1.0}, {kPi / 12, 5 * kPi / 12});
    const ComplexBox b = w_offdiag_bounds(p);
    CHECK(b.re.lo == doctest::Approx(0.186350).epsilon(1e-5));
    CHECK(b.re.hi == doctest::Approx(1.159111).epsilon(1e-5));
    CHECK(b.im.lo == doctest::Approx(0.186350).epsilon(1e-5));
    CHECK(b.im.hi == doctest::Approx(1.159111).epsilon(1e-5));
}

TEST_CASE("w_offdiag_bounds: zero angle collapses the imaginary part") {
    const EdgeParams p = edge_params({0.9, 1.2}, {0.8, 1.0}, {0.0, 0.0});
    const ComplexBox b = w_offdiag_bounds(p);
    CHECK(b.im.lo == doctest::Approx(0.0));
    CHECK(b.im.hi == doctest::Approx(0.0));
    CHECK(b.re.lo == doctest::Approx(0.9 * 0.8));
    CHECK(b.re.hi == doctest::Approx(1.2 * 1.0));
}

TEST_CASE("w_offdiag_bounds: mixed-sign case") {
    const EdgeParams p = edge_params({0.9, 1.1}, {0.9, 1.1}, {-kPi / 6, kPi / 4});
    const ComplexBox b = w_offdiag_bounds(p);
    CHECK(b.re.lo == doctest::Approx(0.572757).epsilon(1e-5));
    CHECK(b.re.hi == doctest::Approx(1.21).epsilon(1e-10));
    CHECK(b.im.lo == doctest::Approx(-0.605).epsilon(1e-10));
    CHECK(b.im.hi == doctest::Approx(0.855599).epsilon(1e-5));
}

TEST_CASE("w_offdiag_bounds equals the interval composition") {
    Rng rng(23);
    for (int k = 0; k < 500; ++k) {
        const double t1 = rng.uniform(-1.5, 1.5), t2 = rng.uniform(-1.5, 1.5);
        const EdgeParams p = edge_params({rng.uniform(0.8, 1.0), rng.uniform(1.0, 1.3)},
                                         {rng.uniform(0.8, 1.0), rng.uniform(1.0, 1.3)},
                                         {std::min(t1, t2), std::max(t1, t2)});
        const ComplexBox direct = w_offdiag_bounds(p);
        const Interval vv = interval_mul(p.vi, p.vj);
        const Interval re = interval_mul(vv, interval_cos(p.theta));
        const Interval im = interval_mul(vv, interval_sin(p.theta));
        CHECK(std::fabs(direct.re.lo - re.lo) < 1e-14);
        CHECK(std::fabs(direct.re.hi - re.hi) < 1e-14);
        CHECK(std::fabs(direct.im.lo - im.lo) < 1e-14);
        CHECK(std::fabs(direct.im.hi - im.hi) < 1e-14);
    }
}

TEST_CASE("w_offdiag_bounds soundness and tightness by sampling") {
    Rng rng(37);
    for (int rep = 0; rep < 20; ++rep) {
        const double t1 = rng.uniform(-1.5, 1.5), t2 = rng.uniform(-1.5, 1.5);
        const EdgeParams p = edge_params({rng.uniform(0.8, 1.0), rng.uniform(1.0, 1.3)},
                                         {rng.uniform(0.8, 1.0), rng.uniform(1.0, 1.3)},
                                         {std::min(t1, t2), std::max(t1, t2)});
        const ComplexBox b = w_offdiag_bounds(p);
        // soundness at random points
        for (int k = 0; k < 5000; ++k) {
            const double vi = rng.uniform(p.vi.lo, p.vi.hi);
            const double vj = rng.uniform(p.vj.lo, p.vj.hi);
            const double th = rng.uniform(p.theta.lo, p.theta.hi);
            CHECK(b.re.contains(vi * vj * std::cos(th), 1e-12));
            CHECK(b.im.contains(vi * vj * std::sin(th), 1e-12));
        }
        // tightness: extrema attained on the box face grid
        double re_lo = 1e30, re_hi = -1e30, im_lo = 1e30, im_hi = -1e30;
        const int n = 1000;
        for (int a = 0; a <= 2; ++a)
            for (int c = 0; c <= 2; ++c)
                for (int k = 0; k <= n; ++k) {
                    const double vi = p.vi.lo + (p.vi.hi - p.vi.lo) * a / 2.0;
                    const double vj = p.vj.lo + (p.vj.hi - p.vj.lo) * c / 2.0;
                    const double th = p.theta.lo + (p.theta.hi - p.theta.lo) * k / n;
                    const double wr = vi * vj * std::cos(th), wi = vi * vj * std::sin(th);
                    re_lo = std::min(re_lo, wr);
                    re_hi = std::max(re_hi, wr);
                    im_lo = std::min(im_lo, wi);
                    im_hi = std::max(im_hi, wi);
                }
        CHECK(std::fabs(b.re.lo - re_lo) < 1e-6);
        CHECK(std::fabs(b.re.hi - re_hi) < 1e-6);
        CHECK(std::fabs(b.im.lo - im_lo) < 1e-6);
        CHECK(std::fabs(b.im.hi - im_hi) < 1e-6);
    }
}

TEST_CASE("w_nonedge_bounds is the symmetric product box") {
    const ComplexBox a = w_nonedge_bounds({0.9, 1.1}, {0.9, 1.1});
    CHECK(a.re.lo == doctest::Approx(-1.21));
    CHECK(a.re.hi == doctest::Approx(1.21));
    CHECK(a.im.lo == doctest::Approx(-1.21));
    CHECK(a.im.hi == doctest::Approx(1.21));
    const ComplexBox u = w_nonedge_bounds({1, 1}, {1, 1});
    CHECK(u.re.lo == doctest::Approx(-1.0));
    CHECK(u.re.hi == doctest::Approx(1.0));
    const ComplexBox m = w_nonedge_bounds({0.9, 1.2}, {0.8, 1.0});
    CHECK(m.im.lo == doctest::Approx(-1.2));
    CHECK(m.im.hi == doctest::Approx(1.2));
}

TEST_CASE("atan2_range covers the box angles") {
    Rng rng(5);
    for (int k = 0; k < 200; ++k) {
        const double rlo = rng.uniform(0.1, 1.0);
        const ComplexBox b{{rlo, rlo + rng.uniform(0.0, 1.0)},
                           {rng.uniform(-1.0, 0.5), rng.uniform(0.5, 1.0)}};
        const Interval t = atan2_range(b);
        for (int s = 0; s < 100; ++s) {
            const double re = rng.uniform(b.re.lo, b.re.hi);
            const double im = rng.uniform(b.im.lo, b.im.hi);
            CHECK(t.contains(std::atan2(im, re), 1e-12));
        }
    }
}
