#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "acrelax/network.hpp"

using namespace acrelax;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string two_bus_case() {
    return R"(function mpc = case2
mpc.version = '2';
mpc.baseMVA = 100.0;
mpc.bus = [
	1	3	0.0	0.0	0.0	0.0	1	1.0	0.0	230.0	1	1.1	0.9;
	2	1	100.0	30.0	0.0	0.0	1	1.0	0.0	230.0	1	1.1	0.9;
];
mpc.gen = [
	1	0.0	0.0	500.0	-500.0	1.0	100.0	1	1000.0	0.0;
];
mpc.gencost = [
	2	0.0	0.0	3	0.0	1.0	0.0;
];
mpc.branch = [
	1	2	0.0	0.1	0.0	0.0	0.0	0.0	0.0	0.0	1	0.0	0.0;
];
)";
}

std::string load_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("minimal two-bus case parses structurally") {
    const Network n = parse_matpower(two_bus_case());
    CHECK(n.buses.size() == 2);
    CHECK(n.branches.size() == 1);
    CHECK(n.generators.size() == 1);
    CHECK(build_edges(n).size() == 1);
    CHECK(n.base_mva == doctest::Approx(100.0));
    CHECK(n.buses[1].p_demand == doctest::Approx(1.0));
    CHECK(n.buses[1].q_demand == doctest::Approx(0.3));
    CHECK(n.reference_index == 0);
    // absent PAD bounds default to +-pi/3 and are flagged
    CHECK(n.branches[0].pad_defaulted);
    CHECK(n.branches[0].angmin == doctest::Approx(-kPi / 3));
    CHECK(n.branches[0].angmax == doctest::Approx(kPi / 3));
    REQUIRE(!n.warnings.empty());
}

TEST_CASE("bus voltage bound columns map to v_min, v_max") {
    const Network n = parse_matpower(two_bus_case());
    CHECK(n.buses[0].v_min == doctest::Approx(0.9));
    CHECK(n.buses[0].v_max == doctest::Approx(1.1));
}

TEST_CASE("nesta_case5_pjm has the published row counts") {
    const Network n = parse_matpower(load_file(std::string(ACRELAX_DATA_DIR) +
                                               "/nesta_case5_pjm.m"));
    CHECK(n.buses.size() == 5);
    CHECK(n.branches.size() == 6);
    CHECK(n.generators.size() == 5);
    CHECK(build_edges(n).size() == 6);
    CHECK(n.buses[0].v_min == doctest::Approx(0.9));
    // supplied PAD bounds are used, in radians
    CHECK(n.branches[0].angmin == doctest::Approx(-kPi / 6));
    CHECK(n.branches[0].angmax == doctest::Approx(kPi / 6));
    CHECK_FALSE(n.branches[0].pad_defaulted);
}

TEST_CASE("parse-serialize-parse is an identical round trip") {
    for (const std::string text :
         {two_bus_case(), load_file(std::string(ACRELAX_DATA_DIR) + "/nesta_case5_pjm.m")}) {
        const Network a = parse_matpower(text);
        const std::string dumped = serialize_matpower(a);
        const Network b = parse_matpower(dumped);
        REQUIRE(a.buses.size() == b.buses.size());
        REQUIRE(a.generators.size() == b.generators.size());
        REQUIRE(a.branches.size() == b.branches.size());
        CHECK(a.base_mva == b.base_mva);
        for (std::size_t k = 0; k < a.buses.size(); ++k) {
            CHECK(a.buses[k].id == b.buses[k].id);
            CHECK(a.buses[k].v_min == b.buses[k].v_min);
            CHECK(a.buses[k].v_max == b.buses[k].v_max);
            CHECK(a.buses[k].p_demand == b.buses[k].p_demand);
            CHECK(a.buses[k].q_demand == b.buses[k].q_demand);
            CHECK(a.buses[k].shunt_g == b.buses[k].shunt_g);
            CHECK(a.buses[k].is_reference == b.buses[k].is_reference);
        }
        for (std::size_t k = 0; k < a.generators.size(); ++k) {
            CHECK(a.generators[k].bus_id == b.generators[k].bus_id);
            CHECK(a.generators[k].p_max == b.generators[k].p_max);
            CHECK(a.generators[k].q_min == b.generators[k].q_min);
            CHECK(a.generators[k].cost_c1 == b.generators[k].cost_c1);
        }
        for (std::size_t k = 0; k < a.branches.size(); ++k) {
            CHECK(a.branches[k].r == b.branches[k].r);
            CHECK(a.branches[k].x == b.branches[k].x);
            CHECK(a.branches[k].b_charge == b.branches[k].b_charge);
            CHECK(a.branches[k].tap == b.branches[k].tap);
            CHECK(a.branches[k].shift == b.branches[k].shift);
            CHECK(a.branches[k].s_max == b.branches[k].s_max);
            CHECK(a.branches[k].angmin == b.branches[k].angmin);
            CHECK(a.branches[k].angmax == b.branches[k].angmax);
        }
        // serialization is a fixpoint after one trip
        CHECK(serialize_matpower(b) == dumped);
    }
}

TEST_CASE("branch constants: pure reactance") {
    Branch b;
    b.from_bus = 1;
    b.to_bus = 2;
    b.r = 0.0;
    b.x = 0.1;
    b.tap = 1.0;
    const FlowCoefficients fc = branch_constants(b);
    // Y = -10i, so the W_ii coefficient in S_ij is conj(Y) = +10i
    CHECK(fc.from_self.real() == doctest::Approx(0.0));
    CHECK(fc.from_self.imag() == doctest::Approx(10.0));
    CHECK(fc.from_pair.real() == doctest::Approx(0.0));
    CHECK(fc.from_pair.imag() == doctest::Approx(-10.0));
}

TEST_CASE("branch constants: complex division and tap scaling") {
    Branch b;
    b.from_bus = 1;
    b.to_bus = 2;
    b.r = 0.01;
    b.x = 0.1;
    b.tap = 1.0;
    const std::complex<double> y = 1.0 / std::complex<double>(0.01, 0.1);
    CHECK(y.real() == doctest::Approx(0.990099).epsilon(1e-6));
    CHECK(y.imag() == doctest::Approx(-9.900990).epsilon(1e-6));
    const FlowCoefficients fc = branch_constants(b);
    CHECK(fc.from_self.real() == doctest::Approx(y.real()));
    CHECK(fc.from_self.imag() == doctest::Approx(-y.imag()));

    Branch t = b;
    t.tap = 1.05;
    const FlowCoefficients ft = branch_constants(t);
    CHECK(ft.from_self.real() == doctest::Approx(fc.from_self.real() / 1.1025));
    CHECK(ft.from_self.imag() == doctest::Approx(fc.from_self.imag() / 1.1025));
}

TEST_CASE("branch constants reduce to +-Y* when tap, shift, charge are trivial") {
    Branch b;
    b.from_bus = 1;
    b.to_bus = 2;
    b.r = 0.02;
    b.x = 0.2;
    b.tap = 1.0;
    b.shift = 0.0;
    b.b_charge = 0.0;
    const std::complex<double> y = 1.0 / std::complex<double>(b.r, b.x);
    const FlowCoefficients fc = branch_constants(b);
    CHECK(std::abs(fc.from_self - std::conj(y)) < 1e-14);
    CHECK(std::abs(fc.from_pair + std::conj(y)) < 1e-14);
    CHECK(std::abs(fc.to_self - std::conj(y)) < 1e-14);
    CHECK(std::abs(fc.to_pair + std::conj(y)) < 1e-14);
}

TEST_CASE("zero-impedance branch is rejected") {
    Branch b;
    b.r = 0.0;
    b.x = 0.0;
    CHECK_THROWS(branch_constants(b));
    std::string text = two_bus_case();
    const auto pos = text.find("1	2	0.0	0.1");
    text.replace(pos, std::string("1	2	0.0	0.1").size(), "1	2	0.0	0.0");
    CHECK_THROWS_AS(parse_matpower(text), ParseError);
}

TEST_CASE("malformed matrix rows carry a line number") {
    std::string text = two_bus_case();
    const auto pos = text.find("100.0	30.0");
    text.replace(pos, 5, "oops!");
    try {
        parse_matpower(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line > 0);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("piecewise gencost is an unsupported feature") {
    std::string text = two_bus_case();
    const auto pos = text.find("2	0.0	0.0	3");
    text.replace(pos, 1, "1");
    CHECK_THROWS_AS(parse_matpower(text), UnsupportedError);
}

TEST_CASE("out-of-service rows are dropped") {
    std::string text = two_bus_case();
    // add a disabled second branch and generator
    text.replace(text.find("mpc.gen = [\n") + 12, 0,
                 "\t2\t0.0\t0.0\t1.0\t-1.0\t1.0\t100.0\t0\t1.0\t0.0;\n");
    text.replace(text.find("mpc.gencost = [\n") + 16, 0,
                 "\t2\t0.0\t0.0\t3\t0.0\t9.0\t0.0;\n");
    const Network n = parse_matpower(text);
    CHECK(n.generators.size() == 1);
    CHECK(n.generators[0].bus_id == 1);
}

TEST_CASE("supplied PAD bounds clamp into the open half-pi interval") {
    std::string text = two_bus_case();
    const auto pos = text.find("1	0.0	0.0;");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("1	0.0	0.0;").size(), "1	-120.0	100.0;");
    const Network n = parse_matpower(text);
    CHECK(n.branches[0].angmin > -kPi / 2);
    CHECK(n.branches[0].angmax < kPi / 2);
    CHECK_FALSE(n.branches[0].pad_defaulted);
}

TEST_CASE("exactly one reference bus is required") {
    std::string text = two_bus_case();
    const auto pos = text.find("1	3	0.0");
    text.replace(pos, std::string("1	3").size(), "1	1");
    CHECK_THROWS_AS(parse_matpower(text), ParseError);
}

TEST_CASE("reversed and parallel branches share one canonical edge") {
    std::string text = two_bus_case();
    text.replace(text.find("mpc.branch = [\n") + 15, 0,
                 "\t2\t1\t0.01\t0.2\t0.0\t0.0\t0.0\t0.0\t0.0\t0.0\t1\t-20.0\t10.0;\n");
    const Network n = parse_matpower(text);
    CHECK(n.branches.size() == 2);
    const auto edges = build_edges(n);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].branches.size() == 2);
    // reversed branch PAD [-20, 10] degrees maps to [-10, 20] on theta_1 - theta_2,
    // intersected with the defaulted +-60 of the aligned branch
    CHECK(edges[0].angmin == doctest::Approx(-10.0 * kPi / 180.0));
    CHECK(edges[0].angmax == doctest::Approx(20.0 * kPi / 180.0));
}
