#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/problems.hpp"

using namespace lavgap;

namespace {

Lagrangian quadratic_density() {
    Lagrangian lag;
    lag.name = "quadratic";
    lag.lambda = [](double, const Vec&, const Vec& v) { return v[0] * v[0]; };
    lag.psi = Lagrangian::unit_psi();
    lag.in_domain = [](double, const Vec&, const Vec&) { return true; };
    lag.grad_v = [](double, const Vec&, const Vec& v) { return Vec{2.0 * v[0]}; };
    return lag;
}

Lagrangian half_space_ceiling() {
    // velocity domain v <= 1, infinite beyond
    Lagrangian lag;
    lag.name = "ceiling";
    lag.in_domain = [](double, const Vec&, const Vec& v) { return v[0] <= 1.0; };
    lag.lambda = [&](double s, const Vec& z, const Vec& v) {
        return v[0] <= 1.0 ? 0.0 : inf;
    };
    lag.psi = Lagrangian::unit_psi();
    lag.real_valued = false;
    return lag;
}

} // namespace

TEST_CASE("density evaluation annihilates infinite factors against zero weights") {
    Lagrangian lag;
    lag.lambda = [](double, const Vec&, const Vec&) { return inf; };
    lag.psi = [](double, const Vec&) { return 0.0; };
    lag.in_domain = [](double, const Vec&, const Vec&) { return false; };
    CHECK(eval_density(lag, 0.5, {0.0}, {1.0}) == 0.0);

    Lagrangian flipped;
    flipped.lambda = [](double, const Vec&, const Vec&) { return 0.0; };
    flipped.psi = [](double, const Vec&) { return inf; };
    flipped.in_domain = [](double, const Vec&, const Vec&) { return true; };
    CHECK(eval_density(flipped, 0.5, {0.0}, {1.0}) == 0.0);

    auto quad = quadratic_density();
    CHECK(eval_density(quad, 0.1, {0.2}, {3.0}) == 9.0);
}

TEST_CASE("registered velocity domains have the advertised membership") {
    auto alberti = get_example("alberti").lagrangian;
    CHECK(!alberti.real_valued);
    // nonpositive velocities are always admissible inside the state band
    CHECK(alberti.in_domain(0.3, {0.5}, {-2.0}));
    CHECK(alberti.in_domain(0.3, {0.5}, {0.0}));
    // the ceiling at z: v <= 1/(2(1-z))
    CHECK(alberti.in_domain(0.3, {0.5}, {0.99}));
    CHECK(!alberti.in_domain(0.3, {0.5}, {1.01}));
    CHECK(alberti.lambda(0.3, {0.5}, {0.99}) == 0.0);
    CHECK(alberti.lambda(0.3, {0.5}, {1.01}) == inf);
    // outside the state band nothing is admissible
    CHECK(!alberti.in_domain(0.3, {1.5}, {0.0}));
    CHECK(!alberti.in_domain(0.3, {-0.5}, {0.0}));

    CHECK(get_example("mania").lagrangian.real_valued);
    CHECK(get_example("baseline").lagrangian.real_valued);
}

TEST_CASE("the radial slope probe matches closed forms") {
    // slope of mu -> mu * lambda(v / mu) at mu = 1
    auto quad = quadratic_density();
    CHECK(std::abs(subgradient_P(quad, 0.0, {0.0}, {3.0}) - (-9.0)) <= 1e-8);
    CHECK(std::abs(analytic_P(quad, 0.0, {0.0}, {3.0}) - (-9.0)) <= 1e-14);

    Lagrangian absval;
    absval.lambda = [](double, const Vec&, const Vec& v) { return std::abs(v[0]); };
    absval.psi = Lagrangian::unit_psi();
    absval.in_domain = [](double, const Vec&, const Vec&) { return true; };
    CHECK(std::abs(subgradient_P(absval, 0.0, {0.0}, {3.0})) <= 1e-10);

    auto mania = get_example("mania").lagrangian;
    CHECK(std::abs(subgradient_P(mania, 0.0, {0.0}, {1.0}) - (-5.0)) <= 1e-8);
    CHECK(std::abs(analytic_P(mania, 0.0, {0.0}, {1.0}) - (-5.0)) <= 1e-12);

    // degenerate domain: no admissible radial neighbor on either side
    Lagrangian thin;
    thin.lambda = [](double, const Vec&, const Vec& v) { return v[0] * v[0]; };
    thin.psi = Lagrangian::unit_psi();
    thin.in_domain = [](double, const Vec&, const Vec& v) {
        return std::abs(v[0] - 1.0) < 1e-13;
    };
    thin.real_valued = false;
    CHECK_THROWS_AS(subgradient_P(thin, 0.5, {0.0}, {1.0}), numeric_error);
}

TEST_CASE("distances to the velocity-domain complement") {
    auto mania = get_example("mania").lagrangian;
    CHECK(dist_to_complement(mania, DistKind::u_distance, 0.0, 1.0, 0.5, {0.5}, {1.0}) == inf);
    CHECK(dist_to_complement(mania, DistKind::euclidean, 0.0, 1.0, 0.5, {0.5}, {1.0}) == inf);

    auto ceiling = half_space_ceiling();
    double du = dist_to_complement(ceiling, DistKind::u_distance, 0.0, 1.0, 0.5, {0.0}, {0.3});
    CHECK(std::abs(du - 0.7) <= 1e-8);
    double de = dist_to_complement(ceiling, DistKind::euclidean, 0.0, 1.0, 0.5, {0.0}, {0.3});
    CHECK(std::abs(de - 0.7) <= 1e-6); // nearest boundary point lies on the same fiber

    auto alberti = get_example("alberti").lagrangian;
    double z = 0.25, q = 0.5 / (1.0 - z);
    double fiber = dist_to_complement(alberti, DistKind::u_distance, 0.0, 1.0, 0.4, {z}, {0.1});
    CHECK(std::abs(fiber - (q - 0.1)) <= 1e-8);
}

TEST_CASE("dist kind names round-trip") {
    CHECK(dist_kind_from_string("euclidean") == DistKind::euclidean);
    CHECK(dist_kind_from_string("e") == DistKind::euclidean);
    CHECK(dist_kind_from_string("u") == DistKind::u_distance);
    CHECK(dist_kind_from_string("u_distance") == DistKind::u_distance);
    CHECK(to_string(DistKind::euclidean) == "euclidean");
    CHECK(to_string(DistKind::u_distance) == "u");
    CHECK_THROWS_AS(dist_kind_from_string("manhattan"), config_error);
}

TEST_CASE("structure probes accept convex densities and star-shaped domains") {
    ProbeBox box;
    box.count = 4000;

    auto quad = structure_check(quadratic_density(), box);
    CHECK(quad.radially_convex.verdict == Verdict::pass);
    CHECK(quad.star_shaped.verdict == Verdict::pass);

    auto alberti = structure_check(get_example("alberti").lagrangian, box);
    CHECK(alberti.radially_convex.verdict == Verdict::pass);
    CHECK(alberti.star_shaped.verdict == Verdict::pass);
}

TEST_CASE("structure probes falsify a double well and a ring domain") {
    ProbeBox box;
    box.count = 4000;

    Lagrangian doublewell;
    doublewell.lambda = [](double, const Vec&, const Vec& v) {
        double u = v[0] * v[0] - 1.0;
        return u * u;
    };
    doublewell.psi = Lagrangian::unit_psi();
    doublewell.in_domain = [](double, const Vec&, const Vec&) { return true; };
    auto dw = structure_check(doublewell, box);
    CHECK(dw.radially_convex.verdict == Verdict::falsified);
    CHECK(dw.radially_convex.witness.has_value());
    CHECK(dw.star_shaped.verdict == Verdict::pass);

    Lagrangian ring;
    ring.lambda = [](double, const Vec&, const Vec& v) {
        return std::abs(v[0]) >= 1.0 ? 1.0 : inf;
    };
    ring.psi = Lagrangian::unit_psi();
    ring.in_domain = [](double, const Vec&, const Vec& v) { return std::abs(v[0]) >= 1.0; };
    ring.real_valued = false;
    auto rg = structure_check(ring, box);
    CHECK(rg.star_shaped.verdict == Verdict::falsified);
    CHECK(rg.star_shaped.witness.has_value());
}

TEST_CASE("probe boxes draw within their ranges") {
    ProbeBox box;
    box.s_range = Interval{0.25, 0.75};
    box.z_halfwidth = 1.5;
    box.v_halfwidth = 3.0;
    box.dim = 2;
    ProbeRng rng(9);
    for (int i = 0; i < 256; ++i) {
        auto p = draw_probe(rng, box);
        CHECK(p.s >= 0.25);
        CHECK(p.s < 0.75);
        REQUIRE(p.z.size() == 2);
        REQUIRE(p.v.size() == 2);
        for (double c : p.z) CHECK(std::abs(c) <= 1.5);
        for (double c : p.v) CHECK(std::abs(c) <= 3.0);
    }
}

TEST_CASE("verdict names") {
    CHECK(to_string(Verdict::pass) == "pass");
    CHECK(to_string(Verdict::falsified) == "falsified");
    CHECK(to_string(Verdict::inconclusive) == "inconclusive");
}
