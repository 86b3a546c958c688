#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "lavgap/energy.hpp"
#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"
#include "lavgap/problems.hpp"
#include "lavgap/quadrature.hpp"

using namespace lavgap;

TEST_CASE("the registry lists each example once with a summary") {
    auto all = list_examples();
    REQUIRE(all.size() == 4);
    CHECK(all[0].first == "mania");
    CHECK(all[1].first == "alberti");
    CHECK(all[2].first == "baseline");
    CHECK(all[3].first == "power");
    for (const auto& [name, summary] : all) {
        CHECK(!summary.empty());
    }
}

TEST_CASE("lookups validate names and parameters") {
    CHECK_THROWS_AS(get_example("fubini"), config_error);
    CHECK_THROWS_WITH_AS(get_example("mania", {{"exponent", 0.5}}),
                         "example 'mania' takes no parameters", config_error);
    CHECK_THROWS_AS(get_example("alberti", {{"power", 2.0}}), config_error);
    CHECK_THROWS_AS(get_example("baseline", {{"power", 2.0}}), config_error);
    CHECK_THROWS_WITH_AS(get_example("power", {{"order", 2.0}}),
                         "example 'power': unknown parameter 'order'", config_error);
    CHECK_THROWS_AS(get_example("power", {{"exponent", 1.0}}), config_error);
    CHECK_THROWS_AS(get_example("power", {{"exponent", 0.0}}), config_error);
    CHECK_THROWS_AS(get_example("power", {{"power", 0.5}}), config_error);
}

TEST_CASE("the power family defaults to the positive control's parameters") {
    auto deflt = get_example("power");
    auto baseline = get_example("baseline");
    REQUIRE(deflt.analytic.base_energy.has_value());
    REQUIRE(baseline.analytic.base_energy.has_value());
    CHECK(*deflt.analytic.base_energy == *baseline.analytic.base_energy);
    // e^q / ((e-1) q + 1) at e=0.6, q=2: the formula evaluates to 1.8 up to
    // one rounding of the non-representable inputs
    CHECK(std::abs(*baseline.analytic.base_energy - 1.8) <= 1e-12);
    CHECK(deflt.name == "power");
    CHECK(baseline.name == "baseline");
}

TEST_CASE("power-family closed forms follow the parameters") {
    auto steep = get_example("power", {{"exponent", 0.8}, {"power", 3.0}});
    REQUIRE(steep.analytic.base_energy.has_value());
    CHECK(std::abs(*steep.analytic.base_energy - 1.28) <= 1e-12);

    // (e - 1) q + 1 = 0: the density is not integrable along the curve,
    // so there is no closed-form base energy to report
    auto marginal = get_example("power", {{"exponent", 0.5}, {"power", 2.0}});
    CHECK(!marginal.analytic.base_energy.has_value());

    REQUIRE(steep.analytic.default_lambda_bar.has_value());
    CHECK(*steep.analytic.default_lambda_bar == 2.0);
    CHECK(steep.analytic.upsilon_minus(2.0) == 16.0); // (q - 1) lambda^q
}

TEST_CASE("analytic surplus constants for the pinched and ceiling examples") {
    auto mania = get_example("mania");
    CHECK(*mania.analytic.base_energy == 0.0);
    CHECK(*mania.analytic.weight_sup == 1.0);
    CHECK(mania.analytic.xi_plus(7.0) == 0.0);
    CHECK(mania.analytic.upsilon_minus(2.0) == 320.0); // 5 lambda^6
    CHECK(!mania.analytic.default_lambda_bar.has_value());
    CHECK(mania.analytic.time_reg.kappa == 0.0);
    CHECK(mania.analytic.time_reg.beta == 0.0);
    CHECK(mania.analytic.time_reg.gamma == 0.0);

    auto alberti = get_example("alberti");
    CHECK(*alberti.analytic.base_energy == 0.0);
    CHECK(alberti.analytic.upsilon_minus(5.0) == 0.0);
    CHECK(!alberti.analytic.default_lambda_bar.has_value());
}

TEST_CASE("trajectories hit their declared boundary data exactly") {
    for (const char* name : {"mania", "alberti", "baseline"}) {
        auto spec = get_example(name);
        CHECK(spec.trajectory.value(spec.trajectory.domain.lo) == spec.boundary.start);
        REQUIRE(spec.boundary.end.has_value());
        CHECK(spec.trajectory.value(spec.trajectory.domain.hi) == *spec.boundary.end);
    }
}

TEST_CASE("trajectories stay inside their declared state window") {
    for (const char* name : {"mania", "alberti", "baseline"}) {
        auto spec = get_example(name);
        REQUIRE(spec.state_window.has_value());
        for (int i = 0; i <= 256; ++i) {
            double s = spec.trajectory.domain.lo + spec.trajectory.domain.length() * i / 256.0;
            double z = spec.trajectory.value(s)[0];
            CHECK(spec.state_window->contains(z));
        }
    }
}

TEST_CASE("stored speed antiderivatives agree with quadrature") {
    for (const char* name : {"mania", "alberti", "baseline"}) {
        auto spec = get_example(name);
        const auto& y = spec.trajectory;
        REQUIRE(y.speed_antideriv != nullptr);
        auto f = [&](double s) { return y.speed(s); };
        for (auto [a, b] : {std::pair{0.1, 0.9}, std::pair{0.25, 0.5}}) {
            auto q = integrate(f, Interval{a, b});
            REQUIRE(!q.diverged);
            CHECK(std::abs(q.value - y.speed_antideriv(a, b)) <= 1e-9);
        }
        // and across the singular endpoint, where only the closed form is exact
        double total = y.speed_antideriv(y.domain.lo, y.domain.hi);
        CHECK(std::abs(total - 1.0) <= 1e-15); // all three travel unit distance
    }
}

TEST_CASE("singular endpoints are declared so slicing can avoid them") {
    auto mania = get_example("mania");
    REQUIRE(mania.trajectory.singular_points.size() == 1);
    CHECK(mania.trajectory.singular_points[0] == 0.0);
    CHECK(mania.trajectory.sample(0.0).deriv_unbounded);

    auto alberti = get_example("alberti");
    REQUIRE(alberti.trajectory.singular_points.size() == 1);
    CHECK(alberti.trajectory.singular_points[0] == 1.0);

    auto baseline = get_example("baseline");
    CHECK(baseline.trajectory.sobolev_p == 2.0); // y' in L^2, barely not in L^2.5
}

TEST_CASE("default probe boxes cover the unit window") {
    for (const char* name : {"mania", "alberti", "baseline", "power"}) {
        auto spec = get_example(name);
        CHECK(spec.default_box.s_range.lo == 0.0);
        CHECK(spec.default_box.s_range.hi == 1.0);
        CHECK(spec.default_box.count == 10000);
        CHECK(spec.default_box.v_halfwidth == 4.0);
        CHECK(spec.default_box.dim == 1);
    }
}

TEST_CASE("the ceiling example's membership matches its density") {
    auto alberti = get_example("alberti");
    const auto& lag = alberti.lagrangian;
    // below the ceiling: zero; above: infinite; backwards motion always allowed
    CHECK(lag.lambda(0.3, {0.5}, {0.9}) == 0.0);
    CHECK(lag.lambda(0.3, {0.5}, {1.1}) == inf);
    CHECK(lag.lambda(0.3, {0.5}, {-3.0}) == 0.0);
    CHECK(lag.lambda(0.3, {1.5}, {0.0}) == inf); // outside the state strip
    CHECK(!lag.real_valued);
    // the curve rides the ceiling exactly and still belongs to the domain
    const auto& y = alberti.trajectory;
    for (double s : {0.1, 0.5, 0.9}) {
        auto smp = y.sample(s);
        CHECK(lag.in_domain(s, smp.value, smp.deriv));
    }
}
