#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"
#include "lavgap/hypotheses.hpp"
#include "lavgap/problems.hpp"

using namespace lavgap;

namespace {

ProbeBox small_box() {
    ProbeBox box;
    box.count = 4000;
    return box;
}

} // namespace

TEST_CASE("time regularity holds for (1+s) v^2 with the right constant and not below it") {
    Lagrangian lag;
    lag.lambda = [](double s, const Vec&, const Vec& v) { return (1.0 + s) * v[0] * v[0]; };
    lag.psi = Lagrangian::unit_psi();
    lag.in_domain = [](double, const Vec&, const Vec&) { return true; };
    lag.autonomous = false;

    TimeRegularityConstants good;
    good.kappa = 1.0; // |d/ds L| = v^2 <= kappa (1+s) v^2
    CHECK(verify_time_regularity(lag, good, small_box()).verdict == Verdict::pass);

    TimeRegularityConstants tight;
    tight.kappa = 0.5; // fails near s = 0 where L is only v^2
    auto rep = verify_time_regularity(lag, tight, small_box());
    CHECK(rep.verdict == Verdict::falsified);
    CHECK(rep.witness.has_value());
}

TEST_CASE("time regularity is falsified when the time slope has no integrable envelope") {
    Lagrangian lag;
    lag.lambda = [](double s, const Vec&, const Vec& v) {
        return std::sqrt(s) * v[0] * v[0];
    };
    lag.psi = Lagrangian::unit_psi();
    lag.in_domain = [](double, const Vec&, const Vec&) { return true; };
    lag.autonomous = false;

    TimeRegularityConstants c;
    c.kappa = 1.0;
    c.beta = 1.0;
    c.gamma = 10.0;
    // the violating region (both probe times near 0, |v| large) is a thin
    // slice of the box, so this one needs a dense probe set to be caught
    ProbeBox dense;
    dense.count = 100000;
    CHECK(verify_time_regularity(lag, c, dense).verdict == Verdict::falsified);
}

TEST_CASE("boundedness near the graph, inside the velocity window") {
    auto mania = get_example("mania");
    auto rep = verify_boundedness(mania.lagrangian, mania.trajectory, WindowBound{2.0},
                                  small_box());
    CHECK(rep.verdict == Verdict::pass);
    REQUIRE(rep.statistic.has_value());
    CHECK(*rep.statistic < 1e3);

    // the ceiling example is zero on its whole domain
    auto alberti = get_example("alberti");
    auto rep2 = verify_boundedness(alberti.lagrangian, alberti.trajectory, WindowBound{2.0},
                                   small_box());
    CHECK(rep2.verdict == Verdict::pass);
    CHECK(*rep2.statistic == 0.0);

    // a lagrangian that lies about its domain is caught
    Lagrangian liar;
    liar.lambda = [](double, const Vec&, const Vec&) { return inf; };
    liar.psi = Lagrangian::unit_psi();
    liar.in_domain = [](double, const Vec&, const Vec&) { return true; };
    auto rep3 = verify_boundedness(liar, mania.trajectory, WindowBound{2.0}, small_box());
    CHECK(rep3.verdict == Verdict::falsified);
}

TEST_CASE("boundedness well inside the domain validates its inputs") {
    auto baseline = get_example("baseline");
    WellInsideBound mode;
    mode.lambda_bar = 2.0;
    mode.rho = 1.0;
    auto rep = verify_boundedness(baseline.lagrangian, baseline.trajectory, mode, small_box());
    CHECK(rep.verdict == Verdict::pass);

    WellInsideBound too_low;
    too_low.lambda_bar = 0.5; // below the mean speed, no plan could use it
    too_low.rho = 1.0;
    CHECK_THROWS_AS(
        verify_boundedness(baseline.lagrangian, baseline.trajectory, too_low, small_box()),
        config_error);

    WellInsideBound bad_rho;
    bad_rho.lambda_bar = 2.0;
    bad_rho.rho = 0.0;
    CHECK_THROWS_AS(
        verify_boundedness(baseline.lagrangian, baseline.trajectory, bad_rho, small_box()),
        config_error);
}

TEST_CASE("blow-up toward the domain boundary distinguishes walls from cliffs") {
    // barrier density: grows without bound approaching |v| = 1
    Lagrangian barrier;
    barrier.lambda = [](double, const Vec&, const Vec& v) {
        double r = 1.0 - v[0] * v[0];
        return r > 0.0 ? 1.0 / r : inf;
    };
    barrier.psi = Lagrangian::unit_psi();
    barrier.in_domain = [](double, const Vec&, const Vec& v) { return std::abs(v[0]) < 1.0; };
    barrier.real_valued = false;
    auto walk = Trajectory::scalar(Interval{0.0, 1.0}, [](double s) { return 0.5 * s; },
                                   [](double) { return 0.5; });
    std::vector<double> levels = {1e3, 1e6, 1e9};
    CHECK(verify_blow_up(barrier, walk, DistKind::u_distance, levels, small_box()).verdict ==
          Verdict::pass);

    // the ceiling example stays at zero right up to its boundary
    auto alberti = get_example("alberti");
    auto rep = verify_blow_up(alberti.lagrangian, alberti.trajectory, DistKind::u_distance,
                              levels, small_box());
    CHECK(rep.verdict == Verdict::falsified);
}

TEST_CASE("weight diagnostics: bounds, continuity, and the vanishing graph weight") {
    auto mania = get_example("mania");
    auto w = verify_weight(mania.lagrangian, mania.trajectory, small_box());
    CHECK(w.bounded.verdict == Verdict::pass);
    CHECK(w.continuous.verdict == Verdict::pass);
    CHECK(w.positive.verdict == Verdict::falsified); // (z^3 - s)^2 vanishes on the graph
    CHECK(w.graph_inf < kWeightFloor);
    CHECK(w.sup > 0.0);

    auto baseline = get_example("baseline");
    auto wb = verify_weight(baseline.lagrangian, baseline.trajectory, small_box());
    CHECK(wb.bounded.verdict == Verdict::pass);
    CHECK(wb.continuous.verdict == Verdict::pass);
    CHECK(wb.positive.verdict == Verdict::pass);
    CHECK(wb.sup == 1.0);
    CHECK(wb.graph_inf == 1.0);
}

TEST_CASE("segment reachability passes on fat domains and is inconclusive on empty ones") {
    auto baseline = get_example("baseline");
    CHECK(verify_segment_reachability(baseline.lagrangian, DistKind::u_distance,
                                      Interval{0.0, 1.0}, small_box())
              .verdict == Verdict::pass);
    auto alberti = get_example("alberti");
    CHECK(verify_segment_reachability(alberti.lagrangian, DistKind::u_distance,
                                      Interval{0.0, 1.0}, small_box())
              .verdict == Verdict::pass);

    Lagrangian empty;
    empty.lambda = [](double, const Vec&, const Vec&) { return inf; };
    empty.psi = Lagrangian::unit_psi();
    empty.in_domain = [](double, const Vec&, const Vec&) { return false; };
    empty.real_valued = false;
    CHECK(verify_segment_reachability(empty, DistKind::u_distance, Interval{0.0, 1.0},
                                      small_box())
              .verdict == Verdict::inconclusive);
}

TEST_CASE("linear growth floors") {
    auto baseline = get_example("baseline");
    auto rep = verify_linear_growth(baseline.lagrangian, small_box());
    CHECK(rep.verdict == Verdict::pass);
    REQUIRE(rep.statistic.has_value());
    // worst margin of v^2 >= |v| - 1 is -(min v^2 - |v| + 1) = -3/4
    CHECK(std::abs(*rep.statistic - (-0.75)) <= 1e-4);

    Lagrangian braggart = baseline.lagrangian;
    braggart.growth = LinearGrowth{2.0, 0.0}; // v^2 >= 2|v| fails at v = 1
    auto rep2 = verify_linear_growth(braggart, small_box());
    CHECK(rep2.verdict == Verdict::falsified);
    CHECK(rep2.witness.has_value());

    Lagrangian silent = baseline.lagrangian;
    silent.growth.reset();
    CHECK(verify_linear_growth(silent, small_box()).verdict == Verdict::inconclusive);
}

TEST_CASE("integrability of the density along the curve") {
    auto mania = get_example("mania");
    auto rep = verify_density_integrable(mania.lagrangian, mania.trajectory);
    CHECK(rep.verdict == Verdict::falsified); // v^6 ~ s^-4 along the curve
    REQUIRE(rep.statistic.has_value());
    CHECK(*rep.statistic == inf);

    auto baseline = get_example("baseline");
    auto rep2 = verify_density_integrable(baseline.lagrangian, baseline.trajectory);
    CHECK(rep2.verdict == Verdict::pass);
    CHECK(std::abs(*rep2.statistic - 1.8) <= 1e-6);

    auto alberti = get_example("alberti");
    auto rep3 = verify_density_integrable(alberti.lagrangian, alberti.trajectory);
    CHECK(rep3.verdict == Verdict::pass);
    CHECK(*rep3.statistic == 0.0);
}

TEST_CASE("explicit rank constants reproduce hand arithmetic") {
    RankBoundInputs a;
    a.boundary_magnitude = 0.0;
    a.energy_floor = 1.0;
    a.weight_floor = 1.0;
    a.growth_alpha = 1.0;
    a.growth_offset = 0.0;
    a.domain = Interval{0.0, 1.0};
    auto ra = explicit_rank_bounds(a);
    CHECK(ra.lipschitz_rank == 1.0);
    CHECK(ra.slope_floor == 1.0);

    RankBoundInputs b;
    b.boundary_magnitude = 1.0;
    b.energy_floor = 2.0;
    b.weight_floor = 0.5;
    b.growth_alpha = 2.0;
    b.growth_offset = 1.0;
    b.domain = Interval{0.0, 2.0};
    auto rb = explicit_rank_bounds(b);
    CHECK(rb.lipschitz_rank == 4.0); // 1 + (2 + 0.5 * 1 * 2) / (0.5 * 2)
    CHECK(rb.slope_floor == 1.5);    // (2 + 1) / (0.5 * 2 * 2)
}

TEST_CASE("the derivative-mass bound is an equality for a pure speed integrand") {
    auto power = get_example("power", {{"exponent", 0.6}, {"power", 1.0}});
    auto check = deriv_mass_bound(power.lagrangian, power.trajectory, 1.0);
    CHECK(check.verdict == Verdict::pass);
    CHECK(std::abs(check.deriv_l1 - 1.0) <= 1e-8);
    CHECK(std::abs(check.bound - check.deriv_l1) <= 1e-8);

    // for the quadratic density the bound is strict but still valid
    auto baseline = get_example("baseline");
    auto loose = deriv_mass_bound(baseline.lagrangian, baseline.trajectory, 1.0);
    CHECK(loose.verdict == Verdict::pass);
    CHECK(loose.deriv_l1 <= loose.bound + 1e-9);
}

TEST_CASE("hypothesis names are stable identifiers") {
    CHECK(to_string(HypothesisName::time_regularity) == "time_regularity");
    CHECK(to_string(HypothesisName::radial_convexity) == "radial_convexity");
    CHECK(to_string(HypothesisName::boundary_blow_up) == "boundary_blow_up");
    CHECK(to_string(HypothesisName::weight_positive) == "weight_positive");
    CHECK(to_string(HypothesisName::density_integrable) == "density_integrable");
}
