#include "lavgap/problems.hpp"

#include <cmath>

#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"

namespace lavgap {

namespace {

ProbeBox unit_box() {
    ProbeBox box;
    box.s_range = Interval{0.0, 1.0};
    box.z_halfwidth = 2.0;
    box.v_halfwidth = 4.0;
    box.dim = 1;
    box.count = 10000;
    box.seed = 0;
    return box;
}

ProblemSpec make_mania() {
    ProblemSpec spec;
    spec.name = "mania";
    spec.summary = "y = s^(1/3), density (z^3 - s)^2 v^6: zero energy on the curve, "
                   "divergent along Lipschitz caps";

    Lagrangian lag;
    lag.name = "sixth-power-with-pinch";
    lag.lambda = [](double, const Vec&, const Vec& v) {
        double u = v[0] * v[0];
        return u * u * u;
    };
    lag.psi = [](double s, const Vec& z) {
        double c = z[0] * z[0] * z[0] - s;
        return c * c;
    };
    lag.in_domain = [](double, const Vec&, const Vec&) { return true; };
    lag.autonomous = true; // the weight depends on s, lambda does not
    lag.real_valued = true;
    lag.growth = LinearGrowth{1.0, 1.0}; // v^6 >= |v| - 1
    lag.grad_v = [](double, const Vec&, const Vec& v) {
        double v2 = v[0] * v[0];
        return Vec{6.0 * v2 * v2 * v[0]};
    };
    spec.lagrangian = lag;

    spec.trajectory = Trajectory::scalar(
        Interval{0.0, 1.0}, [](double s) { return std::cbrt(s); },
        [](double s) { return 1.0 / (3.0 * std::cbrt(s) * std::cbrt(s)); }, {0.0}, 1.0,
        [](double a, double b) { return std::cbrt(b) - std::cbrt(a); });

    spec.boundary.start = {0.0};
    spec.boundary.end = Vec{1.0};
    spec.state_window = Interval{0.0, 1.0};

    spec.analytic.base_energy = 0.0;
    spec.analytic.weight_sup = 1.0; // sup (z^3 - s)^2 on [0,1] x [0,1]
    spec.analytic.xi_plus = [](double) { return 0.0; }; // P = -5 v^6 <= 0
    spec.analytic.upsilon_minus = [](double lambda) {
        double l2 = lambda * lambda;
        return 5.0 * l2 * l2 * l2;
    };
    // no default lambda_bar: two-sided plans must state their ceiling
    spec.default_box = unit_box();
    return spec;
}

ProblemSpec make_alberti() {
    ProblemSpec spec;
    spec.name = "alberti";
    spec.summary = "zero density under the velocity ceiling v <= 1/(2(1-z)); the ceiling "
                   "collapses along the curve, so only one endpoint can be anchored";

    // Membership tolerance: the curve rides the boundary exactly (y' equals
    // the ceiling), so the predicate accepts a hair of slack.
    constexpr double slack = 1e-12;
    Lagrangian lag;
    lag.name = "collapsing-ceiling-indicator";
    auto member = [](double, const Vec& z, const Vec& v) {
        if (z[0] < 0.0 || z[0] > 1.0) return false;
        if (v[0] <= 0.0) return true;
        return 2.0 * v[0] * (1.0 - z[0]) <= 1.0 + slack;
    };
    lag.in_domain = member;
    lag.lambda = [member](double s, const Vec& z, const Vec& v) {
        return member(s, z, v) ? 0.0 : inf;
    };
    lag.psi = Lagrangian::unit_psi();
    lag.autonomous = true;
    lag.real_valued = false;
    lag.grad_v = [](double, const Vec&, const Vec&) { return Vec{0.0}; };
    spec.lagrangian = lag;

    spec.trajectory = Trajectory::scalar(
        Interval{0.0, 1.0}, [](double s) { return 1.0 - std::sqrt(1.0 - s); },
        [](double s) { return 0.5 / std::sqrt(1.0 - s); }, {1.0}, 1.0,
        [](double a, double b) { return std::sqrt(1.0 - a) - std::sqrt(1.0 - b); });

    spec.boundary.start = {0.0};
    spec.boundary.end = Vec{1.0};
    spec.state_window = Interval{0.0, 1.0};

    spec.analytic.base_energy = 0.0;
    spec.analytic.weight_sup = 1.0;
    spec.analytic.xi_plus = [](double) { return 0.0; };       // P = 0 on the domain
    spec.analytic.upsilon_minus = [](double) { return 0.0; }; // "
    spec.default_box = unit_box();
    return spec;
}

ProblemSpec make_power(double exponent, double power, const std::string& name) {
    if (!(exponent > 0.0) || !(exponent < 1.0))
        throw config_error("power family: exponent must lie in (0, 1)");
    if (!(power >= 1.0)) throw config_error("power family: power must be >= 1");

    ProblemSpec spec;
    spec.name = name;
    spec.summary = "y = s^e with density |v|^q: real-valued integrand with analytic "
                   "surplus bookkeeping";

    Lagrangian lag;
    lag.name = "power-density";
    lag.lambda = [power](double, const Vec&, const Vec& v) {
        return std::pow(std::fabs(v[0]), power);
    };
    lag.psi = Lagrangian::unit_psi();
    lag.in_domain = [](double, const Vec&, const Vec&) { return true; };
    lag.autonomous = true;
    lag.real_valued = true;
    // |v|^q >= |v| - 1 for q >= 1; at q = 1 the growth floor is |v| itself,
    // so the derivative-mass bound becomes an equality there.
    lag.growth = LinearGrowth{1.0, power == 1.0 ? 0.0 : 1.0};
    lag.grad_v = [power](double, const Vec&, const Vec& v) {
        if (v[0] == 0.0) return Vec{0.0};
        double mag = power * std::pow(std::fabs(v[0]), power - 1.0);
        return Vec{v[0] > 0.0 ? mag : -mag};
    };
    spec.lagrangian = lag;

    // Largest p with y' in L^p is 1/(1-e); stay a whisker inside it, floored
    // at 1 and capped at 2 so the registered exponent is broadly usable.
    double safe_p = std::min(2.0, std::max(1.0, 0.9 / (1.0 - exponent)));
    spec.trajectory = Trajectory::scalar(
        Interval{0.0, 1.0}, [exponent](double s) { return std::pow(s, exponent); },
        [exponent](double s) { return exponent * std::pow(s, exponent - 1.0); }, {0.0}, safe_p,
        [exponent](double a, double b) { return std::pow(b, exponent) - std::pow(a, exponent); });

    spec.boundary.start = {0.0};
    spec.boundary.end = Vec{1.0};
    spec.state_window = Interval{0.0, 1.0};

    double tail = (exponent - 1.0) * power + 1.0; // integral of |y'|^q converges iff > 0
    if (tail > 0.0) spec.analytic.base_energy = std::pow(exponent, power) / tail;
    spec.analytic.weight_sup = 1.0;
    spec.analytic.xi_plus = [](double) { return 0.0; }; // P = (1-q)|v|^q <= 0
    spec.analytic.upsilon_minus = [power](double lambda) {
        return (power - 1.0) * std::pow(lambda, power);
    };
    spec.analytic.default_lambda_bar = 2.0; // |y'|_1 = 1 on [0,1]
    spec.default_box = unit_box();
    return spec;
}

} // namespace

ProblemSpec get_example(const std::string& name, const std::map<std::string, double>& params) {
    auto param = [&params](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    auto reject_params = [&params](const std::string& who) {
        if (!params.empty())
            throw config_error("example '" + who + "' takes no parameters");
    };
    if (name == "mania") {
        reject_params(name);
        return make_mania();
    }
    if (name == "alberti") {
        reject_params(name);
        return make_alberti();
    }
    if (name == "baseline") {
        reject_params(name);
        ProblemSpec spec = make_power(0.6, 2.0, "baseline");
        spec.summary = "y = s^0.6 with density v^2: the fully analytic positive control";
        return spec;
    }
    if (name == "power") {
        for (const auto& [key, value] : params) {
            (void)value;
            if (key != "exponent" && key != "power")
                throw config_error("example 'power': unknown parameter '" + key + "'");
        }
        return make_power(param("exponent", 0.6), param("power", 2.0), "power");
    }
    throw config_error("unknown example '" + name +
                       "' (available: mania, alberti, baseline, power)");
}

std::vector<std::pair<std::string, std::string>> list_examples() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const char* name : {"mania", "alberti", "baseline", "power"}) {
        ProblemSpec spec = get_example(name);
        out.emplace_back(spec.name, spec.summary);
    }
    return out;
}

} // namespace lavgap
