#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lavgap/energy.hpp"
#include "lavgap/hypotheses.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

struct BoundaryData {
    Vec start;              // y at the left endpoint
    std::optional<Vec> end; // y at the right endpoint, when the problem pins it
};

// Closed-form side information a registered example carries, so studies and
// budgets can be checked against exact values instead of estimates.
struct AnalyticInfo {
    std::optional<double> base_energy; // F(y)
    std::optional<double> weight_sup;  // sup of Psi near the graph
    std::function<double(double)> xi_plus;       // nu -> Xi^+
    std::function<double(double)> upsilon_minus; // lambda -> Upsilon^-
    std::optional<double> default_lambda_bar;    // ceiling for two-sided plans
    TimeRegularityConstants time_reg;            // kappa/beta/gamma envelope
};

struct ProblemSpec {
    std::string name;
    std::string summary;
    Lagrangian lagrangian;
    Trajectory trajectory;
    BoundaryData boundary;
    std::optional<Interval> state_window; // constraint the curve must stay in
    AnalyticInfo analytic;
    ProbeBox default_box; // sensible probe ranges for hypothesis checks
};

// Compiled-in example problems:
//   "mania"     y = s^{1/3} with density (z^3 - s)^2 v^6: zero energy on the
//               minimizer, diverging energy along every Lipschitz cap.
//   "alberti"   velocity-constrained zero density (v <= 1/(2(1-z))): the cap
//               keeps the energy at zero but the ceiling collapses along the
//               curve, so only one endpoint can be anchored.
//   "baseline"  y = s^{0.6} with density v^2: real-valued, finite energy,
//               fully analytic surplus bookkeeping; the positive control.
//   "power"     parameterized family y = s^e, density |v|^q
//               (params: "exponent" e in (0,1), "power" q >= 1).
ProblemSpec get_example(const std::string& name,
                        const std::map<std::string, double>& params = {});

std::vector<std::pair<std::string, std::string>> list_examples();

} // namespace lavgap
