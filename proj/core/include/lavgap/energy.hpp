#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lavgap/hypotheses.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/reparam.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

// Integral of Lambda(s, y, y') Psi(s, y) over the domain, honoring the
// convention 0 * inf = 0 and reporting divergence instead of a value.
struct EnergyValue {
    double value = 0.0; // +inf when the integral diverges
    double error_estimate = 0.0;
    bool diverged = false;
    bool max_depth_reached = false;
    int skipped_point_singularities = 0;
    std::optional<Interval> infinite_cell;
};

// Integrand of the functional at one time along a trajectory.
double density_along(const Lagrangian& lag, const Trajectory& y, double s);

EnergyValue energy(const Lagrangian& lag, const Trajectory& y,
                   const QuadratureOptions& quad_opts = {});

// (int |a' - b'|^p)^(1/p); +inf when the integral diverges.
double lp_distance_deriv(const Trajectory& a, const Trajectory& b, double p,
                         const QuadratureOptions& quad_opts = {});

// sup |a - b| on a dense grid plus both trajectories' breakpoints.
double sup_distance(const Trajectory& a, const Trajectory& b, int grid = 4096);

// A-priori bound on the energy excess of the reparametrized competitor:
//   F(y_nu) <= F(y) + eps * M * (Theta + Xi^+ + Upsilon^-),
// where Theta = 2 (1 + |y|_inf) (kappa |L(.,y,y')|_1 + beta |y'|_p^p + gamma |I|)
// collects the time-regularity constants, Xi bounds the velocity subgradient
// on the fast set and Upsilon on the slow set (two-sided anchoring only).
struct ErrorBudget {
    double theta = 0.0;
    double xi_plus = 0.0;
    double upsilon_minus = 0.0;
    double weight_sup = 0.0; // M
    double eps = 0.0;
    double bound = 0.0; // eps * M * (theta + xi_plus + upsilon_minus)
    bool analytic = false; // true when Xi/Upsilon came from closed forms
    // Sampling found no admissible slow-set probe for Upsilon; the bound is
    // then a best-effort diagnostic, not an estimate.
    bool upsilon_inconclusive = false;
};

ErrorBudget error_budget(const ReparamPlan& plan, const Lagrangian& lag, const Trajectory& y,
                         const TimeRegularityConstants& time_reg, double weight_sup,
                         std::optional<double> xi_plus, std::optional<double> upsilon_minus,
                         const QuadratureOptions& quad_opts = {});

struct NuSchedule {
    double start = 2.0;
    double factor = 2.0;
    int steps = 1;
};

struct StudyOptions {
    Anchor anchor = Anchor::initial;
    NuSchedule schedule;
    PlanTuning tuning;
    double p = 1.0; // exponent of the derivative-distance column
    QuadratureOptions quad;
    SuperlevelOptions superlevel;
    std::optional<double> base_energy; // closed-form F(y) when known
    std::optional<double> weight_sup;  // closed-form M when known
    std::function<double(double)> xi_plus;       // nu -> Xi^+ (closed form)
    std::function<double(double)> upsilon_minus; // lambda -> Upsilon^- (closed form)
    TimeRegularityConstants time_reg;
};

struct StudyRow {
    double nu = 0.0;
    double mu = 1.0;
    double eps = 0.0;
    double fast_measure = 0.0;
    double energy = 0.0;
    double gap = 0.0;      // F(y_nu) - F(y), never NaN
    double w1p_dist = 0.0; // derivative Lp distance to y
    double lip_rank = 0.0; // sup |y_nu'| on a dense grid
    double budget = 0.0;   // a-priori excess bound, when computable
    bool has_budget = false;
    bool feasible = true;
    bool endpoint_lo_exact = false;
    bool endpoint_hi_exact = false;
    std::string status; // "ok", "divergent", "infeasible: ...", "numeric: ..."
    std::optional<Trajectory> competitor; // y_nu, when the plan was feasible
};

struct ConvergenceReport {
    double base_energy = 0.0; // F(y), +inf if divergent
    std::vector<StudyRow> rows;
};

// One row per velocity cap of the schedule: plan, reparametrize, integrate.
// Infeasible caps produce a row with feasible = false instead of throwing.
ConvergenceReport convergence_study(const Lagrangian& lag, const Trajectory& y,
                                    const StudyOptions& options);

} // namespace lavgap
