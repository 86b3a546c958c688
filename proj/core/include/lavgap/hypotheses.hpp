#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lavgap/interval.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

// The structural assumptions the reparametrization argument rests on. Each
// checker probes a finite sample, so "pass" means "not falsified by the
// probes" while "falsified" carries a concrete witness.
enum class HypothesisName {
    time_regularity,      // |L(s2,z,v)-L(s1,z,v)| <= (k L + b|v|^p + g)|s2-s1| near s
    radial_convexity,     // mu -> L(s,z,v/mu) mu is convex on mu > 0
    star_shaped_domain,   // v in Dom(s,z) implies r v in Dom(s,z) for r in [0,1]
    segment_reachability, // some r v on the segment [0,v] sits strictly inside
    bounded_on_window,    // L bounded near the graph for |v| <= nu0
    bounded_well_inside,  // L bounded near the graph for |v| <= lambda, depth >= rho
    boundary_blow_up,     // L -> +inf approaching the velocity-domain boundary
    weight_bounded,       // Psi bounded above near the graph
    weight_continuous,    // Psi continuous near the graph
    weight_positive,      // Psi bounded below by a positive constant on the graph
    linear_growth,        // L >= alpha |v| - d
    density_integrable,   // s -> L(s, y, y') is integrable (diagnostic only)
};

std::string to_string(HypothesisName name);

struct HypothesisReport {
    HypothesisName name = HypothesisName::time_regularity;
    Verdict verdict = Verdict::inconclusive;
    std::optional<ProbePoint> witness;
    std::optional<double> statistic;
    std::string detail;
};

// Constants of the Lipschitz-in-time estimate: on a time window of radius
// eps_star around s, for states |z| <= K,
//   |L(s2,z,v) - L(s1,z,v)| <= (kappa L(s,z,v) + beta |v|^p + gamma) |s2 - s1|.
struct TimeRegularityConstants {
    double kappa = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double eps_star = 0.5;
    double K = 1.0;
    double p = 1.0;
};

HypothesisReport verify_time_regularity(const Lagrangian& lag, const TimeRegularityConstants& c,
                                        const ProbeBox& box);

// Boundedness of L near the graph of y, in one of two regimes.
struct WindowBound {
    double nu0 = 1.0; // velocities up to nu0
};
struct WellInsideBound {
    double lambda_bar = 1.0; // velocities up to lambda_bar ...
    double rho = 1.0;        // ... at distance >= rho from the domain complement
    DistKind dist = DistKind::u_distance;
};

HypothesisReport verify_boundedness(const Lagrangian& lag, const Trajectory& y,
                                    const WindowBound& mode, const ProbeBox& box);
HypothesisReport verify_boundedness(const Lagrangian& lag, const Trajectory& y,
                                    const WellInsideBound& mode, const ProbeBox& box);

// Blow-up of L toward the velocity-domain boundary: for every level r there
// should be a depth below which L >= r. Probes walk rays from interior
// points to the boundary and sample at geometrically shrinking depths.
// Falsified when sub-level values persist at the smallest depths probed.
HypothesisReport verify_blow_up(const Lagrangian& lag, const Trajectory& y, DistKind kind,
                                const std::vector<double>& levels, const ProbeBox& box);

// Weight diagnostics: bounds and continuity of Psi near the graph, and
// positivity of Psi on the graph itself (including geometric approaches to
// the endpoints, where a vanishing weight hides from uniform grids).
struct WeightReport {
    double sup = 0.0;       // over the probed neighborhood of the graph
    double inf_all = 0.0;   // "
    double graph_inf = 0.0; // over the graph probes only
    HypothesisReport bounded, continuous, positive;
};

WeightReport verify_weight(const Lagrangian& lag, const Trajectory& y, const ProbeBox& box);

// Least weight value accepted as "positive" by verify_weight.
inline constexpr double kWeightFloor = 1e-6;

HypothesisReport verify_segment_reachability(const Lagrangian& lag, DistKind kind,
                                             const Interval& time_window, const ProbeBox& box);

HypothesisReport verify_linear_growth(const Lagrangian& lag, const ProbeBox& box);

HypothesisReport verify_density_integrable(const Lagrangian& lag, const Trajectory& y,
                                           const QuadratureOptions& quad_opts = {});

// Explicit a-priori bounds for the reparametrized competitors:
//   rank  K0 = |X| + (inf_P + m d |I|) / (m a)
//   slope l0 = (inf_P + m d |I|) / (m a |I|)
// from the boundary datum magnitude |X|, a lower bound inf_P on attainable
// energies, the weight floor m, and growth constants L >= a|v| - d.
struct RankBoundInputs {
    double boundary_magnitude = 0.0; // |X|
    double energy_floor = 0.0;       // inf_P
    double weight_floor = 1.0;       // m
    double growth_alpha = 1.0;       // a
    double growth_offset = 0.0;      // d
    Interval domain{0.0, 1.0};
};
struct RankBounds {
    double lipschitz_rank = 0.0; // K0
    double slope_floor = 0.0;    // l0
};

RankBounds explicit_rank_bounds(const RankBoundInputs& in);

// Growth + positive weight force int |y'| <= (F(y) + m d |I|) / (m a).
struct DerivMassCheck {
    double deriv_l1 = 0.0;
    double bound = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

DerivMassCheck deriv_mass_bound(const Lagrangian& lag, const Trajectory& y, double weight_floor,
                                const QuadratureOptions& quad_opts = {});

} // namespace lavgap
