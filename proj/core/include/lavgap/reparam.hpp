#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lavgap/interval.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

// Which endpoint(s) the time change must pin.
//  initial:  phi(t) = t, phi expands past T; the inverse is restricted to I.
//  terminal: phi(T) = T, phi starts before t; the inverse is restricted to I.
//  both:     phi is a bijection of I; fast arcs borrow time that a slow set
//            of unit-moderate velocity pays back at slope mu < 1.
enum class Anchor { initial, terminal, both };

Anchor anchor_from_string(const std::string& name);
std::string to_string(Anchor a);

struct PlanTuning {
    std::optional<double> mu;         // slow-piece slope in (0, 1)
    std::optional<double> lambda_bar; // velocity ceiling defining the slow candidates
    std::optional<double> rho;        // required distance to the domain complement
    DistKind dist = DistKind::u_distance;
};

// Where the velocity cap nu acts and where the borrowed time is repaid.
struct ReparamPlan {
    Anchor anchor = Anchor::initial;
    double nu = 1.0;
    double mu = 1.0;         // meaningful only for Anchor::both
    double lambda_bar = 0.0; // "
    double rho = 0.0;        // "
    IntervalSet fast_set;    // {s : |y'(s)| > nu}
    IntervalSet slow_set;    // subset of `admissible` absorbing the time surplus
    IntervalSet admissible;  // {s : |y'|/mu < lambda_bar, (s,y,y'/mu) well inside Dom}
    double eps = 0.0;        // time surplus: int_fast (|y'|/nu - 1)
    double deriv_l1 = 0.0;   // |y'|_{L^1} (cached diagnostic)
};

// Build the plan for one velocity cap. For Anchor::both this resolves mu
// (default: midpoint of its admissible window), rho (default: largest 2^-k
// keeping the admissible set big enough) and the slow set (leftmost sweep),
// throwing infeasible_plan_error when the admissible set cannot absorb the
// surplus and structure_error when the velocity domain fails the
// star-shapedness probe.
ReparamPlan make_plan(const Trajectory& y, const Lagrangian& lag, Anchor anchor, double nu,
                      const PlanTuning& tuning = {}, const SuperlevelOptions& sup_opts = {},
                      const QuadratureOptions& quad_opts = {});

enum class SlopeKind {
    unit,       // phi' = 1
    slow,       // phi' = mu
    fast_capped // phi' = |y'(tau)| / nu  (> 1 on the fast set)
};

struct TimePiece {
    double tau_lo = 0.0, tau_hi = 0.0; // original time
    double phi_lo = 0.0, phi_hi = 0.0; // image time
    SlopeKind kind = SlopeKind::unit;
};

// Piecewise-defined absolutely continuous bijection phi onto its range, with
// its inverse. Fast pieces integrate |y'|/nu (closed form when the
// trajectory registers one, adaptive quadrature otherwise); inversion is
// analytic on unit/slow pieces and monotone bisection on fast pieces.
struct TimeChange {
    std::vector<TimePiece> pieces;
    Anchor anchor = Anchor::initial;
    double nu = 1.0, mu = 1.0;
    Interval domain{0.0, 1.0}; // I
    Interval range{0.0, 1.0};  // phi(I)
    std::function<double(double, double)> speed_integral; // int_a^b |y'|

    double eval(double tau) const;
    double invert(double s, double tol = 1e-12) const;
    const TimePiece& piece_at_range(double s) const;

    // sup_I |phi(tau) - tau| on a dense grid plus breakpoints.
    double max_displacement(int grid = 2048) const;
};

TimeChange build_time_change(const ReparamPlan& plan, const Trajectory& y,
                             const QuadratureOptions& quad_opts = {});

double invert_time_change(const TimeChange& tc, double s, double tol = 1e-12);

// y composed with the inverse time change, restricted to I. Values come from
// y at the pulled-back time; derivatives follow the piece kind: nu * y'/|y'|
// on images of fast pieces, y'/mu on images of slow pieces, y' elsewhere.
// Anchored endpoints reproduce y's endpoint values bit for bit.
Trajectory reparametrize(const Trajectory& y, const TimeChange& tc);

// Freeze y on [t, cut]: value y(cut), derivative 0 there; unchanged beyond.
Trajectory truncate_head(const Trajectory& y, double cut);

} // namespace lavgap
