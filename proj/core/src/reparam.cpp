#include "lavgap/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"
#include "lavgap/rng.hpp"

namespace lavgap {

namespace {

constexpr uint64_t kPlanProbeSeed = 0x5eed5eedULL;

// One shared definition of int_a^b |y'|, so the plan's surplus and the time
// change's piece increments telescope exactly.
std::function<double(double, double)> make_speed_integral(const Trajectory& y,
                                                          QuadratureOptions quad_opts) {
    if (y.speed_antideriv) {
        auto anti = y.speed_antideriv;
        return [anti](double a, double b) { return anti(a, b); };
    }
    auto splits = y.quad_splits();
    return [y, quad_opts, splits](double a, double b) {
        if (!(b > a)) return 0.0;
        auto f = [&y](double s) { return y.speed(s); };
        std::vector<double> inner;
        for (double x : splits)
            if (x > a && x < b) inner.push_back(x);
        QuadratureResult r = integrate_scaled(f, Interval{a, b}, quad_opts, inner);
        if (!r.ok())
            throw numeric_error("speed integral did not converge on [" + std::to_string(a) +
                                ", " + std::to_string(b) + "]");
        return r.value;
    };
}

double surplus_of(const IntervalSet& fast,
                  const std::function<double(double, double)>& speed_integral, double nu) {
    double eps = 0.0;
    for (const Interval& c : fast.components())
        eps += speed_integral(c.lo, c.hi) / nu - c.length();
    return std::max(eps, 0.0);
}

// Admissibility predicate for the slow set: moderate velocity after division
// by mu, and the rescaled point sits well inside the velocity domain.
struct SlowAdmissibility {
    const Trajectory* y;
    const Lagrangian* lag;
    double mu, lambda_bar, rho;
    DistKind kind;

    bool operator()(double s) const {
        TrajectorySample smp = y->sample(s);
        if (smp.deriv_unbounded) return false;
        double speed = norm2(smp.deriv);
        if (!(speed / mu < lambda_bar)) return false;
        Vec v = smp.deriv;
        for (double& c : v) c /= mu;
        if (!lag->in_domain(s, smp.value, v)) return false;
        if (lag->real_valued) return true;
        double d = dist_to_complement(*lag, kind, y->domain.lo, y->domain.hi, s, smp.value, v);
        return d >= rho;
    }
};

// Membership set of a predicate over the domain: uniform grid classification
// followed by bisection of each sign change.
template <typename Pred>
IntervalSet predicate_set(const Interval& domain, Pred&& pred, int grid_cells,
                          double refine_tol) {
    const int n = std::max(grid_cells, 16);
    const double h = domain.length() / n;
    std::vector<char> in(static_cast<size_t>(n) + 1);
    std::vector<double> node(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        node[i] = (i == n) ? domain.hi : domain.lo + h * i;
        in[i] = pred(node[i]) ? 1 : 0;
    }
    auto refine = [&](double a, double b, bool want_left_in) {
        // Invariant: pred(a) == want_left_in != pred(b).
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        double floor_w = 64.0 * std::numeric_limits<double>::epsilon() * scale;
        for (int it = 0; it < 200 && b - a > std::max(refine_tol, floor_w); ++it) {
            double m = 0.5 * (a + b);
            if (pred(m) == want_left_in)
                a = m;
            else
                b = m;
        }
        return 0.5 * (a + b);
    };
    std::vector<Interval> parts;
    int i = 0;
    while (i <= n) {
        if (!in[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 <= n && in[j + 1]) ++j;
        double lo = node[i];
        double hi = node[j];
        if (i > 0) lo = refine(node[i - 1], node[i], false);
        if (j < n) hi = refine(node[j], node[j + 1], true);
        if (hi > lo) parts.push_back(Interval{lo, hi});
        i = j + 1;
    }
    return IntervalSet(parts);
}

} // namespace

Anchor anchor_from_string(const std::string& name) {
    if (name == "initial") return Anchor::initial;
    if (name == "final" || name == "terminal") return Anchor::terminal;
    if (name == "both") return Anchor::both;
    throw config_error("unknown anchor '" + name + "' (expected initial, final or both)");
}

std::string to_string(Anchor a) {
    switch (a) {
    case Anchor::initial: return "initial";
    case Anchor::terminal: return "final";
    case Anchor::both: return "both";
    }
    return "?";
}

ReparamPlan make_plan(const Trajectory& y, const Lagrangian& lag, Anchor anchor, double nu,
                      const PlanTuning& tuning, const SuperlevelOptions& sup_opts,
                      const QuadratureOptions& quad_opts) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw config_error("velocity cap nu must be positive and finite");

    ReparamPlan plan;
    plan.anchor = anchor;
    plan.nu = nu;

    auto speed_integral = make_speed_integral(y, quad_opts);
    plan.fast_set = superlevel_set(y, nu, sup_opts);
    plan.eps = surplus_of(plan.fast_set, speed_integral, nu);
    plan.deriv_l1 = lp_norm(y, 1.0, NormTarget::deriv, quad_opts);

    if (anchor != Anchor::both) return plan;

    const double T_len = y.domain.length();
    if (!std::isfinite(plan.deriv_l1))
        throw numeric_error("cannot anchor both endpoints: |y'| is not integrable");

    // Velocity ceiling for the slow candidates. Must leave room for a slope
    // mu < 1 with |y'|/mu < lambda_bar somewhere, i.e. lambda_bar > |y'|_1 / |I|.
    double floor_lambda = plan.deriv_l1 / T_len;
    if (tuning.lambda_bar) {
        plan.lambda_bar = *tuning.lambda_bar;
        if (!(plan.lambda_bar > floor_lambda))
            throw config_error("lambda must exceed |y'|_1 / |I| = " + std::to_string(floor_lambda));
    } else {
        throw config_error("anchor 'both' needs a velocity ceiling lambda (none supplied and the "
                           "example registers no default)");
    }

    double mu_lo = floor_lambda / plan.lambda_bar; // mu must exceed this
    if (tuning.mu) {
        plan.mu = *tuning.mu;
        if (!(plan.mu > mu_lo) || !(plan.mu < 1.0))
            throw config_error("mu must lie in (" + std::to_string(mu_lo) + ", 1)");
    } else {
        plan.mu = 0.5 * (mu_lo + 1.0);
    }

    // The slow-piece rescaling v -> v/mu assumes radial reachability of the
    // velocity domain; probe it and refuse to plan against a falsified one.
    {
        ProbeBox box;
        box.s_range = y.domain;
        box.z_halfwidth = sup_norm(y) + 1.0;
        box.v_halfwidth = plan.lambda_bar + 1.0;
        box.dim = y.dim;
        box.count = 2000;
        box.seed = kPlanProbeSeed;
        StructureReport sr = structure_check(lag, box);
        if (sr.star_shaped.verdict == Verdict::falsified)
            throw structure_error("velocity domain fails the star-shapedness probe; "
                                  "the slow-piece rescaling is unsound");
    }

    const double needed = plan.eps / (1.0 - plan.mu);

    auto admissible_for = [&](double rho) {
        SlowAdmissibility pred{&y, &lag, plan.mu, plan.lambda_bar, rho, tuning.dist};
        return predicate_set(y.domain, pred, sup_opts.grid_cells, sup_opts.refine_tol);
    };

    if (lag.real_valued || tuning.rho) {
        plan.rho = tuning.rho ? *tuning.rho : 1.0;
        plan.admissible = admissible_for(plan.rho);
    } else {
        // Default rho: the largest 2^-k whose admissible set can absorb the
        // surplus. Classify distance once per grid node, then threshold.
        const int n = sup_opts.grid_cells;
        const double h = y.domain.length() / n;
        std::vector<double> node_dist(static_cast<size_t>(n) + 1, -1.0);
        for (int i = 0; i <= n; ++i) {
            double s = (i == n) ? y.domain.hi : y.domain.lo + h * i;
            TrajectorySample smp = y.sample(s);
            if (smp.deriv_unbounded) continue;
            double speed = norm2(smp.deriv);
            if (!(speed / plan.mu < plan.lambda_bar)) continue;
            Vec v = smp.deriv;
            for (double& c : v) c /= plan.mu;
            if (!lag.in_domain(s, smp.value, v)) continue;
            node_dist[i] = dist_to_complement(lag, tuning.dist, y.domain.lo, y.domain.hi, s,
                                              smp.value, v);
        }
        bool found = false;
        for (int k = 0; k <= 48 && !found; ++k) {
            double rho = std::ldexp(1.0, -k);
            double approx = 0.0;
            for (int i = 0; i <= n; ++i)
                if (node_dist[i] >= rho) approx += h;
            if (approx + 2.0 * h < needed) continue;
            IntervalSet cand = admissible_for(rho);
            if (cand.subtract(plan.fast_set).measure() >= needed) {
                plan.rho = rho;
                plan.admissible = cand;
                found = true;
            }
        }
        if (!found)
            throw infeasible_plan_error(
                "no distance threshold 2^-k (k <= 48) leaves an admissible set able to absorb "
                "the time surplus",
                needed, admissible_for(std::ldexp(1.0, -48)).subtract(plan.fast_set).measure());
    }

    IntervalSet candidates = plan.admissible.subtract(plan.fast_set);
    if (needed > 0.0) {
        plan.slow_set = candidates.take_leftmost(needed);
    }
    return plan;
}

TimeChange build_time_change(const ReparamPlan& plan, const Trajectory& y,
                             const QuadratureOptions& quad_opts) {
    TimeChange tc;
    tc.anchor = plan.anchor;
    tc.nu = plan.nu;
    tc.mu = plan.anchor == Anchor::both ? plan.mu : 1.0;
    tc.domain = y.domain;
    tc.speed_integral = make_speed_integral(y, quad_opts);

    // Mark fast and slow cells, then fill the gaps with unit pieces.
    struct Mark {
        Interval cell;
        SlopeKind kind;
    };
    std::vector<Mark> marks;
    for (const Interval& c : plan.fast_set.components()) marks.push_back({c, SlopeKind::fast_capped});
    if (plan.anchor == Anchor::both)
        for (const Interval& c : plan.slow_set.components()) marks.push_back({c, SlopeKind::slow});
    std::sort(marks.begin(), marks.end(),
              [](const Mark& a, const Mark& b) { return a.cell.lo < b.cell.lo; });
    for (size_t i = 1; i < marks.size(); ++i)
        if (marks[i].cell.lo < marks[i - 1].cell.hi - 1e-15)
            throw structure_error("fast and slow sets overlap; the plan is inconsistent");

    const double tiny = 1e-15 * std::max(1.0, y.domain.length());
    double cursor = y.domain.lo;
    std::vector<TimePiece> pieces;
    auto push = [&pieces](double lo, double hi, SlopeKind kind) {
        if (hi - lo <= 0.0) return;
        TimePiece p;
        p.tau_lo = lo;
        p.tau_hi = hi;
        p.kind = kind;
        pieces.push_back(p);
    };
    for (const Mark& m : marks) {
        double lo = std::max(m.cell.lo, cursor);
        double hi = std::min(m.cell.hi, y.domain.hi);
        if (lo - cursor > tiny) push(cursor, lo, SlopeKind::unit);
        push(lo, hi, m.kind);
        cursor = std::max(cursor, hi);
    }
    if (y.domain.hi - cursor > tiny) push(cursor, y.domain.hi, SlopeKind::unit);
    if (pieces.empty()) push(y.domain.lo, y.domain.hi, SlopeKind::unit);
    // Re-weld any grid slack so the pieces tile the domain exactly.
    pieces.front().tau_lo = y.domain.lo;
    for (size_t i = 1; i < pieces.size(); ++i) pieces[i].tau_lo = pieces[i - 1].tau_hi;
    pieces.back().tau_hi = y.domain.hi;

    auto increment = [&](const TimePiece& p) {
        double len = p.tau_hi - p.tau_lo;
        switch (p.kind) {
        case SlopeKind::unit: return len;
        case SlopeKind::slow: return tc.mu * len;
        case SlopeKind::fast_capped: return tc.speed_integral(p.tau_lo, p.tau_hi) / tc.nu;
        }
        return len;
    };

    if (plan.anchor == Anchor::terminal) {
        // Pin phi(T) = T and accumulate backwards.
        double hi = y.domain.hi;
        for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
            double inc = increment(*it);
            if (!(inc > 0.0) || !std::isfinite(inc))
                throw numeric_error("time change is not strictly increasing");
            it->phi_hi = hi;
            it->phi_lo = hi - inc;
            hi = it->phi_lo;
        }
    } else {
        double lo = y.domain.lo;
        for (auto& p : pieces) {
            double inc = increment(p);
            if (!(inc > 0.0) || !std::isfinite(inc))
                throw numeric_error("time change is not strictly increasing");
            p.phi_lo = lo;
            p.phi_hi = lo + inc;
            lo = p.phi_hi;
        }
        if (plan.anchor == Anchor::both) {
            // The slow set was sized so the surplus telescopes away; snap the
            // residual rounding drift onto the last piece.
            double drift = pieces.back().phi_hi - y.domain.hi;
            double tol = 1e-8 * std::max(1.0, y.domain.length());
            if (std::fabs(drift) > tol)
                throw numeric_error("two-sided anchoring failed to close: residual drift " +
                                    std::to_string(drift));
            pieces.back().phi_hi = y.domain.hi;
            if (pieces.back().phi_hi <= pieces.back().phi_lo)
                throw numeric_error("anchoring snap collapsed the final piece");
        }
    }

    tc.pieces = std::move(pieces);
    tc.range = Interval{tc.pieces.front().phi_lo, tc.pieces.back().phi_hi};
    return tc;
}

double TimeChange::eval(double tau) const {
    double x = domain.clamp(tau);
    // Binary search for the piece containing x.
    size_t lo = 0, hi = pieces.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (x <= pieces[mid].tau_hi)
            hi = mid;
        else
            lo = mid + 1;
    }
    const TimePiece& p = pieces[lo];
    if (x <= p.tau_lo) return p.phi_lo;
    if (x >= p.tau_hi) return p.phi_hi;
    switch (p.kind) {
    case SlopeKind::unit: return p.phi_lo + (x - p.tau_lo);
    case SlopeKind::slow: return p.phi_lo + mu * (x - p.tau_lo);
    case SlopeKind::fast_capped: return p.phi_lo + speed_integral(p.tau_lo, x) / nu;
    }
    return p.phi_lo;
}

const TimePiece& TimeChange::piece_at_range(double s) const {
    size_t lo = 0, hi = pieces.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (s <= pieces[mid].phi_hi)
            hi = mid;
        else
            lo = mid + 1;
    }
    return pieces[lo];
}

double TimeChange::invert(double s, double tol) const {
    const double slack = 1e-12 * std::max({1.0, std::fabs(range.lo), std::fabs(range.hi)});
    if (s < range.lo - slack || s > range.hi + slack)
        throw config_error("inversion point lies outside the image of the time change");
    if (s <= range.lo) return pieces.front().tau_lo;
    if (s >= range.hi) return pieces.back().tau_hi;
    const TimePiece& p = piece_at_range(s);
    if (s <= p.phi_lo) return p.tau_lo;
    if (s >= p.phi_hi) return p.tau_hi;
    switch (p.kind) {
    case SlopeKind::unit: return p.tau_lo + (s - p.phi_lo);
    case SlopeKind::slow: return p.tau_lo + (s - p.phi_lo) / mu;
    case SlopeKind::fast_capped: {
        // phi' = |y'|/nu > 1 on fast pieces, so a tau-bracket of width w maps
        // to a phi-bracket at least that wide; bisect tau directly.
        double a = p.tau_lo, b = p.tau_hi;
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        double width_goal = std::min(tol, 64.0 * std::numeric_limits<double>::epsilon() * scale);
        for (int it = 0; it < 200 && b - a > width_goal; ++it) {
            double m = 0.5 * (a + b);
            double val = p.phi_lo + speed_integral(p.tau_lo, m) / nu;
            if (val < s)
                a = m;
            else
                b = m;
        }
        return 0.5 * (a + b);
    }
    }
    return p.tau_lo;
}

double invert_time_change(const TimeChange& tc, double s, double tol) { return tc.invert(s, tol); }

double TimeChange::max_displacement(int grid) const {
    double worst = 0.0;
    auto consider = [&](double tau) {
        if (tau < domain.lo || tau > domain.hi) return;
        worst = std::max(worst, std::fabs(eval(tau) - tau));
    };
    for (int i = 0; i <= grid; ++i)
        consider(domain.lo + domain.length() * i / grid);
    for (const TimePiece& p : pieces) {
        consider(p.tau_lo);
        consider(p.tau_hi);
    }
    return worst;
}

Trajectory reparametrize(const Trajectory& y, const TimeChange& tc) {
    Trajectory out;
    out.domain = y.domain;
    out.dim = y.dim;
    out.sobolev_p = y.sobolev_p;

    // Work on a shared copy: the closures below outlive the caller's objects.
    auto tc_ptr = std::make_shared<TimeChange>(tc);
    auto y_ptr = std::make_shared<Trajectory>(y);
    const double nu = tc.nu;
    const double mu = tc.mu;

    out.value_eval = [y_ptr, tc_ptr](double s) { return y_ptr->value(tc_ptr->invert(s)); };

    out.deriv_eval = [y_ptr, tc_ptr, nu, mu](double s) -> Vec {
        double clamped = std::clamp(s, tc_ptr->range.lo, tc_ptr->range.hi);
        const TimePiece& p = tc_ptr->piece_at_range(clamped);
        double tau = tc_ptr->invert(clamped);
        switch (p.kind) {
        case SlopeKind::unit: return y_ptr->deriv(tau);
        case SlopeKind::slow: {
            Vec d = y_ptr->deriv(tau);
            for (double& c : d) c /= mu;
            return d;
        }
        case SlopeKind::fast_capped: {
            // Direction of motion at speed exactly nu. If the derivative blew
            // up at tau itself, nudge inward along the piece for a direction.
            Vec d = y_ptr->deriv(tau);
            double n = norm2(d);
            if (!std::isfinite(n) || n == 0.0) {
                double h = 1e-9 * std::max(1.0, p.tau_hi - p.tau_lo);
                for (int k = 0; k < 40 && (!std::isfinite(n) || n == 0.0); ++k) {
                    double probe = (tau - p.tau_lo < p.tau_hi - tau) ? tau + h : tau - h;
                    probe = std::clamp(probe, p.tau_lo, p.tau_hi);
                    d = y_ptr->deriv(probe);
                    n = norm2(d);
                    h *= 2.0;
                }
                if (!std::isfinite(n) || n == 0.0)
                    throw numeric_error("cannot orient the capped derivative near an unbounded point");
            }
            for (double& c : d) c *= nu / n;
            return d;
        }
        }
        return y_ptr->deriv(tau);
    };

    // Piece boundaries are derivative breakpoints of the composition.
    for (const TimePiece& p : tc.pieces) {
        for (double b : {p.phi_lo, p.phi_hi})
            if (b > out.domain.lo && b < out.domain.hi) out.breakpoints.push_back(b);
    }
    // Singular points of y survive only outside fast pieces (the cap tames
    // them there); map them through phi.
    for (double x : y.singular_points) {
        if (x < y.domain.lo || x > y.domain.hi) continue;
        bool in_fast = false;
        for (const TimePiece& p : tc.pieces)
            if (p.kind == SlopeKind::fast_capped && x >= p.tau_lo && x <= p.tau_hi) {
                in_fast = true;
                break;
            }
        double img = tc.eval(x);
        if (img <= out.domain.lo || img >= out.domain.hi) continue;
        if (in_fast)
            out.breakpoints.push_back(img);
        else
            out.singular_points.push_back(img);
    }
    // Original breakpoints of y, mapped.
    for (double x : y.breakpoints) {
        double img = tc.eval(x);
        if (img > out.domain.lo && img < out.domain.hi) out.breakpoints.push_back(img);
    }
    std::sort(out.breakpoints.begin(), out.breakpoints.end());
    out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                          out.breakpoints.end());
    std::sort(out.singular_points.begin(), out.singular_points.end());
    out.singular_points.erase(std::unique(out.singular_points.begin(), out.singular_points.end()),
                              out.singular_points.end());
    return out;
}

Trajectory truncate_head(const Trajectory& y, double cut) {
    if (cut <= y.domain.lo) return y;
    if (cut >= y.domain.hi) throw config_error("truncation point must lie inside the domain");
    Trajectory out;
    out.domain = y.domain;
    out.dim = y.dim;
    out.sobolev_p = y.sobolev_p;
    auto y_ptr = std::make_shared<Trajectory>(y);
    Vec frozen = y.value(cut);
    out.value_eval = [y_ptr, cut, frozen](double s) { return s <= cut ? frozen : y_ptr->value(s); };
    out.deriv_eval = [y_ptr, cut](double s) -> Vec {
        if (s <= cut) return Vec(static_cast<size_t>(y_ptr->dim), 0.0);
        return y_ptr->deriv(s);
    };
    if (y.speed_antideriv) {
        auto anti = y.speed_antideriv;
        out.speed_antideriv = [anti, cut](double a, double b) {
            return anti(std::max(a, cut), std::max(b, cut));
        };
    }
    out.breakpoints.push_back(cut);
    for (double b : y.breakpoints)
        if (b > cut) out.breakpoints.push_back(b);
    for (double xx : y.singular_points)
        if (xx > cut) out.singular_points.push_back(xx);
    std::sort(out.breakpoints.begin(), out.breakpoints.end());
    return out;
}

} // namespace lavgap
