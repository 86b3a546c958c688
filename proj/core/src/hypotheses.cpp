#include "lavgap/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"
#include "lavgap/rng.hpp"

namespace lavgap {

namespace {

Vec draw_ball(ProbeRng& rng, int dim, double radius) {
    Vec z(static_cast<size_t>(dim), 0.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (double& c : z) c = rng.uniform(-radius, radius);
        if (norm2(z) <= radius) return z;
    }
    for (double& c : z) c *= radius / std::max(norm2(z), 1e-300);
    return z;
}

ProbePoint make_witness(double s, const Vec& z, const Vec& v) {
    ProbePoint w;
    w.s = s;
    w.z = z;
    w.v = v;
    return w;
}

// Density of the functional at time s along y, honoring 0 * inf = 0.
double density_along(const Lagrangian& lag, const Trajectory& y, double s) {
    TrajectorySample smp = y.sample(s);
    if (smp.deriv_unbounded) {
        double w = lag.psi(s, smp.value);
        return ext_mul(inf, w);
    }
    return eval_density(lag, s, smp.value, smp.deriv);
}

// Largest jump of f between adjacent nodes of a uniform grid on [a, b].
struct ScanHit {
    double gap = 0.0;
    double at_lo = 0.0, at_hi = 0.0;
};

template <typename F>
ScanHit modulus_scan(F&& f, double a, double b, int grid) {
    ScanHit hit;
    double prev = f(a);
    for (int i = 1; i <= grid; ++i) {
        double x = a + (b - a) * i / grid;
        double cur = f(x);
        double gap = std::fabs(cur - prev);
        if (gap > hit.gap) {
            hit.gap = gap;
            hit.at_lo = a + (b - a) * (i - 1) / grid;
            hit.at_hi = x;
        }
        prev = cur;
    }
    return hit;
}

// Track the largest jump across a shrinking bracket: a genuine discontinuity
// keeps its gap as the bracket collapses, a steep continuous stretch loses it.
template <typename F>
double persistent_jump(F&& f, ScanHit hit) {
    double lo = hit.at_lo, hi = hit.at_hi;
    double flo = f(lo), fhi = f(hi);
    for (int it = 0; it < 48 && hi - lo > 0.0; ++it) {
        double m = 0.5 * (lo + hi);
        double fm = f(m);
        if (std::fabs(fm - flo) >= std::fabs(fhi - fm)) {
            hi = m;
            fhi = fm;
        } else {
            lo = m;
            flo = fm;
        }
    }
    return std::fabs(fhi - flo);
}

} // namespace

std::string to_string(HypothesisName name) {
    switch (name) {
    case HypothesisName::time_regularity: return "time_regularity";
    case HypothesisName::radial_convexity: return "radial_convexity";
    case HypothesisName::star_shaped_domain: return "star_shaped_domain";
    case HypothesisName::segment_reachability: return "segment_reachability";
    case HypothesisName::bounded_on_window: return "bounded_on_window";
    case HypothesisName::bounded_well_inside: return "bounded_well_inside";
    case HypothesisName::boundary_blow_up: return "boundary_blow_up";
    case HypothesisName::weight_bounded: return "weight_bounded";
    case HypothesisName::weight_continuous: return "weight_continuous";
    case HypothesisName::weight_positive: return "weight_positive";
    case HypothesisName::linear_growth: return "linear_growth";
    case HypothesisName::density_integrable: return "density_integrable";
    }
    return "?";
}

HypothesisReport verify_time_regularity(const Lagrangian& lag, const TimeRegularityConstants& c,
                                        const ProbeBox& box) {
    if (!(c.eps_star > 0.0)) throw config_error("time window radius eps_star must be positive");
    if (!(c.K > 0.0)) throw config_error("state ball radius K must be positive");
    HypothesisReport rep;
    rep.name = HypothesisName::time_regularity;
    ProbeRng rng(box.seed);
    const Interval& I = box.s_range;
    int admissible = 0;
    double worst_margin = -inf;
    for (int i = 0; i < box.count; ++i) {
        double s = rng.uniform(I.lo, I.hi);
        double w_lo = std::max(I.lo, s - c.eps_star);
        double w_hi = std::min(I.hi, s + c.eps_star);
        double s1 = rng.uniform(w_lo, w_hi);
        double s2 = rng.uniform(w_lo, w_hi);
        Vec z = draw_ball(rng, box.dim, c.K);
        Vec v(static_cast<size_t>(box.dim), 0.0);
        for (double& cv : v) cv = rng.uniform(-box.v_halfwidth, box.v_halfwidth);
        if (!lag.in_domain(s, z, v) || !lag.in_domain(s1, z, v) || !lag.in_domain(s2, z, v))
            continue;
        double base = lag.lambda(s, z, v);
        double f1 = lag.lambda(s1, z, v);
        double f2 = lag.lambda(s2, z, v);
        if (!std::isfinite(base) || !std::isfinite(f1) || !std::isfinite(f2)) continue;
        ++admissible;
        double lhs = std::fabs(f2 - f1);
        double envelope = c.kappa * base + c.beta * std::pow(norm2(v), c.p) + c.gamma;
        double rhs = envelope * std::fabs(s2 - s1);
        double tol = 1e-9 * (1.0 + std::fabs(base));
        double margin = lhs - rhs;
        worst_margin = std::max(worst_margin, margin);
        if (margin > tol && rep.verdict != Verdict::falsified) {
            rep.verdict = Verdict::falsified;
            rep.witness = make_witness(s, z, v);
            rep.detail = "variation " + std::to_string(lhs) + " exceeds envelope " +
                         std::to_string(rhs) + " between times " + std::to_string(s1) + " and " +
                         std::to_string(s2);
        }
    }
    if (admissible == 0) {
        rep.verdict = Verdict::inconclusive;
        rep.detail = "no probe landed in the domain";
        return rep;
    }
    if (rep.verdict != Verdict::falsified) {
        rep.verdict = Verdict::pass;
        rep.detail = std::to_string(admissible) + " probes within the envelope";
    }
    rep.statistic = worst_margin;
    return rep;
}

HypothesisReport verify_boundedness(const Lagrangian& lag, const Trajectory& y,
                                    const WindowBound& mode, const ProbeBox& box) {
    if (!(mode.nu0 > 0.0)) throw config_error("velocity window nu0 must be positive");
    HypothesisReport rep;
    rep.name = HypothesisName::bounded_on_window;
    ProbeRng rng(box.seed);
    int admissible = 0;
    double sup = -inf;
    for (int i = 0; i < box.count; ++i) {
        double s = rng.uniform(box.s_range.lo, box.s_range.hi);
        double tau = rng.uniform(y.domain.lo, y.domain.hi);
        Vec z = y.value(tau);
        Vec v = draw_ball(rng, box.dim, mode.nu0);
        if (!lag.in_domain(s, z, v)) continue;
        double val = lag.lambda(s, z, v);
        ++admissible;
        if (!std::isfinite(val)) {
            rep.verdict = Verdict::falsified;
            rep.witness = make_witness(s, z, v);
            rep.detail = "infinite value inside the declared domain";
            return rep;
        }
        if (val > sup) {
            sup = val;
            rep.witness = make_witness(s, z, v);
        }
    }
    if (admissible == 0) {
        rep.verdict = Verdict::inconclusive;
        rep.detail = "no probe landed in the domain";
        return rep;
    }
    rep.verdict = Verdict::pass;
    rep.statistic = sup;
    rep.detail = "sup over " + std::to_string(admissible) + " probes with |v| <= " +
                 std::to_string(mode.nu0);
    return rep;
}

HypothesisReport verify_boundedness(const Lagrangian& lag, const Trajectory& y,
                                    const WellInsideBound& mode, const ProbeBox& box) {
    if (!(mode.rho > 0.0)) throw config_error("depth rho must be positive");
    double floor_lambda = lp_norm(y, 1.0, NormTarget::deriv) / y.domain.length();
    if (!(mode.lambda_bar > floor_lambda))
        throw config_error("lambda must exceed |y'|_1 / |I| = " + std::to_string(floor_lambda));
    HypothesisReport rep;
    rep.name = HypothesisName::bounded_well_inside;
    ProbeRng rng(box.seed);
    int admissible = 0;
    double sup = -inf;
    for (int i = 0; i < box.count; ++i) {
        double s = rng.uniform(box.s_range.lo, box.s_range.hi);
        double tau = rng.uniform(y.domain.lo, y.domain.hi);
        Vec z = y.value(tau);
        Vec v = draw_ball(rng, box.dim, mode.lambda_bar);
        if (!lag.in_domain(s, z, v)) continue;
        double depth = dist_to_complement(lag, mode.dist, box.s_range.lo, box.s_range.hi, s, z, v);
        if (!(depth >= mode.rho)) continue;
        double val = lag.lambda(s, z, v);
        ++admissible;
        if (!std::isfinite(val)) {
            rep.verdict = Verdict::falsified;
            rep.witness = make_witness(s, z, v);
            rep.detail = "infinite value well inside the domain";
            return rep;
        }
        if (val > sup) {
            sup = val;
            rep.witness = make_witness(s, z, v);
        }
    }
    if (admissible == 0) {
        rep.verdict = Verdict::inconclusive;
        rep.detail = "no probe landed well inside the domain";
        return rep;
    }
    rep.verdict = Verdict::pass;
    rep.statistic = sup;
    rep.detail = "sup over " + std::to_string(admissible) + " probes with |v| <= " +
                 std::to_string(mode.lambda_bar) + ", depth >= " + std::to_string(mode.rho);
    return rep;
}

HypothesisReport verify_blow_up(const Lagrangian& lag, const Trajectory& y, DistKind kind,
                                const std::vector<double>& levels, const ProbeBox& box) {
    HypothesisReport rep;
    rep.name = HypothesisName::boundary_blow_up;
    if (levels.empty()) throw config_error("blow-up check needs at least one level");
    if (lag.real_valued) {
        rep.verdict = Verdict::pass;
        rep.detail = "velocity domain has empty complement";
        return rep;
    }
    (void)kind; // depths below are measured along the approach ray, an upper
                // bound for either distance flavor; enough to falsify.
    const double r_min = *std::min_element(levels.begin(), levels.end());
    ProbeRng rng(box.seed);
    const int base_probes = std::min(box.count, 256);
    const int depth_levels = 46; // 2^0 .. 2^-45 of the exit distance
    int sampled = 0;
    double shallowest_violation = inf; // depth of the worst offender
    double deepest_clean = 0.0;
    for (int i = 0; i < base_probes; ++i) {
        double s = rng.uniform(box.s_range.lo, box.s_range.hi);
        double tau = rng.uniform(y.domain.lo, y.domain.hi);
        Vec z = y.value(tau);
        Vec v(static_cast<size_t>(box.dim), 0.0);
        for (double& c : v) c = rng.uniform(-box.v_halfwidth, box.v_halfwidth);
        if (!lag.in_domain(s, z, v)) continue;
        // Shoot both ways along v; walk to the boundary when there is one.
        for (double side : {1.0, -1.0}) {
            Vec dir = v;
            double n = norm2(dir);
            if (n == 0.0) {
                dir.assign(v.size(), 0.0);
                dir[0] = 1.0;
                n = 1.0;
            }
            for (double& c : dir) c *= side / n;
            auto off_domain = [&](double t) {
                Vec w = v;
                for (size_t k = 0; k < w.size(); ++k) w[k] += t * dir[k];
                return !lag.in_domain(s, z, w);
            };
            double reach = 1.0;
            bool exits = false;
            for (int e = 0; e < 60; ++e) {
                if (off_domain(reach)) {
                    exits = true;
                    break;
                }
                reach *= 2.0;
                if (reach > 1e9) break;
            }
            if (!exits) continue;
            double lo = reach * 0.5 > 0.0 && !off_domain(reach * 0.5) ? reach * 0.5 : 0.0;
            double hi = reach;
            for (int b = 0; b < 100 && hi - lo > 1e-14 * std::max(1.0, hi); ++b) {
                double m = 0.5 * (lo + hi);
                if (off_domain(m))
                    hi = m;
                else
                    lo = m;
            }
            double exit_t = lo;
            if (!(exit_t > 0.0)) continue;
            for (int k = 0; k < depth_levels; ++k) {
                double depth = std::ldexp(exit_t, -k);
                Vec w = v;
                for (size_t q = 0; q < w.size(); ++q) w[q] += (exit_t - depth) * dir[q];
                if (!lag.in_domain(s, z, w)) continue;
                double val = lag.lambda(s, z, w);
                ++sampled;
                if (val < r_min) {
                    if (depth < shallowest_violation) {
                        shallowest_violation = depth;
                        rep.witness = make_witness(s, z, w);
                    }
                } else if (val >= r_min) {
                    deepest_clean = std::max(deepest_clean, depth);
                }
            }
        }
    }
    if (sampled == 0) {
        rep.verdict = Verdict::inconclusive;
        rep.detail = "no boundary approach produced admissible probes";
        return rep;
    }
    const double persist_scale = 1e-10 * std::max(1.0, deepest_clean);
    if (shallowest_violation <= persist_scale) {
        rep.verdict = Verdict::falsified;
        rep.statistic = shallowest_violation;
        rep.detail = "values below the smallest level persist at depth " +
                     std::to_string(shallowest_violation);
        return rep;
    }
    rep.verdict = Verdict::pass;
    rep.statistic = std::isfinite(shallowest_violation) ? shallowest_violation : 1.0;
    rep.detail = "sub-level values never seen below depth " +
                 (std::isfinite(shallowest_violation) ? std::to_string(shallowest_violation)
                                                      : std::string("(none observed)"));
    return rep;
}

WeightReport verify_weight(const Lagrangian& lag, const Trajectory& y, const ProbeBox& box) {
    WeightReport out;
    out.bounded.name = HypothesisName::weight_bounded;
    out.continuous.name = HypothesisName::weight_continuous;
    out.positive.name = HypothesisName::weight_positive;
    ProbeRng rng(box.seed);
    const Interval& I = box.s_range;
    double sup = -inf, inf_all = inf, graph_inf = inf;
    ProbePoint sup_at, inf_at, graph_at;
    auto feed = [&](double s, const Vec& z, bool on_graph) {
        double w = lag.psi(s, z);
        if (std::isnan(w)) return;
        if (w > sup) {
            sup = w;
            sup_at = make_witness(s, z, {});
        }
        if (w < inf_all) {
            inf_all = w;
            inf_at = make_witness(s, z, {});
        }
        if (on_graph && w < graph_inf) {
            graph_inf = w;
            graph_at = make_witness(s, z, {});
        }
    };
    // Cross probes (s, y(tau)) and graph probes (s, y(s)).
    for (int i = 0; i < box.count; ++i) {
        double s = rng.uniform(I.lo, I.hi);
        double tau = rng.uniform(y.domain.lo, y.domain.hi);
        feed(s, y.value(tau), false);
        feed(s, y.value(s), true);
    }
    // Geometric approaches to both endpoints: weights that vanish only in
    // the endpoint limit escape uniform sampling.
    for (int k = 0; k <= 52; ++k) {
        double off = I.length() * std::ldexp(1.0, -k);
        for (double s : {I.lo + off, I.hi - off}) {
            if (s <= I.lo || s >= I.hi) continue;
            feed(s, y.value(s), true);
        }
    }
    for (double s : {I.lo, I.hi}) feed(s, y.value(s), true);

    out.sup = sup;
    out.inf_all = inf_all;
    out.graph_inf = graph_inf;

    if (std::isfinite(sup)) {
        out.bounded.verdict = Verdict::pass;
        out.bounded.statistic = sup;
        out.bounded.witness = sup_at;
    } else {
        out.bounded.verdict = Verdict::falsified;
        out.bounded.witness = sup_at;
        out.bounded.detail = "unbounded weight value";
    }

    if (graph_inf >= kWeightFloor) {
        out.positive.verdict = Verdict::pass;
        out.positive.statistic = graph_inf;
    } else {
        out.positive.verdict = Verdict::falsified;
        out.positive.statistic = graph_inf;
        out.positive.witness = graph_at;
        out.positive.detail = "weight drops to " + std::to_string(graph_inf) +
                              " on the graph (floor " + std::to_string(kWeightFloor) + ")";
    }

    // Continuity: scan lines in s (z frozen on the trajectory) and in z
    // (s frozen), then test whether the largest grid jump survives bracket
    // collapse around its location.
    double worst_persist = 0.0;
    double worst_initial = 0.0;
    ProbePoint disc_at;
    auto probe_line = [&](auto&& f, double a, double b, auto&& witness_of) {
        if (!(b > a)) return;
        ScanHit hit = modulus_scan(f, a, b, 2048);
        if (hit.gap <= 0.0) return;
        double persist = persistent_jump(f, hit);
        if (persist > worst_persist) {
            worst_persist = persist;
            worst_initial = hit.gap;
            disc_at = witness_of(0.5 * (hit.at_lo + hit.at_hi));
        }
    };
    for (int j = 0; j < 6; ++j) {
        double tau = y.domain.lo + y.domain.length() * (j + 0.5) / 6.0;
        Vec z = y.value(tau);
        probe_line([&](double s) { return lag.psi(s, z); }, I.lo, I.hi,
                   [&](double s) { return make_witness(s, z, {}); });
    }
    for (int j = 0; j < 6; ++j) {
        double s = I.lo + I.length() * (j + 0.5) / 6.0;
        Vec z0 = y.value(y.domain.lo), z1 = y.value(y.domain.hi);
        if (y.dim == 1) {
            double lo = std::min(z0[0], z1[0]) - 0.5, hi = std::max(z0[0], z1[0]) + 0.5;
            probe_line([&](double t) { return lag.psi(s, Vec{t}); }, lo, hi,
                       [&](double t) { return make_witness(s, Vec{t}, {}); });
        } else {
            probe_line(
                [&](double t) {
                    Vec z(z0.size());
                    for (size_t q = 0; q < z.size(); ++q) z[q] = z0[q] + t * (z1[q] - z0[q]);
                    return lag.psi(s, z);
                },
                0.0, 1.0, [&](double t) {
                    Vec z(z0.size());
                    for (size_t q = 0; q < z.size(); ++q) z[q] = z0[q] + t * (z1[q] - z0[q]);
                    return make_witness(s, z, {});
                });
        }
    }
    double scale = std::isfinite(sup) ? std::max(1.0, std::fabs(sup)) : 1.0;
    if (worst_persist > 1e-7 * scale && worst_persist > 0.25 * worst_initial) {
        out.continuous.verdict = Verdict::falsified;
        out.continuous.statistic = worst_persist;
        out.continuous.witness = disc_at;
        out.continuous.detail = "jump of " + std::to_string(worst_persist) +
                                " survives bracket collapse";
    } else {
        out.continuous.verdict = Verdict::pass;
        out.continuous.statistic = worst_persist;
    }
    return out;
}

HypothesisReport verify_segment_reachability(const Lagrangian& lag, DistKind kind,
                                             const Interval& time_window, const ProbeBox& box) {
    HypothesisReport rep;
    rep.name = HypothesisName::segment_reachability;
    ProbeRng rng(box.seed);
    int admissible = 0;
    for (int i = 0; i < box.count; ++i) {
        double s = rng.uniform(box.s_range.lo, box.s_range.hi);
        Vec z(static_cast<size_t>(box.dim), 0.0);
        for (double& c : z) c = rng.uniform(-box.z_halfwidth, box.z_halfwidth);
        Vec v(static_cast<size_t>(box.dim), 0.0);
        for (double& c : v) c = rng.uniform(-box.v_halfwidth, box.v_halfwidth);
        if (!lag.in_domain(s, z, v)) continue;
        ++admissible;
        bool found = false;
        for (int k = 0; k <= 64 && !found; ++k) {
            double r = 1.0 - static_cast<double>(k) / 64.0;
            Vec w = v;
            for (double& c : w) c *= r;
            if (!lag.in_domain(s, z, w)) continue;
            double depth =
                dist_to_complement(lag, kind, time_window.lo, time_window.hi, s, z, w);
            if (depth > 0.0) found = true;
        }
        if (!found) {
            rep.verdict = Verdict::falsified;
            rep.witness = make_witness(s, z, v);
            rep.detail = "no point of the segment [0, v] sits strictly inside the domain";
            return rep;
        }
    }
    if (admissible == 0) {
        rep.verdict = Verdict::inconclusive;
        rep.detail = "no probe landed in the domain";
        return rep;
    }
    rep.verdict = Verdict::pass;
    rep.detail = std::to_string(admissible) + " probes reach the interior along [0, v]";
    return rep;
}

HypothesisReport verify_linear_growth(const Lagrangian& lag, const ProbeBox& box) {
    HypothesisReport rep;
    rep.name = HypothesisName::linear_growth;
    if (!lag.growth) {
        rep.verdict = Verdict::inconclusive;
        rep.detail = "no growth constants registered";
        return rep;
    }
    const double alpha = lag.growth->alpha;
    const double d = lag.growth->d;
    ProbeRng rng(box.seed);
    int admissible = 0;
    double worst = -inf;
    for (int i = 0; i < box.count; ++i) {
        double s = rng.uniform(box.s_range.lo, box.s_range.hi);
        Vec z(static_cast<size_t>(box.dim), 0.0);
        for (double& c : z) c = rng.uniform(-box.z_halfwidth, box.z_halfwidth);
        Vec v(static_cast<size_t>(box.dim), 0.0);
        for (double& c : v) c = rng.uniform(-box.v_halfwidth, box.v_halfwidth);
        if (!lag.in_domain(s, z, v)) continue;
        double val = lag.lambda(s, z, v);
        ++admissible;
        double needed = alpha * norm2(v) - d;
        double margin = needed - val; // positive -> violation
        worst = std::max(worst, margin);
        if (margin > 1e-9 * (1.0 + std::fabs(needed))) {
            rep.verdict = Verdict::falsified;
            rep.witness = make_witness(s, z, v);
            rep.statistic = margin;
            rep.detail = "value " + std::to_string(val) + " falls below the growth line " +
                         std::to_string(needed);
            return rep;
        }
    }
    if (admissible == 0) {
        rep.verdict = Verdict::inconclusive;
        rep.detail = "no probe landed in the domain";
        return rep;
    }
    rep.verdict = Verdict::pass;
    rep.statistic = worst;
    rep.detail = std::to_string(admissible) + " probes above the growth line";
    return rep;
}

HypothesisReport verify_density_integrable(const Lagrangian& lag, const Trajectory& y,
                                           const QuadratureOptions& quad_opts) {
    HypothesisReport rep;
    rep.name = HypothesisName::density_integrable;
    auto f = [&](double s) {
        TrajectorySample smp = y.sample(s);
        if (smp.deriv_unbounded) return inf;
        double val = lag.lambda(s, smp.value, smp.deriv);
        if (std::isnan(val)) return inf;
        if (!lag.in_domain(s, smp.value, smp.deriv)) return inf;
        return val;
    };
    QuadratureResult r = integrate_scaled(f, y.domain, quad_opts, y.quad_splits());
    if (r.diverged) {
        rep.verdict = Verdict::falsified;
        rep.statistic = inf;
        rep.detail = "integral of the Lagrangian along the curve diverges";
    } else {
        rep.verdict = Verdict::pass;
        rep.statistic = r.value;
        rep.detail = "integral of the Lagrangian along the curve is finite";
    }
    return rep;
}

RankBounds explicit_rank_bounds(const RankBoundInputs& in) {
    if (!(in.weight_floor > 0.0)) throw config_error("weight floor must be positive");
    if (!(in.growth_alpha > 0.0)) throw config_error("growth slope alpha must be positive");
    const double len = in.domain.length();
    RankBounds out;
    double mass = (in.energy_floor + in.weight_floor * in.growth_offset * len) /
                  (in.weight_floor * in.growth_alpha);
    out.lipschitz_rank = in.boundary_magnitude + mass;
    out.slope_floor = mass / len;
    return out;
}

DerivMassCheck deriv_mass_bound(const Lagrangian& lag, const Trajectory& y, double weight_floor,
                                const QuadratureOptions& quad_opts) {
    if (!(weight_floor > 0.0)) throw config_error("weight floor must be positive");
    if (!lag.growth) throw config_error("derivative-mass bound needs growth constants");
    DerivMassCheck out;
    out.deriv_l1 = lp_norm(y, 1.0, NormTarget::deriv, quad_opts);
    auto f = [&](double s) { return density_along(lag, y, s); };
    QuadratureResult r = integrate_scaled(f, y.domain, quad_opts, y.quad_splits());
    double energy = r.diverged ? inf : r.value;
    double len = y.domain.length();
    out.bound = (energy + weight_floor * lag.growth->d * len) /
                (weight_floor * lag.growth->alpha);
    if (!std::isfinite(out.bound)) {
        out.verdict = Verdict::pass; // an infinite budget cannot be violated
        return out;
    }
    double tol = 1e-8 * (1.0 + std::fabs(out.bound));
    out.verdict = out.deriv_l1 <= out.bound + tol ? Verdict::pass : Verdict::falsified;
    return out;
}

} // namespace lavgap
