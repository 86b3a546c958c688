#include "lavgap/energy.hpp"

#include <algorithm>
#include <cmath>

#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"

namespace lavgap {

double density_along(const Lagrangian& lag, const Trajectory& y, double s) {
    TrajectorySample smp = y.sample(s);
    if (smp.deriv_unbounded) {
        // The Lagrangian part is +inf in the limit; the weight may still
        // force the product to zero.
        double w = lag.psi(s, smp.value);
        return ext_mul(inf, w);
    }
    return eval_density(lag, s, smp.value, smp.deriv);
}

EnergyValue energy(const Lagrangian& lag, const Trajectory& y, const QuadratureOptions& quad_opts) {
    auto f = [&](double s) { return density_along(lag, y, s); };
    QuadratureResult r = integrate_scaled(f, y.domain, quad_opts, y.quad_splits());
    EnergyValue out;
    out.error_estimate = r.error_estimate;
    out.diverged = r.diverged;
    out.max_depth_reached = r.max_depth_reached;
    out.skipped_point_singularities = r.skipped_point_singularities;
    out.infinite_cell = r.infinite_cell;
    out.value = r.diverged ? inf : r.value;
    return out;
}

double lp_distance_deriv(const Trajectory& a, const Trajectory& b, double p,
                         const QuadratureOptions& quad_opts) {
    if (p < 1.0) throw config_error("distance exponent p must be at least 1");
    if (a.dim != b.dim) throw config_error("trajectories have different dimensions");
    Interval dom = a.domain;
    if (dom.lo != b.domain.lo || dom.hi != b.domain.hi)
        throw config_error("trajectories live on different intervals");
    auto f = [&](double s) {
        TrajectorySample sa = a.sample(s);
        TrajectorySample sb = b.sample(s);
        if (sa.deriv_unbounded || sb.deriv_unbounded) return inf;
        double acc = 0.0;
        for (size_t i = 0; i < sa.deriv.size(); ++i) {
            double d = sa.deriv[i] - sb.deriv[i];
            acc += d * d;
        }
        return std::pow(std::sqrt(acc), p);
    };
    std::vector<double> splits = a.quad_splits();
    for (double s : b.quad_splits()) splits.push_back(s);
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    QuadratureResult r = integrate_scaled(f, dom, quad_opts, splits);
    if (r.diverged) return inf;
    return std::pow(std::max(r.value, 0.0), 1.0 / p);
}

double sup_distance(const Trajectory& a, const Trajectory& b, int grid) {
    double worst = 0.0;
    auto consider = [&](double s) {
        Vec va = a.value(s), vb = b.value(s);
        double acc = 0.0;
        for (size_t i = 0; i < va.size(); ++i) {
            double d = va[i] - vb[i];
            acc += d * d;
        }
        worst = std::max(worst, std::sqrt(acc));
    };
    const Interval& dom = a.domain;
    for (int i = 0; i <= grid; ++i) consider(dom.lo + dom.length() * i / grid);
    for (double s : a.breakpoints)
        if (dom.contains(s)) consider(s);
    for (double s : b.breakpoints)
        if (dom.contains(s)) consider(s);
    return worst;
}

namespace {

// Sampled fallback for the subgradient extremes when no closed form is
// registered: probe the relevant set along the curve.
double sampled_xi_plus(const ReparamPlan& plan, const Lagrangian& lag, const Trajectory& y) {
    double sup = 0.0;
    for (const Interval& c : plan.fast_set.components()) {
        for (int i = 0; i < 33; ++i) {
            double s = c.lo + c.length() * (i + 0.5) / 33.0;
            TrajectorySample smp = y.sample(s);
            if (smp.deriv_unbounded) continue;
            try {
                double pval = subgradient_P(lag, s, smp.value, smp.deriv);
                if (std::isfinite(pval)) sup = std::max(sup, pval);
            } catch (const numeric_error&) {
                continue;
            }
        }
    }
    return sup; // already clamped at 0 from below
}

double sampled_upsilon_minus(const ReparamPlan& plan, const Lagrangian& lag, const Trajectory& y,
                             bool& inconclusive) {
    double worst = 0.0;
    int admissible = 0;
    for (const Interval& c : plan.slow_set.components()) {
        for (int i = 0; i < 33; ++i) {
            double s = c.lo + c.length() * (i + 0.5) / 33.0;
            TrajectorySample smp = y.sample(s);
            if (smp.deriv_unbounded) continue;
            Vec v = smp.deriv;
            for (double& cv : v) cv /= plan.mu;
            if (!lag.in_domain(s, smp.value, v)) continue;
            try {
                double pval = subgradient_P(lag, s, smp.value, v);
                if (std::isfinite(pval)) {
                    worst = std::min(worst, pval);
                    ++admissible;
                }
            } catch (const numeric_error&) {
                continue;
            }
        }
    }
    inconclusive = !plan.slow_set.is_empty() && admissible == 0;
    return -worst; // the negative part, >= 0
}

} // namespace

ErrorBudget error_budget(const ReparamPlan& plan, const Lagrangian& lag, const Trajectory& y,
                         const TimeRegularityConstants& time_reg, double weight_sup,
                         std::optional<double> xi_plus, std::optional<double> upsilon_minus,
                         const QuadratureOptions& quad_opts) {
    ErrorBudget out;
    out.eps = plan.eps;
    out.weight_sup = weight_sup;

    // Theta = 2 (1 + |y|_inf) (kappa |L|_1 + beta |y'|_p^p + gamma |I|).
    double theta = 0.0;
    const double amp = 2.0 * (1.0 + sup_norm(y));
    if (time_reg.kappa > 0.0) {
        auto f = [&](double s) {
            TrajectorySample smp = y.sample(s);
            if (smp.deriv_unbounded) return inf;
            double val = lag.lambda(s, smp.value, smp.deriv);
            return std::isnan(val) ? inf : std::fabs(val);
        };
        QuadratureResult r = integrate_scaled(f, y.domain, quad_opts, y.quad_splits());
        theta += time_reg.kappa * (r.diverged ? inf : r.value);
    }
    if (time_reg.beta > 0.0) {
        double np = lp_norm(y, time_reg.p, NormTarget::deriv, quad_opts);
        theta += time_reg.beta * std::pow(np, time_reg.p);
    }
    theta += time_reg.gamma * y.domain.length();
    out.theta = ext_mul(amp, theta);

    out.analytic = xi_plus.has_value() &&
                   (plan.anchor != Anchor::both || upsilon_minus.has_value());
    out.xi_plus = std::max(xi_plus ? *xi_plus : sampled_xi_plus(plan, lag, y), 0.0);
    if (plan.anchor == Anchor::both) {
        double upsilon = upsilon_minus
                             ? *upsilon_minus
                             : sampled_upsilon_minus(plan, lag, y, out.upsilon_inconclusive);
        out.upsilon_minus = std::max(upsilon, 0.0);
    }

    out.bound = ext_mul(out.eps, ext_mul(weight_sup, out.theta + out.xi_plus + out.upsilon_minus));
    return out;
}

ConvergenceReport convergence_study(const Lagrangian& lag, const Trajectory& y,
                                    const StudyOptions& options) {
    ConvergenceReport report;
    if (options.schedule.steps < 1) throw config_error("schedule needs at least one step");
    if (!(options.schedule.start > 0.0) || !(options.schedule.factor > 1.0))
        throw config_error("schedule needs start > 0 and factor > 1");

    if (options.base_energy) {
        report.base_energy = *options.base_energy;
    } else {
        EnergyValue base = energy(lag, y, options.quad);
        report.base_energy = base.value;
    }

    double nu = options.schedule.start;
    for (int step = 0; step < options.schedule.steps; ++step, nu *= options.schedule.factor) {
        StudyRow row;
        row.nu = nu;
        try {
            ReparamPlan plan =
                make_plan(y, lag, options.anchor, nu, options.tuning, options.superlevel,
                          options.quad);
            row.mu = plan.mu;
            row.eps = plan.eps;
            row.fast_measure = plan.fast_set.measure();

            TimeChange tc = build_time_change(plan, y, options.quad);
            Trajectory ynu = reparametrize(y, tc);

            EnergyValue e = energy(lag, ynu, options.quad);
            row.energy = e.value;
            row.gap = ext_sub(e.value, report.base_energy);
            row.w1p_dist = lp_distance_deriv(ynu, y, options.p, options.quad);

            double rank = 0.0;
            const int grid = 4096;
            for (int i = 0; i <= grid; ++i) {
                double s = y.domain.lo + y.domain.length() * i / grid;
                TrajectorySample smp = ynu.sample(s);
                if (!smp.deriv_unbounded) rank = std::max(rank, norm2(smp.deriv));
            }
            row.lip_rank = rank;

            bool want_budget = options.weight_sup.has_value();
            if (want_budget) {
                std::optional<double> xi;
                if (options.xi_plus) xi = options.xi_plus(nu);
                std::optional<double> upsilon;
                if (options.anchor == Anchor::both && options.upsilon_minus)
                    upsilon = options.upsilon_minus(plan.lambda_bar);
                ErrorBudget budget = error_budget(plan, lag, y, options.time_reg,
                                                  *options.weight_sup, xi, upsilon, options.quad);
                row.budget = budget.bound;
                row.has_budget = true;
            }

            auto exact = [&](double s) {
                Vec a = ynu.value(s), b = y.value(s);
                for (size_t i = 0; i < a.size(); ++i)
                    if (a[i] != b[i]) return false;
                return true;
            };
            row.endpoint_lo_exact = exact(y.domain.lo);
            row.endpoint_hi_exact = exact(y.domain.hi);
            row.status = e.diverged ? "divergent" : "ok";
            row.competitor = std::move(ynu);
        } catch (const infeasible_plan_error& ex) {
            row.feasible = false;
            row.status = std::string("infeasible: ") + ex.what();
        } catch (const numeric_error& ex) {
            row.feasible = false;
            row.status = std::string("numeric: ") + ex.what();
        } catch (const structure_error& ex) {
            row.feasible = false;
            row.status = std::string("structure: ") + ex.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace lavgap
