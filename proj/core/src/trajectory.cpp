#include "lavgap/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "lavgap/extended.hpp"

namespace lavgap {

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

TrajectorySample Trajectory::sample(double s) const {
    TrajectorySample out;
    out.value = value_eval(s);
    for (double x : singular_points) {
        if (s == x) {
            out.deriv_unbounded = true;
            return out;
        }
    }
    out.deriv = deriv_eval(s);
    out.deriv_unbounded = !std::isfinite(norm2(out.deriv));
    return out;
}

double Trajectory::speed(double s) const {
    for (double x : singular_points)
        if (s == x) return inf;
    double n = norm2(deriv_eval(s));
    return std::isfinite(n) ? n : inf;
}

std::vector<double> Trajectory::quad_splits() const {
    std::vector<double> all = singular_points;
    all.insert(all.end(), breakpoints.begin(), breakpoints.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

Trajectory Trajectory::scalar(Interval domain, std::function<double(double)> f,
                              std::function<double(double)> df, std::vector<double> singular,
                              double sobolev_p,
                              std::function<double(double, double)> speed_antideriv) {
    Trajectory y;
    y.domain = domain;
    y.dim = 1;
    y.value_eval = [f = std::move(f)](double s) { return Vec{f(s)}; };
    y.deriv_eval = [df = std::move(df)](double s) { return Vec{df(s)}; };
    y.singular_points = std::move(singular);
    y.sobolev_p = sobolev_p;
    y.speed_antideriv = std::move(speed_antideriv);
    return y;
}

Trajectory Trajectory::from_samples(Interval domain, const std::vector<Vec>& values,
                                    double sobolev_p) {
    if (values.size() < 2) throw config_error("from_samples: need at least two samples");
    const int dim = static_cast<int>(values.front().size());
    for (const auto& v : values)
        if (static_cast<int>(v.size()) != dim)
            throw config_error("from_samples: inconsistent sample dimension");
    const std::size_t n = values.size();
    const double h = domain.length() / static_cast<double>(n - 1);

    // Central differences at interior nodes, one-sided at the ends.
    std::vector<Vec> dv(n, Vec(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = i == 0 ? 0 : i - 1;
        const std::size_t b = i + 1 == n ? i : i + 1;
        const double dt = h * static_cast<double>(b - a);
        for (int k = 0; k < dim; ++k) dv[i][k] = (values[b][k] - values[a][k]) / dt;
    }

    auto locate = [domain, h, n](double s) {
        double u = (s - domain.lo) / h;
        auto i = static_cast<std::size_t>(std::clamp(u, 0.0, static_cast<double>(n - 2)));
        i = std::min(i, n - 2);
        return std::pair<std::size_t, double>(i, std::clamp(u - static_cast<double>(i), 0.0, 1.0));
    };

    Trajectory y;
    y.domain = domain;
    y.dim = dim;
    y.sobolev_p = sobolev_p;
    y.value_eval = [values, locate, dim](double s) {
        auto [i, w] = locate(s);
        Vec out(dim);
        for (int k = 0; k < dim; ++k) out[k] = (1.0 - w) * values[i][k] + w * values[i + 1][k];
        return out;
    };
    y.deriv_eval = [dv, locate, dim](double s) {
        auto [i, w] = locate(s);
        Vec out(dim);
        for (int k = 0; k < dim; ++k) out[k] = (1.0 - w) * dv[i][k] + w * dv[i + 1][k];
        return out;
    };
    for (std::size_t i = 1; i + 1 < n; ++i)
        y.breakpoints.push_back(domain.lo + h * static_cast<double>(i));
    // A sign change of a derivative component is a kink of |.|-type integrands
    // (speed, L1 norms); align quadrature cells with it, or the Gauss and
    // Kronrod rules can agree on a wrong value when the kink sits at one of
    // their blind spots.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (int k = 0; k < dim; ++k) {
            const double a = dv[i][k], b = dv[i + 1][k];
            if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0))
                y.breakpoints.push_back(domain.lo +
                                        h * (static_cast<double>(i) + a / (a - b)));
        }
    }
    std::sort(y.breakpoints.begin(), y.breakpoints.end());
    return y;
}

double lp_norm(const Trajectory& y, double p, NormTarget target, const QuadratureOptions& opts) {
    if (!(p >= 1.0)) throw config_error("lp_norm: p must be >= 1");
    Integrand f;
    if (target == NormTarget::deriv) {
        f = [&y, p](double s) {
            double v = y.speed(s);
            return std::isfinite(v) ? std::pow(v, p) : inf;
        };
    } else {
        f = [&y, p](double s) { return std::pow(norm2(y.value_eval(s)), p); };
    }
    QuadratureResult r = integrate_scaled(f, y.domain, opts, y.quad_splits());
    if (r.diverged) return inf;
    return std::pow(r.value, 1.0 / p);
}

double sup_norm(const Trajectory& y, int grid) {
    double m = 0.0;
    for (int i = 0; i <= grid; ++i) {
        double s = y.domain.lo + y.domain.length() * static_cast<double>(i) / grid;
        m = std::max(m, norm2(y.value_eval(s)));
    }
    return m;
}

namespace {

// Sharpen a membership transition inside (lo, hi] by predicate bisection.
// `in_lo` tells which side satisfies the predicate.
double refine_boundary(const std::function<bool(double)>& pred, double lo, double hi, bool in_lo,
                       double tol) {
    for (int it = 0; it < 200; ++it) {
        const double scale = std::max({std::abs(lo), std::abs(hi), 1e-280});
        if (hi - lo <= tol && hi - lo <= 64.0 * std::numeric_limits<double>::epsilon() * scale)
            break;
        if (hi - lo <= 1e-300) break;
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid) == in_lo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

IntervalSet superlevel_set(const Trajectory& y, double threshold, const SuperlevelOptions& opts) {
    const int n = opts.grid_cells;
    const auto pred = [&y, threshold](double s) { return y.speed(s) > threshold; };

    std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
    std::vector<char> in(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        double s = y.domain.lo + y.domain.length() * static_cast<double>(i) / n;
        if (i == n) s = y.domain.hi;
        nodes[static_cast<std::size_t>(i)] = s;
        in[static_cast<std::size_t>(i)] = pred(s) ? 1 : 0;
    }

    std::vector<Interval> comps;
    bool open = in[0];
    double start = nodes[0];
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (in[k] == in[k + 1]) continue;
        double cross = refine_boundary(pred, nodes[k], nodes[k + 1], in[k] != 0, opts.refine_tol);
        if (open) {
            if (cross > start) comps.push_back(Interval(start, cross));
            open = false;
        } else {
            start = cross;
            open = true;
        }
    }
    if (open && y.domain.hi > start) comps.push_back(Interval(start, y.domain.hi));
    return IntervalSet(std::move(comps));
}

} // namespace lavgap
