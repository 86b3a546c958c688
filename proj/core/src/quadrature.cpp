#include "lavgap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "lavgap/extended.hpp"

namespace lavgap {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1] (positive half).
constexpr int kHalf = 8;
constexpr double kNodes[kHalf] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWeightK[kHalf] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
// Gauss-7 weights, indexed to the odd Kronrod nodes (1, 3, 5, 7).
constexpr double kWeightG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Cell {
    double lo, hi;
    double value = 0.0;
    double error = 0.0;
    int depth = 0;
    int stress = 0;   // consecutive non-decaying refinement levels
    int inf_nodes = 0;
    bool all_inf = false;

    // Worst error first; cells with infinite nodes must be split before
    // anything else, because their estimates are meaningless.
    double priority() const { return inf_nodes > 0 ? inf : error; }
};

struct CellCmp {
    bool operator()(const Cell& a, const Cell& b) const { return a.priority() < b.priority(); }
};

Cell evaluate_cell(const Integrand& f, double lo, double hi, int depth) {
    Cell c;
    c.lo = lo;
    c.hi = hi;
    c.depth = depth;
    const double mid = 0.5 * (lo + hi);
    const double rad = 0.5 * (hi - lo);
    double sum_k = 0.0, sum_g = 0.0;
    int finite = 0;
    for (int i = 0; i < kHalf; ++i) {
        const int copies = (i == kHalf - 1) ? 1 : 2;
        for (int sign = 0; sign < copies; ++sign) {
            const double x = sign == 0 ? mid - rad * kNodes[i] : mid + rad * kNodes[i];
            double v = f(x);
            if (std::isnan(v)) v = inf; // conservative: unknown treated as blow-up
            if (!std::isfinite(v)) {
                ++c.inf_nodes;
                continue;
            }
            ++finite;
            sum_k += kWeightK[i] * v;
            if (i % 2 == 1) sum_g += kWeightG[i / 2] * v;
        }
    }
    c.all_inf = (finite == 0);
    c.value = sum_k * rad; // partial sum over finite nodes when some were infinite
    c.error = c.inf_nodes == 0 ? std::abs(sum_k - sum_g) * rad
                               : std::abs(sum_k) * rad + (hi - lo);
    return c;
}

bool too_small_to_split(const Cell& c) {
    const double scale = std::max({std::abs(c.lo), std::abs(c.hi), 1e-280});
    return (c.hi - c.lo) <= 4.0 * std::numeric_limits<double>::epsilon() * scale ||
           (c.hi - c.lo) <= 1e-300;
}

} // namespace

QuadratureResult integrate(const Integrand& f, const Interval& domain,
                           const QuadratureOptions& opts, const std::vector<double>& splits) {
    QuadratureResult res;

    // Seed cells: domain cut at the supplied interior abscissae.
    std::vector<double> cuts;
    cuts.push_back(domain.lo);
    for (double s : splits)
        if (s > domain.lo && s < domain.hi) cuts.push_back(s);
    cuts.push_back(domain.hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Cell, std::vector<Cell>, CellCmp> queue;
    double frozen_value = 0.0, frozen_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        queue.push(evaluate_cell(f, cuts[i], cuts[i + 1], 0));

    double queued_value = 0.0, queued_error = 0.0;
    {
        std::priority_queue<Cell, std::vector<Cell>, CellCmp> copy = queue;
        while (!copy.empty()) {
            queued_value += copy.top().value;
            queued_error += copy.top().error;
            copy.pop();
        }
    }

    int splits_done = 0;
    while (!queue.empty()) {
        const double total_value = frozen_value + queued_value;
        const double target =
            std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value));
        const Cell top = queue.top();
        // Stop on the refinable part only: error frozen at unsplittable
        // cells is irreducible and must not drive further subdivision (it
        // still counts in the reported estimate).
        if (top.inf_nodes == 0 && queued_error <= target) break;
        if (splits_done >= opts.max_splits) break;

        queue.pop();
        queued_value -= top.value;
        queued_error -= top.error;
        res.max_depth_reached = std::max(res.max_depth_reached, top.depth);

        if (top.all_inf) {
            // The integrand is +inf across the whole rule: a positive-length
            // infinite region.
            res.diverged = true;
            res.infinite_cell = Interval(top.lo, top.hi);
            break;
        }
        if (too_small_to_split(top) || top.depth >= opts.max_depth) {
            // An isolated +inf node that never widened into an infinite
            // cell is a point collision with a singular abscissa. The
            // finite-node partial sum is kept; the unresolved remainder
            // lives in the error estimate.
            if (top.inf_nodes > 0) ++res.skipped_point_singularities;
            frozen_value += top.value;
            frozen_error += top.error;
            continue;
        }

        const double mid = 0.5 * (top.lo + top.hi);
        Cell left = evaluate_cell(f, top.lo, mid, top.depth + 1);
        Cell right = evaluate_cell(f, mid, top.hi, top.depth + 1);

        // Growth test: past the divergence depth, a child whose integral and
        // error refuse to decay marks a non-integrable singularity.
        for (Cell* ch : {&left, &right}) {
            if (ch->depth > opts.divergence_depth && ch->inf_nodes == 0 && top.inf_nodes == 0 &&
                std::abs(ch->value) >= opts.stress_ratio * std::abs(top.value) &&
                ch->error >= 0.9 * top.error && std::abs(top.value) > 0.0) {
                ch->stress = top.stress + 1;
            } else {
                ch->stress = 0;
            }
            if (ch->stress >= opts.stress_limit) {
                res.diverged = true;
                res.infinite_cell = Interval(ch->lo, ch->hi);
            }
        }
        if (res.diverged) break;

        queue.push(left);
        queue.push(right);
        queued_value += left.value + right.value;
        queued_error += left.error + right.error;
        ++splits_done;
    }

    if (res.diverged) {
        res.value = inf;
        res.error_estimate = inf;
        return res;
    }
    res.value = frozen_value + queued_value;
    res.error_estimate = frozen_error + queued_error;
    return res;
}

QuadratureResult integrate_scaled(const Integrand& f, const Interval& domain,
                                  const QuadratureOptions& opts,
                                  const std::vector<double>& splits) {
    QuadratureResult rough = integrate(f, domain, opts, splits);
    if (rough.diverged) return rough;
    const double scale = std::abs(rough.value);
    if (scale == 0.0 || scale >= opts.abs_tol) return rough;
    // Tiny integral: re-run with a magnitude-scaled absolute tolerance so the
    // relative tolerance actually bites.
    QuadratureOptions tight = opts;
    tight.abs_tol = std::max(scale * opts.rel_tol, 1e-300);
    return integrate(f, domain, tight, splits);
}

QuadratureResult integrate_over_set(const Integrand& f, const IntervalSet& set,
                                    const QuadratureOptions& opts,
                                    const std::vector<double>& splits) {
    QuadratureResult total;
    for (const auto& comp : set.components()) {
        QuadratureResult part = integrate_scaled(f, comp, opts, splits);
        total.max_depth_reached = std::max(total.max_depth_reached, part.max_depth_reached);
        total.skipped_point_singularities += part.skipped_point_singularities;
        if (part.diverged) {
            total.diverged = true;
            total.infinite_cell = part.infinite_cell;
            total.value = inf;
            total.error_estimate = inf;
            return total;
        }
        total.value += part.value;
        total.error_estimate += part.error_estimate;
    }
    return total;
}

} // namespace lavgap
