#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lavgap/interval.hpp"

namespace lavgap {

// Adaptive quadrature for extended-valued integrands: f may return +inf.
//
// Each cell is estimated with a 15-point Gauss-Kronrod rule. All nodes are
// interior (an open rule), so integrable endpoint singularities are never
// evaluated directly; callers pre-split at known singular abscissae so that
// singularities always sit on cell boundaries. Cells are refined worst-error
// first (global adaptive bisection).
//
// Divergence is reported, not thrown:
//  * a cell whose nodes are all +inf brackets a positive-length region where
//    the integrand is infinite, and
//  * past `divergence_depth` bisection levels, a descending chain of cells
//    whose integrals refuse to decay (a power singularity s^-a with a >= 1
//    keeps the cell integral growing under bisection; an integrable one
//    decays geometrically) trips the growth test.

using Integrand = std::function<double(double)>;

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int divergence_depth = 60; // growth test arms past this many levels
    int stress_limit = 5;      // consecutive non-decaying levels => divergent
    double stress_ratio = 0.95;
    int max_depth = 200;       // hard refinement stop per cell
    int max_splits = 200000;
};

struct QuadratureResult {
    double value = 0.0; // +inf when diverged
    double error_estimate = 0.0;
    bool diverged = false;
    int max_depth_reached = 0;
    int skipped_point_singularities = 0; // isolated +inf node collisions dropped
    std::optional<Interval> infinite_cell;

    bool ok() const { return !diverged; }
};

// Integrate f over `domain`, pre-splitting at the interior points listed in
// `splits` (points outside the open interval are ignored).
QuadratureResult integrate(const Integrand& f, const Interval& domain,
                           const QuadratureOptions& opts = {},
                           const std::vector<double>& splits = {});

// Two-pass wrapper: a first pass sizes the integral, a second pass re-runs
// with an absolute tolerance scaled to the observed magnitude, so that tiny
// integrals (e.g. time-surplus integrals at large velocity caps) still come
// out with full relative accuracy.
QuadratureResult integrate_scaled(const Integrand& f, const Interval& domain,
                                  const QuadratureOptions& opts = {},
                                  const std::vector<double>& splits = {});

// Sum of integrate_scaled over the components of a set.
QuadratureResult integrate_over_set(const Integrand& f, const IntervalSet& set,
                                    const QuadratureOptions& opts = {},
                                    const std::vector<double>& splits = {});

} // namespace lavgap
