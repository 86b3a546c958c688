#pragma once

#include <functional>
#include <vector>

#include "lavgap/interval.hpp"
#include "lavgap/quadrature.hpp"

namespace lavgap {

using Vec = std::vector<double>;

double norm2(const Vec& v);

struct TrajectorySample {
    Vec value;
    Vec deriv;            // unspecified content when deriv_unbounded
    bool deriv_unbounded; // true at declared singular abscissae
};

// Absolutely continuous curve y : domain -> R^dim given by callable value and
// derivative evaluators. `singular_points` lists abscissae where |y'| blows
// up (quadrature must not evaluate there); `breakpoints` lists piecewise
// seams that integrators should pre-split at. `sobolev_p` is the integrability
// exponent the derivative is known to have.
struct Trajectory {
    Interval domain;
    int dim = 1;
    std::function<Vec(double)> value_eval;
    std::function<Vec(double)> deriv_eval;
    std::vector<double> singular_points;
    std::vector<double> breakpoints;
    double sobolev_p = 1.0;
    // Optional closed form for \int_a^b |y'| ds; exact time-change pieces use
    // it instead of nested quadrature when present.
    std::function<double(double, double)> speed_antideriv;

    Vec value(double s) const { return value_eval(s); }
    Vec deriv(double s) const { return deriv_eval(s); }
    TrajectorySample sample(double s) const;

    // |y'(s)|, +inf at singular abscissae (declared or encountered).
    double speed(double s) const;

    // Every abscissa that integration should split at.
    std::vector<double> quad_splits() const;

    // Scalar (dim = 1) convenience factory.
    static Trajectory scalar(Interval domain, std::function<double(double)> f,
                             std::function<double(double)> df,
                             std::vector<double> singular = {}, double sobolev_p = 1.0,
                             std::function<double(double, double)> speed_antideriv = nullptr);

    // Uniform-grid samples: values are interpolated linearly and derivatives
    // come from central differences at the grid nodes.
    static Trajectory from_samples(Interval domain, const std::vector<Vec>& values,
                                   double sobolev_p = 1.0);
};

enum class NormTarget { value, deriv };

// (\int_I |target|^p ds)^{1/p}; +inf when the integral diverges. Requires
// p >= 1.
double lp_norm(const Trajectory& y, double p, NormTarget target,
               const QuadratureOptions& opts = {});

// sup_I |y(s)| on a dense sample grid.
double sup_norm(const Trajectory& y, int grid = 4096);

struct SuperlevelOptions {
    int grid_cells = 4096;     // 2^12
    double refine_tol = 1e-12; // bisection width target for boundaries
};

// {s in I : |y'(s)| > threshold} as an interval set. Boundaries are located
// on a uniform grid and sharpened by bisection; components narrower than the
// grid spacing are found only if a grid node lands inside them.
IntervalSet superlevel_set(const Trajectory& y, double threshold,
                           const SuperlevelOptions& opts = {});

} // namespace lavgap
