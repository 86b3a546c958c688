#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lavgap/interval.hpp"
#include "lavgap/rng.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

// Linear coercivity floor: lambda(s, z, v) >= alpha |v| - d.
struct LinearGrowth {
    double alpha = 1.0;
    double d = 0.0;
};

// Integrand L(s, z, v) = lambda(s, z, v) * psi(s, z), both factors
// nonnegative and extended-valued. `in_domain` is the authoritative
// membership predicate for Dom(lambda); lambda must return +inf off it.
// `real_valued` marks integrands whose velocity domain is all of R^n
// (empty complement). `grad_v` is an optional analytic velocity gradient
// used to cross-check the finite-difference subgradient probe.
struct Lagrangian {
    std::string name;
    std::function<double(double, const Vec&, const Vec&)> lambda;
    std::function<double(double, const Vec&)> psi;
    std::function<bool(double, const Vec&, const Vec&)> in_domain;
    bool autonomous = true;
    bool real_valued = true;
    std::optional<LinearGrowth> growth;
    std::function<Vec(double, const Vec&, const Vec&)> grad_v;

    // Psi that is identically one.
    static std::function<double(double, const Vec&)> unit_psi() {
        return [](double, const Vec&) { return 1.0; };
    }
};

// L(s, z, v) with the convention 0 * (+inf) = 0 in either order.
double eval_density(const Lagrangian& lag, double s, const Vec& z, const Vec& v);

// How distances to the complement of Dom(lambda) are measured.
enum class DistKind {
    euclidean, // in (s, z, v) space
    u_distance // along the velocity fiber: same (s, z), |v2 - v1|
};

DistKind dist_kind_from_string(const std::string& name);
std::string to_string(DistKind kind);

struct DistOptions {
    double tol = 1e-10;       // bracketing bisection width
    double max_radius = 1e12; // beyond this the complement counts as empty
    int lattice = 64;         // per-axis probe lattice for euclidean search
};

// Distance from an in-domain point to the complement of Dom(lambda).
// +inf for real-valued integrands or when no complement point is found
// within max_radius. The u-distance brackets the boundary along velocity
// rays by geometric expansion + bisection; the euclidean distance scans a
// probe lattice and sharpens the best candidates by segment bisection.
// Both are upper bounds for the true infimum (exact for fiber-convex
// domains in one dimension).
double dist_to_complement(const Lagrangian& lag, DistKind kind, double s_interval_lo,
                          double s_interval_hi, double s, const Vec& z, const Vec& v,
                          const DistOptions& opts = {});

// Slope of mu |-> lambda(s, z, v / mu) * mu at mu = 1 (an element of the
// subdifferential for radially convex lambda). Central finite difference
// with one Richardson pass, falling back to one-sided difference when only
// one side of mu = 1 keeps v / mu inside the domain. Throws numeric_error
// when neither side is admissible.
double subgradient_P(const Lagrangian& lag, double s, const Vec& z, const Vec& v,
                     double h = 1e-4);

// P from the analytic gradient: lambda - v . grad_v lambda. Requires grad_v.
double analytic_P(const Lagrangian& lag, double s, const Vec& z, const Vec& v);

enum class Verdict { pass, falsified, inconclusive };

std::string to_string(Verdict v);

struct ProbePoint {
    double s = 0.0;
    Vec z;
    Vec v;
};

// Box from which structure and hypothesis probes are drawn.
struct ProbeBox {
    Interval s_range{0.0, 1.0};
    double z_halfwidth = 2.0;
    double v_halfwidth = 2.0;
    int dim = 1;
    int count = 10000;
    std::uint64_t seed = 0;
};

ProbePoint draw_probe(ProbeRng& rng, const ProbeBox& box);

struct StructureFinding {
    Verdict verdict = Verdict::pass;
    std::optional<ProbePoint> witness;
    std::string detail;
};

struct StructureReport {
    StructureFinding radially_convex; // midpoint convexity of r -> lambda(s,z,rv)
    StructureFinding star_shaped;     // v in D => r v in D for r in (0,1]
};

// Falsification-only sampling checks of the structural assumptions on
// lambda. "pass" means no violation was found on the probe set.
StructureReport structure_check(const Lagrangian& lag, const ProbeBox& box);

} // namespace lavgap
