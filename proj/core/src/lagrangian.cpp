#include "lavgap/lagrangian.hpp"

#include <algorithm>
#include <cmath>

#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"

namespace lavgap {

double eval_density(const Lagrangian& lag, double s, const Vec& z, const Vec& v) {
    double lam = lag.in_domain(s, z, v) ? lag.lambda(s, z, v) : inf;
    if (std::isnan(lam)) lam = inf;
    double psi = lag.psi(s, z);
    if (std::isnan(psi)) psi = inf;
    return ext_mul(lam, psi);
}

DistKind dist_kind_from_string(const std::string& name) {
    if (name == "euclidean" || name == "e") return DistKind::euclidean;
    if (name == "u" || name == "u_distance") return DistKind::u_distance;
    throw config_error("unknown distance kind: " + name);
}

std::string to_string(DistKind kind) {
    return kind == DistKind::euclidean ? "euclidean" : "u";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::falsified: return "falsified";
        default: return "inconclusive";
    }
}

namespace {

// Nearest exit along the ray v + t * dir (t > 0): geometric expansion to
// bracket the first out-of-domain point, then bisection. Returns +inf when
// the ray stays inside out to max_radius.
double ray_exit_distance(const Lagrangian& lag, double s, const Vec& z, const Vec& v,
                         const Vec& dir, const DistOptions& opts) {
    auto inside = [&](double t) {
        Vec w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] + t * dir[i];
        return lag.in_domain(s, z, w);
    };
    double lo = 0.0;
    double hi = std::max(opts.tol, 1e-6);
    while (inside(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > opts.max_radius) return inf;
    }
    for (int it = 0; it < 200 && hi - lo > opts.tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (inside(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<Vec> probe_directions(const Vec& v) {
    const std::size_t n = v.size();
    std::vector<Vec> dirs;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }
    double nv = norm2(v);
    if (nv > 0.0) {
        Vec up(n), down(n);
        for (std::size_t i = 0; i < n; ++i) {
            up[i] = v[i] / nv;
            down[i] = -v[i] / nv;
        }
        dirs.push_back(up);
        dirs.push_back(down);
    }
    if (n == 3) {
        // Icosahedron vertex directions for an even angular cover.
        const double phi = 0.5 * (1.0 + std::sqrt(5.0));
        const double r = std::sqrt(1.0 + phi * phi);
        for (double a : {1.0, -1.0})
            for (double b : {phi, -phi}) {
                dirs.push_back({0.0, a / r, b / r});
                dirs.push_back({a / r, b / r, 0.0});
                dirs.push_back({b / r, 0.0, a / r});
            }
    }
    return dirs;
}

} // namespace

double dist_to_complement(const Lagrangian& lag, DistKind kind, double s_lo, double s_hi, double s,
                          const Vec& z, const Vec& v, const DistOptions& opts) {
    if (!lag.in_domain(s, z, v))
        throw config_error("dist_to_complement: base point is outside the domain");
    if (lag.real_valued) return inf;

    if (kind == DistKind::u_distance) {
        double best = inf;
        for (const Vec& dir : probe_directions(v))
            best = std::min(best, ray_exit_distance(lag, s, z, v, dir, opts));
        return best;
    }

    // Euclidean: probe lattice over (s, z, v), refined along the segment from
    // the base point to each out-of-domain lattice point. For autonomous
    // integrands the complement is a cylinder in s, so the s axis is skipped
    // (the nearest complement point shares the base abscissa).
    const std::size_t n = v.size();
    if (n != 1)
        throw config_error("dist_to_complement(euclidean): only scalar velocity supported");
    const double R = 2.0 * std::max({1.0, std::abs(z[0]), std::abs(v[0])});
    const int m = opts.lattice;

    double best = inf;
    auto consider = [&](double sc, double zc, double vc) {
        if (lag.in_domain(sc, {zc}, {vc})) return;
        // Walk the segment base -> candidate down to the boundary.
        double t_in = 0.0, t_out = 1.0;
        for (int it = 0; it < 100; ++it) {
            double t = 0.5 * (t_in + t_out);
            double st = s + t * (sc - s), zt = z[0] + t * (zc - z[0]), vt = v[0] + t * (vc - v[0]);
            (lag.in_domain(st, {zt}, {vt}) ? t_in : t_out) = t;
            if ((t_out - t_in) * std::max({std::abs(sc - s), std::abs(zc - z[0]),
                                           std::abs(vc - v[0])}) < opts.tol)
                break;
        }
        const double t = t_out;
        const double ds = t * (sc - s), dz = t * (zc - z[0]), dv = t * (vc - v[0]);
        best = std::min(best, std::sqrt(ds * ds + dz * dz + dv * dv));
    };

    if (lag.autonomous) {
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j)
                consider(s, z[0] - R + 2.0 * R * i / m, v[0] - R + 2.0 * R * j / m);
    } else {
        const double a = std::max(s_lo, s - R), b = std::min(s_hi, s + R);
        for (int k = 0; k <= m; ++k)
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= m; ++j)
                    consider(a + (b - a) * k / m, z[0] - R + 2.0 * R * i / m,
                             v[0] - R + 2.0 * R * j / m);
    }
    return best;
}

namespace {

// g(mu) = lambda(s, z, v / mu) * mu, +inf when v / mu exits the domain.
double radial_profile(const Lagrangian& lag, double s, const Vec& z, const Vec& v, double mu) {
    Vec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / mu;
    if (!lag.in_domain(s, z, w)) return inf;
    double val = lag.lambda(s, z, w);
    return std::isfinite(val) ? val * mu : inf;
}

} // namespace

double subgradient_P(const Lagrangian& lag, double s, const Vec& z, const Vec& v, double h) {
    if (!(h > 0.0) || !(h < 0.5)) throw config_error("subgradient_P: need 0 < h < 1/2");
    if (!lag.in_domain(s, z, v))
        throw config_error("subgradient_P: base point is outside the domain");
    const double g1 = radial_profile(lag, s, z, v, 1.0);
    if (!std::isfinite(g1)) throw numeric_error("subgradient_P: integrand infinite at base point");

    auto diff_at = [&](double step, int* mode) {
        const double gp = radial_profile(lag, s, z, v, 1.0 + step);
        const double gm = radial_profile(lag, s, z, v, 1.0 - step);
        const bool okp = std::isfinite(gp), okm = std::isfinite(gm);
        if (okp && okm) {
            *mode = 0;
            return (gp - gm) / (2.0 * step);
        }
        if (okp) {
            *mode = +1;
            return (gp - g1) / step;
        }
        if (okm) {
            *mode = -1;
            return (g1 - gm) / step;
        }
        *mode = 2;
        return 0.0;
    };

    int mode_h = 0, mode_h2 = 0;
    const double d1 = diff_at(h, &mode_h);
    if (mode_h == 2)
        throw numeric_error("subgradient_P: degenerate probe, both radial sides leave the domain");
    const double d2 = diff_at(0.5 * h, &mode_h2);
    if (mode_h2 != mode_h) return d2; // stencil changed shape between levels; keep the finer one
    // Richardson: O(h^2) for the central stencil, O(h) one-sided.
    return mode_h == 0 ? (4.0 * d2 - d1) / 3.0 : 2.0 * d2 - d1;
}

double analytic_P(const Lagrangian& lag, double s, const Vec& z, const Vec& v) {
    if (!lag.grad_v) throw config_error("analytic_P: no analytic gradient registered");
    const Vec g = lag.grad_v(s, z, v);
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * g[i];
    return lag.lambda(s, z, v) - dot;
}

ProbePoint draw_probe(ProbeRng& rng, const ProbeBox& box) {
    ProbePoint p;
    p.s = rng.uniform(box.s_range.lo, box.s_range.hi);
    p.z.resize(static_cast<std::size_t>(box.dim));
    p.v.resize(static_cast<std::size_t>(box.dim));
    for (int i = 0; i < box.dim; ++i) {
        p.z[static_cast<std::size_t>(i)] = rng.uniform(-box.z_halfwidth, box.z_halfwidth);
        p.v[static_cast<std::size_t>(i)] = rng.uniform(-box.v_halfwidth, box.v_halfwidth);
    }
    return p;
}

StructureReport structure_check(const Lagrangian& lag, const ProbeBox& box) {
    StructureReport rep;
    ProbeRng rng(box.seed);
    const double tol = 1e-9;
    int star_samples = 0;

    for (int k = 0; k < box.count; ++k) {
        ProbePoint p = draw_probe(rng, box);

        // Midpoint convexity of the radial profile r -> lambda(s, z, r v).
        if (rep.radially_convex.verdict == Verdict::pass) {
            const double r1 = rng.uniform(0.05, 2.0);
            const double r2 = rng.uniform(0.05, 2.0);
            auto at = [&](double r) {
                Vec w(p.v.size());
                for (std::size_t i = 0; i < p.v.size(); ++i) w[i] = r * p.v[i];
                return lag.in_domain(p.s, p.z, w) ? lag.lambda(p.s, p.z, w) : inf;
            };
            const double fa = at(r1), fb = at(r2);
            if (std::isfinite(fa) && std::isfinite(fb)) {
                const double fm = at(0.5 * (r1 + r2));
                const double chord = 0.5 * (fa + fb);
                if (fm > chord + tol * (1.0 + std::abs(chord))) {
                    rep.radially_convex.verdict = Verdict::falsified;
                    rep.radially_convex.witness = p;
                    rep.radially_convex.detail =
                        "midpoint above chord at r1=" + std::to_string(r1) +
                        ", r2=" + std::to_string(r2);
                }
            }
        }

        // Star-shapedness of the velocity domain about the origin.
        if (rep.star_shaped.verdict == Verdict::pass && !lag.real_valued) {
            if (lag.in_domain(p.s, p.z, p.v)) {
                ++star_samples;
                for (int j = 1; j <= 8; ++j) {
                    const double r = static_cast<double>(j) / 9.0;
                    Vec w(p.v.size());
                    for (std::size_t i = 0; i < p.v.size(); ++i) w[i] = r * p.v[i];
                    if (!lag.in_domain(p.s, p.z, w)) {
                        rep.star_shaped.verdict = Verdict::falsified;
                        rep.star_shaped.witness = p;
                        rep.star_shaped.detail = "rescaled velocity exits at r=" + std::to_string(r);
                        break;
                    }
                }
            }
        }
    }

    if (!lag.real_valued && star_samples == 0 && rep.star_shaped.verdict == Verdict::pass) {
        rep.star_shaped.verdict = Verdict::inconclusive;
        rep.star_shaped.detail = "no probe landed inside the domain";
    }
    return rep;
}

} // namespace lavgap
