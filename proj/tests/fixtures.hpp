#pragma once

// Seeded field generators shared by the unit and acceptance suites.

#include <vector>

#include "qcpot/grid.hpp"

namespace qcpot::fixtures {

/// Convex sample: positive quadratic with bounded curvature plus a max of
/// a few affine pieces (kinks included).
inline ScalarField random_convex_field(Rng& rng, const GridSpec& g) {
    const int n = g.dim();
    SymMat A(n);
    for (int i = 0; i < n; ++i) A.set(i, i, rng.uniform(0.6, 1.4));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) A.set(i, j, rng.uniform(-0.2, 0.2));
    Vec p0 = vec_zero();
    for (int i = 0; i < n; ++i) p0[static_cast<size_t>(i)] = rng.uniform(-0.5, 0.5);

    const int pieces = 2 + static_cast<int>(rng.next_below(3));
    std::vector<Vec> slopes(static_cast<size_t>(pieces), vec_zero());
    std::vector<double> offsets(static_cast<size_t>(pieces));
    for (int k = 0; k < pieces; ++k) {
        for (int i = 0; i < n; ++i)
            slopes[static_cast<size_t>(k)][static_cast<size_t>(i)] = rng.uniform(-1.0, 1.0);
        offsets[static_cast<size_t>(k)] = rng.uniform(-0.3, 0.3);
    }

    return build_field(g, [=](const Vec& x) {
        double v = quad_form(A, x) + dot(p0, x, n);
        double aff = kNegInf;
        for (int k = 0; k < pieces; ++k)
            aff = std::max(aff, dot(slopes[static_cast<size_t>(k)], x, n) + offsets[static_cast<size_t>(k)]);
        return v + aff;
    });
}

/// Smooth convex sample: positive quadratic plus softened hinge pieces
/// sqrt(d^2 + <s, x>^2). Suited to the classical jet checker, whose cross
/// stencils misread oblique creases.
inline ScalarField random_smooth_convex_field(Rng& rng, const GridSpec& g) {
    const int n = g.dim();
    SymMat A(n);
    for (int i = 0; i < n; ++i) A.set(i, i, rng.uniform(0.6, 1.4));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) A.set(i, j, rng.uniform(-0.2, 0.2));
    Vec p0 = vec_zero();
    for (int i = 0; i < n; ++i) p0[static_cast<size_t>(i)] = rng.uniform(-0.5, 0.5);
    Vec s = vec_zero();
    for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = rng.uniform(-0.7, 0.7);
    const double soft = rng.uniform(0.2, 0.6), c = rng.uniform(0.1, 0.6);
    return build_field(g, [=](const Vec& x) {
        const double t = dot(s, x, n);
        return quad_form(A, x) + dot(p0, x, n) + c * std::sqrt(soft * soft + t * t);
    });
}

/// Bounded upper semicontinuous sample: smooth base, downward cone kinks,
/// and a few downward point jumps.
inline ScalarField random_usc_field(Rng& rng, const GridSpec& g) {
    const int n = g.dim();
    const double a = rng.uniform(-1.0, 1.0), b = rng.uniform(0.5, 2.0);
    Vec c0 = vec_zero(), c1 = vec_zero();
    for (int i = 0; i < n; ++i) {
        const auto ai = static_cast<size_t>(i);
        c0[ai] = rng.uniform(g.box().lo[ai] * 0.5, g.box().hi[ai] * 0.5);
        c1[ai] = rng.uniform(g.box().lo[ai] * 0.5, g.box().hi[ai] * 0.5);
    }
    const double k0 = rng.uniform(0.3, 1.5), k1 = rng.uniform(0.3, 1.5);

    ScalarField f = build_field(g, [=](const Vec& x) {
        return a * std::sin(b * x[0] + 0.3 * x[1]) - k0 * dist(x, c0, n) - k1 * dist(x, c1, n);
    });
    const int jumps = static_cast<int>(rng.next_below(4));
    for (int j = 0; j < jumps; ++j)
        f.values[rng.next_below(g.size())] -= rng.uniform(0.1, 0.8);
    return f;
}

/// Quasi-convex sample: a convex part minus a mild quadratic.
inline ScalarField random_quasiconvex_field(Rng& rng, const GridSpec& g) {
    const ScalarField base = random_convex_field(rng, g);
    const double lam = rng.uniform(0.0, 0.8);
    ScalarField f(g, base.values);
    for (std::size_t k = 0; k < g.size(); ++k)
        f.values[k] -= 0.5 * lam * norm2(g.node(k), g.dim());
    return f;
}

/// Concave quadratic r - Q_P(x - c) with P positive definite.
inline ScalarField random_concave_quadratic(Rng& rng, const GridSpec& g) {
    const int n = g.dim();
    SymMat P(n);
    for (int i = 0; i < n; ++i) P.set(i, i, rng.uniform(0.5, 2.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) P.set(i, j, rng.uniform(-0.3, 0.3));
    Vec c = vec_zero();
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = rng.uniform(-0.3, 0.3);
    const double r = rng.uniform(0.2, 1.5);
    return build_field(g, [=](const Vec& x) { return r - quad_form(P, sub(x, c)); });
}

}  // namespace qcpot::fixtures
