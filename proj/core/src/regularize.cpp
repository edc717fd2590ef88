#include "qcpot/regularize.hpp"

#include <algorithm>
#include <cmath>

namespace qcpot {

SupConvResult sup_convolve(const ScalarField& field, double eps) {
    if (eps <= 0.0) throw Error("sup-convolution requires eps > 0");
    bool any_finite = false;
    for (double v : field.values)
        if (v != kNegInf) {
            any_finite = true;
            break;
        }
    if (!any_finite) throw Error("sup-convolution undefined: field is identically -inf");

    const GridSpec& g = field.spec;
    const int n = g.dim();
    const bool bounded = !field.has_neg_inf();
    const double M = field.max_abs_finite();
    const double delta = 2.0 * std::sqrt(eps * M);

    SupConvResult out;
    out.eps = eps;
    out.delta = delta;
    out.argmax_map.assign(g.size(), 0);
    std::vector<double> values(g.size());

    // For bounded fields the maximizers lie in the closed delta-ball, so a
    // delta window of whole axis ranges suffices; scanning the window in
    // ascending flat order keeps the lowest-index tie-break of a full scan.
    IVec reach = {0, 0, 0};
    if (bounded)
        for (int i = 0; i < n; ++i)
            reach[static_cast<size_t>(i)] =
                static_cast<int>(std::ceil(delta / g.spacing()[static_cast<size_t>(i)])) + 1;

    parallel_for(g.size(), [&](std::size_t k) {
        const Vec x = g.node(k);
        const IVec m = g.multi(k);
        IVec lo = {0, 0, 0}, hi = {0, 0, 0};
        for (int i = 0; i < n; ++i) {
            const auto ai = static_cast<size_t>(i);
            if (bounded) {
                lo[ai] = std::max(0, m[ai] - reach[ai]);
                hi[ai] = std::min(g.shape()[ai] - 1, m[ai] + reach[ai]);
            } else {
                lo[ai] = 0;
                hi[ai] = g.shape()[ai] - 1;
            }
        }
        double best = kNegInf;
        std::size_t arg = 0;
        IVec c = lo;
        for (;;) {
            const std::size_t f = g.flat(c);
            const double uy = field.values[f];
            if (uy != kNegInf) {
                const double v = uy - dist(g.node(c), x, n) * dist(g.node(c), x, n) / (2.0 * eps);
                if (v > best) {
                    best = v;
                    arg = f;
                }
            }
            int axis = n - 1;
            while (axis >= 0) {
                auto ai = static_cast<size_t>(axis);
                if (++c[ai] <= hi[ai]) break;
                c[ai] = lo[ai];
                --axis;
            }
            if (axis < 0) break;
        }
        values[k] = best;
        out.argmax_map[k] = arg;
    });

    out.field = ScalarField(g, std::move(values));
    return out;
}

TransportReport magic_transport_check(const ScalarField& u, double eps, std::size_t x_index,
                                      const Vec& p, const SymMat& A, double radius, double tol) {
    return magic_transport_check(u, sup_convolve(u, eps), x_index, p, A, radius, tol);
}

TransportReport magic_transport_check(const ScalarField& u, const SupConvResult& sc,
                                      std::size_t x_index, const Vec& p, const SymMat& A,
                                      double radius, double tol) {
    const GridSpec& g = u.spec;
    const int n = g.dim();
    const double eps = sc.eps;
    const Vec x = g.node(x_index);

    // Precondition: (p, A) is an upper contact jet for u^eps at x over the
    // given radius.
    const double ue_x = sc.field.values[x_index];
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec d = sub(g.node(k), x);
        if (norm(d, n) > radius) continue;
        if (sc.field.values[k] > ue_x + dot(p, d, n) + quad_form(A, d) + tol)
            throw Error("input jet is not an upper contact jet for the sup-convolution");
    }

    TransportReport rep;
    rep.xi_exact = add(x, scale(p, eps));
    rep.xi_node = g.nearest(rep.xi_exact);
    rep.xi_round_dist = dist(rep.xi_exact, g.node(rep.xi_node), n);
    rep.argmax_node = sc.argmax_map[x_index];

    rep.within_one_cell = true;
    {
        const Vec am = g.node(rep.argmax_node);
        for (int i = 0; i < n; ++i) {
            const auto ai = static_cast<size_t>(i);
            if (std::fabs(rep.xi_exact[ai] - am[ai]) > g.spacing()[ai] * (1.0 + 1e-9))
                rep.within_one_cell = false;
        }
    }

    const Vec xi = g.node(rep.xi_node);
    const double u_xi = u.values[rep.xi_node];
    rep.contact_inequality_ok = true;
    if (u_xi == kNegInf) {
        rep.contact_inequality_ok = false;
    } else {
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Vec d = sub(g.node(k), xi);
            if (norm(d, n) > radius) continue;
            const double uz = u.values[k];
            if (uz == kNegInf) continue;
            if (uz > u_xi + dot(p, d, n) + quad_form(A, d) + tol) {
                rep.contact_inequality_ok = false;
                break;
            }
        }
    }

    rep.value_residual = (u_xi == kNegInf)
                             ? std::numeric_limits<double>::infinity()
                             : std::fabs(u_xi - (ue_x + 0.5 * eps * norm2(p, n)));
    rep.value_ok = rep.value_residual <= tol;
    rep.contact_ok = rep.contact_inequality_ok && rep.value_ok;
    return rep;
}

}  // namespace qcpot
