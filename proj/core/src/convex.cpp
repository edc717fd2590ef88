#include "qcpot/convex.hpp"

#include <algorithm>
#include <cmath>

#include "qcpot/simplex.hpp"

namespace qcpot {

namespace {

void require_finite(const ScalarField& field, const char* what) {
    if (field.has_neg_inf()) throw Error(std::string(what) + " undefined on -inf set");
}

double osc(const ScalarField& f) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : f.values) {
        if (v == kNegInf) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

// Second-difference offsets: lattice axes plus face diagonals.
std::vector<IVec> second_difference_offsets(int n) {
    std::vector<IVec> offs;
    for (int i = 0; i < n; ++i) {
        IVec w = {0, 0, 0};
        w[static_cast<size_t>(i)] = 1;
        offs.push_back(w);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int s : {+1, -1}) {
                IVec w = {0, 0, 0};
                w[static_cast<size_t>(i)] = 1;
                w[static_cast<size_t>(j)] = s;
                offs.push_back(w);
            }
    return offs;
}

}  // namespace

SubdifferentialResult subdifferential(const ScalarField& field, std::size_t index, double tol) {
    require_finite(field, "subdifferential");
    const GridSpec& g = field.spec;
    const int n = g.dim();
    SubdifferentialResult out;
    out.node = index;
    const Vec x = g.node(index);
    const double ux = field.values[index];

    if (n == 1) {
        double left = kNegInf;
        double right = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (k == index) continue;
            const double dy = g.node(k)[0] - x[0];
            const double slope = (field.values[k] - ux) / dy;
            if (dy > 0)
                right = std::min(right, slope);
            else
                left = std::max(left, slope);
        }
        out.left_slope = left;
        out.right_slope = right;
        out.feasible = left <= right + tol;
        if (out.feasible) {
            double lo = (left == kNegInf) ? right : left;
            double hi = std::isinf(right) ? left : right;
            if (lo == kNegInf && std::isinf(hi)) lo = hi = 0.0;  // single-node degenerate
            out.p[0] = 0.5 * (lo + hi);
        }
        return out;
    }

    std::vector<Vec> a;
    std::vector<double> b;
    a.reserve(g.size() - 1);
    b.reserve(g.size() - 1);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (k == index) continue;
        // u(y) >= u(x) + <p, y-x>  <=>  <p, y-x> <= u(y) - u(x)
        a.push_back(sub(g.node(k), x));
        b.push_back(field.values[k] - ux + tol);
    }
    const double bound = 2.0 * osc(field) / g.min_spacing() + 1.0;
    const auto res = halfspace_feasible(a, b, n, bound, 1e-9 * (1.0 + std::fabs(ux)));
    out.feasible = res.feasible;
    out.p = res.p;
    return out;
}

double quasiconvex_index(const ScalarField& field) {
    require_finite(field, "quasi-convex index");
    const GridSpec& g = field.spec;
    const int n = g.dim();
    double min_d = std::numeric_limits<double>::infinity();

    for (const IVec& w : second_difference_offsets(n)) {
        double w2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<size_t>(i);
            w2 += static_cast<double>(w[k] * w[k]) * g.spacing()[k] * g.spacing()[k];
        }
        for (std::size_t f = 0; f < g.size(); ++f) {
            const IVec m = g.multi(f);
            bool ok = true;
            IVec mp = m, mm = m;
            for (int i = 0; i < n && ok; ++i) {
                const auto k = static_cast<size_t>(i);
                mp[k] = m[k] + w[k];
                mm[k] = m[k] - w[k];
                if (mp[k] < 0 || mp[k] >= g.shape()[k] || mm[k] < 0 || mm[k] >= g.shape()[k])
                    ok = false;
            }
            if (!ok) continue;
            const double d =
                (field.values[g.flat(mp)] - 2.0 * field.values[f] + field.values[g.flat(mm)]) / w2;
            min_d = std::min(min_d, d);
        }
    }
    return std::max(0.0, -min_d);
}

C11Report c11_check(const ScalarField& field, double lambda, double tol) {
    require_finite(field, "c11 check");
    C11Report rep;
    rep.index_plus = quasiconvex_index(field);
    ScalarField neg(field.spec, field.values);
    for (auto& v : neg.values) v = -v;
    rep.index_minus = quasiconvex_index(neg);
    rep.qc_plus = rep.index_plus <= lambda + tol;
    rep.qc_minus = rep.index_minus <= lambda + tol;

    const GridSpec& g = field.spec;
    const int n = g.dim();
    double lip = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!g.interior(k)) continue;
        const Jet2 jk = numeric_jet(field, k);
        const IVec m = g.multi(k);
        for (int i = 0; i < n; ++i) {
            IVec mp = m;
            mp[static_cast<size_t>(i)] += 1;
            const std::size_t kp = g.flat(mp);
            if (!g.interior(kp)) continue;
            const Jet2 jp = numeric_jet(field, kp);
            const double d = dist(jk.p, jp.p, n) / g.spacing()[static_cast<size_t>(i)];
            lip = std::max(lip, d);
        }
    }
    rep.grad_lip = lip;
    rep.grad_lip_ok = lip <= lambda + tol;
    return rep;
}

namespace {

void require_not_all_neg_inf(const ScalarField& field) {
    for (double v : field.values)
        if (v != kNegInf) return;
    throw Error("conjugate undefined: field is identically -inf");
}

}  // namespace

ScalarField fenchel_conjugate(const ScalarField& field, const GridSpec& dual_spec) {
    require_not_all_neg_inf(field);
    if (dual_spec.dim() != field.spec.dim()) throw Error("dual grid dimension mismatch");
    const GridSpec& g = field.spec;
    const int n = g.dim();
    std::vector<Vec> zs(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) zs[k] = g.node(k);

    std::vector<double> out(dual_spec.size());
    parallel_for(dual_spec.size(), [&](std::size_t j) {
        const Vec y = dual_spec.node(j);
        double best = kNegInf;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double fz = field.values[k];
            if (fz == kNegInf) continue;
            const double v = dot(y, zs[k], n) - fz;
            if (v > best) best = v;
        }
        out[j] = best;
    });
    return ScalarField(dual_spec, std::move(out));
}

ScalarField fenchel_conjugate_1d_fast(const ScalarField& field, const GridSpec& dual_spec) {
    require_not_all_neg_inf(field);
    if (field.spec.dim() != 1 || dual_spec.dim() != 1)
        throw Error("fast conjugate is 1D only");
    const GridSpec& g = field.spec;

    // Lower convex hull of (z_k, f_k), collinear middles dropped. Scanning
    // left to right keeps the lowest-index vertex of any tie.
    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (field.values[k] == kNegInf) continue;
        const double zk = g.node(k)[0], fk = field.values[k];
        while (hull.size() >= 2) {
            const std::size_t i1 = hull[hull.size() - 2], i2 = hull[hull.size() - 1];
            const double z1 = g.node(i1)[0], f1 = field.values[i1];
            const double z2 = g.node(i2)[0], f2 = field.values[i2];
            if ((z2 - z1) * (fk - f1) - (f2 - f1) * (zk - z1) <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }

    std::vector<double> out(dual_spec.size());
    std::size_t v = 0;
    for (std::size_t j = 0; j < dual_spec.size(); ++j) {
        const double y = dual_spec.node(j)[0];
        while (v + 1 < hull.size()) {
            const double z1 = g.node(hull[v])[0], f1 = field.values[hull[v]];
            const double z2 = g.node(hull[v + 1])[0], f2 = field.values[hull[v + 1]];
            if ((f2 - f1) / (z2 - z1) < y)
                ++v;
            else
                break;
        }
        out[j] = y * g.node(hull[v])[0] - field.values[hull[v]];
    }
    return ScalarField(dual_spec, std::move(out));
}

GridSpec auto_dual_spec(const ScalarField& field) {
    const GridSpec& g = field.spec;
    const int n = g.dim();
    Vec lo = vec_zero(), hi = vec_zero();
    for (int i = 0; i < n; ++i) {
        const auto ai = static_cast<size_t>(i);
        double smin = std::numeric_limits<double>::infinity(), smax = -smin;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const IVec m = g.multi(k);
            if (m[ai] + 1 >= g.shape()[ai]) continue;
            IVec mp = m;
            mp[ai] += 1;
            const double u0 = field.values[k], u1 = field.values[g.flat(mp)];
            if (u0 == kNegInf || u1 == kNegInf) continue;
            const double s = (u1 - u0) / g.spacing()[ai];
            smin = std::min(smin, s);
            smax = std::max(smax, s);
        }
        if (!(smin <= smax)) throw Error("cannot size dual grid: no finite slopes");
        lo[ai] = smin - g.spacing()[ai];
        hi[ai] = smax + g.spacing()[ai];
    }
    return GridSpec(Box(n, lo, hi), g.shape());
}

ScalarField biconjugate(const ScalarField& field) {
    const GridSpec dual = auto_dual_spec(field);
    const ScalarField g = fenchel_conjugate(field, dual);
    return fenchel_conjugate(g, field.spec);
}

GradConjugateMap grad_conjugate(const ScalarField& field, const GridSpec& dual_spec) {
    require_not_all_neg_inf(field);
    const GridSpec& g = field.spec;
    const int n = g.dim();

    GradConjugateMap map;
    map.dual_spec = dual_spec;
    map.argmax_node.assign(dual_spec.size(), 0);
    parallel_for(dual_spec.size(), [&](std::size_t j) {
        const Vec y = dual_spec.node(j);
        double best = kNegInf;
        std::size_t arg = 0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double fz = field.values[k];
            if (fz == kNegInf) continue;
            const double v = dot(y, g.node(k), n) - fz;
            if (v > best) {
                best = v;
                arg = k;
            }
        }
        map.argmax_node[j] = arg;
    });

    const double slack = 2.0 * g.max_spacing();
    for (std::size_t j1 = 0; j1 < dual_spec.size(); ++j1) {
        const Vec G1 = g.node(map.argmax_node[j1]);
        const Vec y1 = dual_spec.node(j1);
        for (std::size_t j2 = j1 + 1; j2 < dual_spec.size(); ++j2) {
            const Vec G2 = g.node(map.argmax_node[j2]);
            if (dist(G1, G2, n) > dist(y1, dual_spec.node(j2), n) + slack)
                throw Error("input not of the required form");
        }
    }
    return map;
}

namespace {

ScalarField legendre_f_field(const ScalarField& u, double r) {
    if (r <= 0.0) throw Error("magic check requires r > 0");
    if (u.has_neg_inf()) throw HypothesisError("magic check requires a bounded field");
    const GridSpec& g = u.spec;
    std::vector<double> f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec x = g.node(k);
        f[k] = r * u.values[k] + 0.5 * norm2(x, g.dim());
    }
    return ScalarField(g, std::move(f));
}

// Argmax of <y,z> - f(z) over the nodes, refined per axis by the vertex of
// the parabola through the three stencil values. The refinement recovers
// O(h^2) accuracy lost to node rounding.
struct RefinedArgmax {
    std::size_t node = 0;
    Vec point = vec_zero();
};

RefinedArgmax refined_argmax(const ScalarField& f, const Vec& y) {
    const GridSpec& g = f.spec;
    const int n = g.dim();
    double best = kNegInf;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double v = dot(y, g.node(k), n) - f.values[k];
        if (v > best) {
            best = v;
            arg = k;
        }
    }
    RefinedArgmax out;
    out.node = arg;
    out.point = g.node(arg);
    const IVec m = g.multi(arg);
    for (int i = 0; i < n; ++i) {
        const auto ai = static_cast<size_t>(i);
        if (m[ai] < 1 || m[ai] > g.shape()[ai] - 2) continue;
        IVec mp = m, mm = m;
        mp[ai] += 1;
        mm[ai] -= 1;
        const double h = g.spacing()[ai];
        const double phi0 = best;
        const double phip = dot(y, g.node(mp), n) - f.values[g.flat(mp)];
        const double phim = dot(y, g.node(mm), n) - f.values[g.flat(mm)];
        const double curv = 2.0 * phi0 - phip - phim;
        if (curv <= 1e-300) continue;
        double delta = 0.5 * h * (phip - phim) / curv;
        delta = std::clamp(delta, -0.5 * h, 0.5 * h);
        out.point[ai] += delta;
    }
    return out;
}

double det3(const double B[3][3], int n) {
    if (n == 1) return B[0][0];
    if (n == 2) return B[0][0] * B[1][1] - B[0][1] * B[1][0];
    return B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) -
           B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
           B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
}

}  // namespace

GridSpec magic_legendre_dual_spec(const ScalarField& u, double r) {
    return auto_dual_spec(legendre_f_field(u, r));
}

MagicLegendreReport magic_legendre_check(const ScalarField& u, double r, const GridSpec& dual_spec,
                                         std::size_t dual_index, double tol) {
    const ScalarField f = legendre_f_field(u, r);
    const GridSpec& g = f.spec;
    const int n = g.dim();

    if (!dual_spec.interior(dual_index))
        throw HypothesisError("critical value: lemma hypotheses fail");
    const Vec y = dual_spec.node(dual_index);

    MagicLegendreReport rep;
    const RefinedArgmax base = refined_argmax(f, y);
    rep.x0_node = base.node;
    rep.x0 = g.node(base.node);
    if (!g.interior(base.node))
        throw HypothesisError("critical value: lemma hypotheses fail");

    const IVec dm = dual_spec.multi(dual_index);
    for (int j = 0; j < n; ++j) {
        const auto aj = static_cast<size_t>(j);
        IVec mp = dm, mm = dm;
        mp[aj] += 1;
        mm[aj] -= 1;
        const double hd = dual_spec.spacing()[aj];
        const Vec gp = refined_argmax(f, dual_spec.node(mp)).point;
        const Vec gm = refined_argmax(f, dual_spec.node(mm)).point;
        for (int i = 0; i < n; ++i)
            rep.B[i][j] = (gp[static_cast<size_t>(i)] - gm[static_cast<size_t>(i)]) / (2.0 * hd);
    }
    rep.det_B = det3(rep.B, n);
    if (std::fabs(rep.det_B) <= tol)
        throw HypothesisError("critical value: lemma hypotheses fail");

    rep.H = numeric_jet(f, base.node).A;
    double res = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += rep.H.at(i, k) * rep.B[k][j];
            res = std::max(res, std::fabs(s - (i == j ? 1.0 : 0.0)));
        }
    rep.residual = res;
    rep.pass = res <= tol;
    return rep;
}

MagicLegendreReport magic_legendre_check(const ScalarField& u, double r, std::size_t dual_index,
                                         double tol) {
    return magic_legendre_check(u, r, magic_legendre_dual_spec(u, r), dual_index, tol);
}

}  // namespace qcpot
