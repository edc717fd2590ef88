#include "qcpot/contact.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qcpot/simplex.hpp"

namespace qcpot {

std::optional<Vec> ContactSet::gradient_at(std::size_t node) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
    if (it == nodes.end() || *it != node) return std::nullopt;
    return gradients[static_cast<std::size_t>(it - nodes.begin())];
}

std::vector<std::size_t> region_nodes(const GridSpec& g, const Box& region) {
    if (region.dim != g.dim()) throw Error("region dimension mismatch");
    std::vector<std::size_t> nodes;
    const double tol = 1e-9 * g.max_spacing();
    for (std::size_t k = 0; k < g.size(); ++k)
        if (region.contains(g.node(k), tol)) nodes.push_back(k);
    return nodes;
}

std::vector<std::size_t> ball_nodes(const GridSpec& g, const Vec& center, double rho) {
    std::vector<std::size_t> nodes;
    const double reach = rho + 0.5 * g.max_spacing();
    for (std::size_t k = 0; k < g.size(); ++k)
        if (dist(g.node(k), center, g.dim()) <= reach) nodes.push_back(k);
    return nodes;
}

namespace {

// Exact reduction to flat contact: with h = u - Q_A(. - x0), a type-A
// contact gradient p of u at x corresponds to the flat contact gradient
// q = p - A(x - x0) of h at x. The change of variables is exact.
std::vector<double> reduced_values(const ScalarField& u, const SymMat& A,
                                   const std::vector<std::size_t>& nodes, const Vec& x0) {
    std::vector<double> h(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = u.values[nodes[i]];
        if (v == kNegInf) throw Error("contact set undefined on -inf set");
        h[i] = v - quad_form(A, sub(u.spec.node(nodes[i]), x0));
    }
    return h;
}

// One-sided or centered difference slopes of the reduced values at a node;
// used as the polish target for the stored gradient.
Vec slope_target(const GridSpec& g, const ScalarField& u, const SymMat& A, const Vec& x0,
                 std::size_t k) {
    const int n = g.dim();
    const IVec m = g.multi(k);
    auto hval = [&](const IVec& mm) {
        return u.values[g.flat(mm)] - quad_form(A, sub(g.node(mm), x0));
    };
    const double h0 = hval(m);
    Vec t = vec_zero();
    for (int i = 0; i < n; ++i) {
        const auto ai = static_cast<size_t>(i);
        const double hi = g.spacing()[ai];
        double fwd = std::numeric_limits<double>::quiet_NaN(), bwd = fwd;
        if (m[ai] + 1 < g.shape()[ai]) {
            IVec mp = m;
            mp[ai] += 1;
            const double v = hval(mp);
            if (std::isfinite(v) && std::isfinite(h0)) fwd = (v - h0) / hi;
        }
        if (m[ai] >= 1) {
            IVec mm = m;
            mm[ai] -= 1;
            const double v = hval(mm);
            if (std::isfinite(v) && std::isfinite(h0)) bwd = (h0 - v) / hi;
        }
        if (!std::isnan(fwd) && !std::isnan(bwd))
            t[ai] = 0.5 * (fwd + bwd);
        else if (!std::isnan(fwd))
            t[ai] = fwd;
        else if (!std::isnan(bwd))
            t[ai] = bwd;
    }
    return t;
}

// Moves the witness toward the target one axis at a time, staying inside
// the feasible polytope. Witnesses at region-boundary nodes are wildly
// non-unique; the polish picks the gradient-like representative.
Vec polish_witness(const std::vector<Vec>& a, const std::vector<double>& b, int n, Vec q,
                   const Vec& target) {
    for (int i = 0; i < n; ++i) {
        const auto ai = static_cast<size_t>(i);
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double aki = a[k][ai];
            if (std::fabs(aki) < 1e-300) continue;
            double rest = b[k];
            for (int j = 0; j < n; ++j)
                if (j != i) rest -= a[k][static_cast<size_t>(j)] * q[static_cast<size_t>(j)];
            const double bound = rest / aki;
            if (aki > 0)
                hi = std::min(hi, bound);
            else
                lo = std::max(lo, bound);
        }
        if (lo <= hi) q[ai] = std::clamp(target[ai], lo, hi);
    }
    return q;
}

}  // namespace

ContactSet contact_set_on(const ScalarField& u, const SymMat& A,
                          const std::vector<std::size_t>& nodes, const Box& region, double tol) {
    const GridSpec& g = u.spec;
    const int n = g.dim();
    if (A.dim() != n) throw Error("contact type dimension mismatch");

    ContactSet cs;
    cs.mask = GridMask(g);
    cs.type_A = A;
    cs.region = region;

    const Vec x0 = region.center();
    const std::vector<double> h = reduced_values(u, A, nodes, x0);

    std::vector<char> flagged(nodes.size(), 0);
    std::vector<Vec> grads(nodes.size(), vec_zero());

    if (n == 1) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double xi = g.node(nodes[i])[0];
            // Upper support: q(y-x) >= h(y) - h(x) - tol for all region y.
            double lo = kNegInf;  // binding from y > x
            double hi = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                if (j == i) continue;
                const double dy = g.node(nodes[j])[0] - xi;
                const double s = (h[j] - h[i] - tol) / dy;
                if (dy > 0)
                    lo = std::max(lo, s);
                else
                    hi = std::min(hi, s);
            }
            if (lo <= hi) {
                flagged[i] = 1;
                const Vec target = slope_target(g, u, A, x0, nodes[i]);
                grads[i][0] = std::clamp(target[0], lo == kNegInf ? -1e300 : lo,
                                         std::isinf(hi) ? 1e300 : hi);
            }
        }
    } else {
        double osc = 0.0;
        {
            double mn = std::numeric_limits<double>::infinity(), mx = -mn;
            for (double v : h) {
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            osc = mx - mn;
        }
        const double bound = 4.0 * osc / g.min_spacing() + 4.0;
        parallel_for(nodes.size(), [&](std::size_t i) {
            std::vector<Vec> a;
            std::vector<double> b;
            a.reserve(nodes.size() - 1);
            b.reserve(nodes.size() - 1);
            const Vec xi = g.node(nodes[i]);
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                if (j == i) continue;
                // h(y) <= h(x) + <q, y-x> + tol  <=>  <-q, y-x> <= h(x)-h(y)+tol
                a.push_back(sub(xi, g.node(nodes[j])));
                b.push_back(h[i] - h[j] + tol);
            }
            const auto res = halfspace_feasible(a, b, n, bound, 1e-9 * (1.0 + std::fabs(h[i])));
            if (res.feasible) {
                flagged[i] = 1;
                grads[i] = polish_witness(a, b, n, res.p, slope_target(g, u, A, x0, nodes[i]));
            }
        });
    }

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!flagged[i]) continue;
        cs.mask.bits[nodes[i]] = 1;
        cs.nodes.push_back(nodes[i]);
        // Translate back: p = q + A (x - x0).
        const Vec corr = A.apply(sub(g.node(nodes[i]), x0));
        cs.gradients.push_back(add(grads[i], corr));
    }
    return cs;
}

ContactSet contact_set(const ScalarField& u, const SymMat& A, const Box& region, double tol) {
    return contact_set_on(u, A, region_nodes(u.spec, region), region, tol);
}

ContactSet contact_set_ball(const ScalarField& u, const SymMat& A, const Vec& center, double rho,
                            double tol) {
    Vec lo = center, hi = center;
    for (int i = 0; i < u.spec.dim(); ++i) {
        lo[static_cast<size_t>(i)] -= rho;
        hi[static_cast<size_t>(i)] += rho;
    }
    const Box hull(u.spec.dim(), lo, hi);
    return contact_set_on(u, A, ball_nodes(u.spec, center, rho), hull, tol);
}

bool validate_strict_jet(const ScalarField& u, const StrictJetWitness& w, double tol) {
    const GridSpec& g = u.spec;
    const int n = g.dim();
    const Vec x = g.node(w.x);
    const double ux = u.values[w.x];
    if (ux == kNegInf) return false;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (k == w.x) continue;
        const Vec d = sub(g.node(k), x);
        const double r = norm(d, n);
        if (r > w.radius) continue;
        const double uz = u.values[k];
        if (uz == kNegInf) continue;
        if (uz > ux + dot(w.p, d, n) + quad_form(w.A, d) - w.eps_strict * r * r + tol)
            return false;
    }
    return true;
}

VertexMapReport vertex_map_check(const ScalarField& u, double r, const ContactSet& cs) {
    const GridSpec& g = u.spec;
    const int n = g.dim();
    if (r <= 0.0) throw Error("vertex map requires r > 0");
    const SymMat expect = SymMat::identity(n, 1.0 / r);
    if ((cs.type_A - expect).max_abs_entry() > 1e-9 * (1.0 + 1.0 / r))
        throw Error("type mismatch: contact set is not of type (1/r) I");

    VertexMapReport rep;
    rep.min_pair_distance = std::numeric_limits<double>::infinity();
    const std::size_t m = cs.nodes.size();
    std::vector<Vec> V(m);
    for (std::size_t i = 0; i < m; ++i)
        V[i] = sub(g.node(cs.nodes[i]), scale(cs.gradients[i], r));

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dx = dist(g.node(cs.nodes[i]), g.node(cs.nodes[j]), n);
            const double dv = dist(V[i], V[j], n);
            rep.max_expansion = std::max(rep.max_expansion, dv / dx);
            rep.min_pair_distance = std::min(rep.min_pair_distance, dx);
            ++rep.pairs;
        }
    if (rep.pairs > 0) {
        rep.bound = 1.0 + 4.0 * g.max_spacing() / rep.min_pair_distance;
        rep.pass = rep.max_expansion <= rep.bound;
    }
    return rep;
}

double slod_K(const ScalarField& u, std::size_t x, const std::vector<double>& eps_seq,
              double slope_tol) {
    const GridSpec& g = u.spec;
    const int n = g.dim();
    if (!g.interior(x)) throw Error("non-interior node");
    if (eps_seq.empty()) throw Error("empty shell radius list");

    const Vec xp = g.node(x);
    for (double e : eps_seq) {
        if (e <= 0.0) throw Error("shell radius must be positive");
        for (int i = 0; i < n; ++i) {
            const auto ai = static_cast<size_t>(i);
            const double d = std::min(xp[ai] - g.box().lo[ai], g.box().hi[ai] - xp[ai]);
            if (e >= d + 1e-12) throw Error("grid too coarse");
        }
    }

    // Differentiability proxy: per-axis one-sided slopes must agree.
    const IVec m = g.multi(x);
    const double ux = u.values[x];
    if (ux == kNegInf) throw Error("undefined jet");
    Vec p = vec_zero();
    for (int i = 0; i < n; ++i) {
        const auto ai = static_cast<size_t>(i);
        IVec mp = m, mm = m;
        mp[ai] += 1;
        mm[ai] -= 1;
        const double h = g.spacing()[ai];
        const double up = u.values[g.flat(mp)], um = u.values[g.flat(mm)];
        if (up == kNegInf || um == kNegInf) throw Error("undefined jet");
        const double sf = (up - ux) / h, sb = (ux - um) / h;
        if (std::fabs(sf - sb) > slope_tol) return std::numeric_limits<double>::infinity();
        p[ai] = 0.5 * (sf + sb);
    }

    std::vector<double> eps_sorted(eps_seq);
    std::sort(eps_sorted.begin(), eps_sorted.end());
    const std::size_t take = std::min<std::size_t>(2, eps_sorted.size());
    const double half_h = 0.5 * g.max_spacing();

    double K = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < take; ++t) {
        const double e = eps_sorted[t];
        double shell_max = kNegInf;
        bool any = false;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Vec d = sub(g.node(k), xp);
            const double r = norm(d, n);
            if (std::fabs(r - e) > half_h) continue;
            any = true;
            const double uz = u.values[k];
            if (uz == kNegInf) continue;
            shell_max = std::max(shell_max, uz - ux - dot(p, d, n));
        }
        if (!any) throw Error("grid too coarse");
        K = std::max(K, 2.0 / (e * e) * shell_max);
    }
    return K;
}

std::vector<DensityRow> density_experiment(const ScalarField& u, double r, double R,
                                           const std::vector<double>& rho_list, double tol) {
    if (!(r > 0.0) || !(r <= R)) throw Error("density experiment requires 0 < r <= R");
    const GridSpec& g = u.spec;
    const int n = g.dim();

    const std::size_t c = g.nearest(g.box().center());
    const Vec cp = g.node(c);
    if (std::fabs(u.values[c]) > tol) throw HypothesisError("density hypotheses violated");
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (k == c) continue;
        const double d2 = norm2(sub(g.node(k), cp), n);
        const double v = u.values[k];
        if (v < -1e-12 || v > d2 / (2.0 * R) - tol)
            throw HypothesisError("density hypotheses violated");
    }

    const SymMat A = SymMat::identity(n, 1.0 / r);
    std::vector<DensityRow> rows;
    for (double rho : rho_list) {
        DensityRow row;
        row.rho = rho;
        const auto ball = ball_nodes(g, cp, rho);
        if (ball.empty()) throw Error("grid too coarse");
        const ContactSet cs = contact_set_ball(u, A, cp, rho, tol);
        row.ratio = static_cast<double>(cs.nodes.size()) / static_cast<double>(ball.size());
        row.bound = std::pow(1.0 - std::sqrt(r / R), n);
        row.slack = 5.0 * g.max_spacing() / rho;
        row.pass = row.ratio >= row.bound - row.slack;
        rows.push_back(row);
    }
    return rows;
}

JensenReport jensen_slodkowski_verify(const ScalarField& w, const StrictJetWitness& witness,
                                      double rho0, double tol) {
    if (!validate_strict_jet(w, witness, tol)) throw HypothesisError("strict jet witness invalid");
    if (rho0 > witness.radius + 1e-12) throw Error("rho0 exceeds the witness radius");

    const GridSpec& g = w.spec;
    const Vec x = g.node(witness.x);
    JensenReport rep;
    rep.all_positive = true;
    for (double rho = rho0; rho >= 4.0 * g.max_spacing(); rho *= 0.5) {
        const ContactSet cs = contact_set_ball(w, witness.A, x, rho, tol);
        JensenLadderRow row;
        row.rho = rho;
        row.measure = mask_measure(cs.mask);
        rep.rows.push_back(row);
        if (row.measure > 0.0 && !rep.found) {
            rep.found = true;
            rep.rho_used = rho;
        }
        if (row.measure <= 0.0) rep.all_positive = false;
    }
    if (rep.rows.empty()) throw Error("grid too coarse");
    return rep;
}

AlexandrovReport alexandrov_bound(const ScalarField& u, const Box& omega, double tol) {
    const GridSpec& g = u.spec;
    const int n = g.dim();
    const auto nodes = region_nodes(g, omega);
    if (nodes.empty()) throw Error("empty region");
    for (auto k : nodes)
        if (u.values[k] == kNegInf) throw Error("alexandrov bound undefined on -inf set");

    // Region index ranges; the boundary layer is any extremal index.
    IVec lo = g.multi(nodes.front()), hi = lo;
    for (auto k : nodes) {
        const IVec m = g.multi(k);
        for (int i = 0; i < n; ++i) {
            const auto ai = static_cast<size_t>(i);
            lo[ai] = std::min(lo[ai], m[ai]);
            hi[ai] = std::max(hi[ai], m[ai]);
        }
    }
    auto is_region_boundary = [&](std::size_t k) {
        const IVec m = g.multi(k);
        for (int i = 0; i < n; ++i) {
            const auto ai = static_cast<size_t>(i);
            if (m[ai] == lo[ai] || m[ai] == hi[ai]) return true;
        }
        return false;
    };

    AlexandrovReport rep;
    rep.lhs = kNegInf;
    rep.boundary_sup = 0.0;
    for (auto k : nodes) {
        rep.lhs = std::max(rep.lhs, u.values[k]);
        if (is_region_boundary(k)) rep.boundary_sup = std::max(rep.boundary_sup, u.values[k]);
    }

    const ContactSet cs = contact_set(u, SymMat(n), omega, tol);
    std::set<std::array<long, 3>> bins;
    for (std::size_t i = 0; i < cs.nodes.size(); ++i) {
        const std::size_t k = cs.nodes[i];
        if (is_region_boundary(k) || !g.interior(k)) continue;
        const SymMat H = numeric_jet(u, k).A;
        rep.integral += std::fabs(H.det()) * g.cell_volume();
        ++rep.contact_count;
        std::array<long, 3> bin = {0, 0, 0};
        for (int a = 0; a < n; ++a) {
            const auto aa = static_cast<size_t>(a);
            bin[aa] = std::lround(cs.gradients[i][aa] / g.spacing()[aa]);
        }
        bins.insert(bin);
    }
    rep.area_lhs = static_cast<double>(bins.size()) * g.cell_volume();
    rep.area_rhs = rep.integral;

    const double omega_n = (n == 1) ? 2.0 : (n == 2) ? 3.14159265358979323846 : 4.18879020478639098;
    rep.rhs = rep.boundary_sup +
              omega.diameter() / std::pow(omega_n, 1.0 / n) * std::pow(rep.integral, 1.0 / n);
    rep.mp_ok = rep.lhs <= rep.rhs + tol;
    rep.area_ok = rep.area_lhs <= rep.area_rhs + tol * (1.0 + rep.area_rhs);
    rep.coarse_violation = (rep.contact_count == 0 && rep.lhs > rep.boundary_sup + tol);
    return rep;
}

SummandWitness summand_decompose(const ScalarField& u, const ScalarField& v, std::size_t x,
                                 const Vec& p, const SymMat& A, double search_radius, double tol) {
    const GridSpec& g = u.spec;
    if (!g.same_grid(v.spec)) throw Error("summand fields live on different grids");
    const int n = g.dim();
    const Vec xp = g.node(x);

    // Precondition: (p, A) is an upper contact jet for u + v at x over the
    // search radius.
    const double wx = u.values[x] + v.values[x];
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec d = sub(g.node(k), xp);
        if (norm(d, n) > search_radius) continue;
        const double wy = u.values[k] + v.values[k];
        if (wy > wx + dot(p, d, n) + quad_form(A, d) + tol)
            throw Error("input jet is not an upper contact jet for the sum");
    }

    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double d = dist(g.node(k), xp, n);
        if (d <= search_radius && g.interior(k)) order.emplace_back(d, k);
    }
    std::sort(order.begin(), order.end());

    const SymMat slackA = A + SymMat::identity(n, tol);
    for (const auto& [d, k] : order) {
        Jet2 ju, jv;
        try {
            ju = numeric_jet(u, k);
            jv = numeric_jet(v, k);
        } catch (const Error&) {
            continue;
        }
        if (!loewner_geq(slackA, ju.A + jv.A, 0.0)) continue;
        if (dist(add(ju.p, jv.p), p, n) > tol) continue;
        SummandWitness w;
        w.node = k;
        w.B = ju.A;
        w.C = jv.A;
        return w;
    }
    throw Error("no summand witness at this resolution");
}

}  // namespace qcpot
