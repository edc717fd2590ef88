#include "qcpot/potential.hpp"

#include <algorithm>
#include <cmath>

#include "qcpot/convex.hpp"

namespace qcpot {

namespace {

struct RegionIndex {
    std::vector<std::size_t> nodes;
    IVec lo = {0, 0, 0};
    IVec hi = {0, 0, 0};
};

RegionIndex index_region(const GridSpec& g, const Box& region) {
    RegionIndex r;
    r.nodes = region_nodes(g, region);
    if (r.nodes.empty()) throw Error("empty region");
    r.lo = g.multi(r.nodes.front());
    r.hi = r.lo;
    for (auto k : r.nodes) {
        const IVec m = g.multi(k);
        for (int i = 0; i < g.dim(); ++i) {
            const auto ai = static_cast<size_t>(i);
            r.lo[ai] = std::min(r.lo[ai], m[ai]);
            r.hi[ai] = std::max(r.hi[ai], m[ai]);
        }
    }
    return r;
}

bool on_region_boundary(const GridSpec& g, const RegionIndex& r, std::size_t k) {
    const IVec m = g.multi(k);
    for (int i = 0; i < g.dim(); ++i) {
        const auto ai = static_cast<size_t>(i);
        if (m[ai] == r.lo[ai] || m[ai] == r.hi[ai]) return true;
    }
    return false;
}

}  // namespace

SubharmonicReport check_subharmonic_ae(const ScalarField& u, const Subequation& F,
                                       const Box& region, double tol) {
    if (u.has_neg_inf()) throw Error("AE route requires local quasi-convexity");
    if (F.dim != u.spec.dim()) throw Error("subequation dimension mismatch");
    const GridSpec& g = u.spec;

    SubharmonicReport rep;
    rep.mode = "ae";
    rep.worst_margin = std::numeric_limits<double>::infinity();

    const auto nodes = region_nodes(g, region);
    std::vector<double> margins(nodes.size(), std::numeric_limits<double>::quiet_NaN());
    parallel_for(nodes.size(), [&](std::size_t i) {
        const std::size_t k = nodes[i];
        if (!g.interior(k)) return;
        const Jet2 jet = numeric_jet(u, k);
        margins[i] = F.margin_at(g.node(k), Jet2(u.values[k], jet.p, jet.A));
    });

    std::size_t passed = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (std::isnan(margins[i])) continue;
        ++rep.nodes_checked;
        if (margins[i] >= -tol) ++passed;
        if (margins[i] < rep.worst_margin) {
            rep.worst_margin = margins[i];
            rep.worst_node = nodes[i];
        }
    }
    if (rep.nodes_checked == 0) throw Error("region has no interior nodes");
    rep.pass_fraction = static_cast<double>(passed) / static_cast<double>(rep.nodes_checked);
    rep.pass = passed == rep.nodes_checked;
    return rep;
}

std::optional<BadJet> find_bad_test_jet(const ScalarField& u, const Subequation& F, std::size_t x,
                                        const double radius, const JetLatticeParams& params,
                                        double tol) {
    const GridSpec& g = u.spec;
    const int n = g.dim();
    if (radius < 3.0 * g.max_spacing()) throw Error("bad-jet search radius must be >= 3h");
    if (!g.interior(x)) throw Error("non-interior node");

    const Jet2 base = numeric_jet(u, x);
    const double a_max = params.a_max > 0 ? params.a_max : 2.0 * base.A.max_abs_entry() + 1.0;
    const double a_step = params.a_step > 0 ? params.a_step : a_max / 8.0;
    const double p_rad =
        params.p_rad >= 0 ? params.p_rad : std::max(2.0 * norm_inf(base.p, n), g.max_spacing());
    const double p_step = params.p_step > 0 ? params.p_step : (p_rad > 0 ? p_rad / 8.0 : 1.0);

    auto lattice_1d = [](double rad, double step) {
        std::vector<double> xs;
        const int k = step > 0 ? static_cast<int>(std::floor(rad / step + 1e-9)) : 0;
        for (int i = -k; i <= k; ++i) xs.push_back(static_cast<double>(i) * step);
        if (xs.empty()) xs.push_back(0.0);
        return xs;
    };

    // A candidates ordered by ascending largest eigenvalue, then entries.
    std::vector<SymMat> As;
    {
        const auto entries = lattice_1d(a_max, a_step);
        const int ne = n * (n + 1) / 2;
        std::vector<int> idx(static_cast<size_t>(ne), 0);
        for (;;) {
            SymMat A(n);
            int e = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) A.set(i, j, entries[static_cast<size_t>(idx[static_cast<size_t>(e++)])]);
            As.push_back(A);
            int c = ne - 1;
            while (c >= 0 && ++idx[static_cast<size_t>(c)] == static_cast<int>(entries.size())) idx[static_cast<size_t>(c--)] = 0;
            if (c < 0) break;
        }
        std::stable_sort(As.begin(), As.end(), [](const SymMat& a, const SymMat& b) {
            const double la = lambda_max(a), lb = lambda_max(b);
            if (la != lb) return la < lb;
            return a.packed_vector() < b.packed_vector();
        });
    }

    // p candidates around the centered gradient, ordered by ascending norm.
    std::vector<Vec> Ps;
    {
        const auto offs = lattice_1d(p_rad, p_step);
        IVec idx = {0, 0, 0};
        for (;;) {
            Vec p = base.p;
            for (int i = 0; i < n; ++i)
                p[static_cast<size_t>(i)] += offs[static_cast<size_t>(idx[static_cast<size_t>(i)])];
            Ps.push_back(p);
            int c = n - 1;
            while (c >= 0 && ++idx[static_cast<size_t>(c)] == static_cast<int>(offs.size())) idx[static_cast<size_t>(c--)] = 0;
            if (c < 0) break;
        }
        std::stable_sort(Ps.begin(), Ps.end(), [n](const Vec& a, const Vec& b) {
            const double na = norm2(a, n), nb = norm2(b, n);
            if (na != nb) return na < nb;
            return a < b;
        });
    }

    const Vec xp = g.node(x);
    const double ux = u.values[x];
    std::vector<std::pair<Vec, double>> ball;  // (y - x, u(y))
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (k == x) continue;
        const Vec d = sub(g.node(k), xp);
        const double r = norm(d, n);
        if (r <= radius && u.values[k] != kNegInf) ball.emplace_back(d, u.values[k]);
    }

    // Cheap necessary conditions for the contact inequality along the axes.
    const IVec m = g.multi(x);
    std::array<std::array<double, 2>, 3> axis_excess{};
    for (int i = 0; i < n; ++i) {
        const auto ai = static_cast<size_t>(i);
        IVec mp = m, mm = m;
        mp[ai] += 1;
        mm[ai] -= 1;
        axis_excess[ai][0] = u.values[g.flat(mp)] - ux;  // +h_i direction
        axis_excess[ai][1] = u.values[g.flat(mm)] - ux;  // -h_i direction
    }

    for (const SymMat& A : As) {
        for (const Vec& p : Ps) {
            const double margin = F.margin_at(xp, Jet2(ux, p, A));
            if (margin >= -tol) continue;

            bool viable = true;
            for (int i = 0; i < n && viable; ++i) {
                const auto ai = static_cast<size_t>(i);
                const double h = g.spacing()[ai];
                const double quad = 0.5 * A.at(i, i) * h * h;
                if (axis_excess[ai][0] > p[ai] * h + quad) viable = false;
                if (axis_excess[ai][1] > -p[ai] * h + quad) viable = false;
            }
            if (!viable) continue;

            double eps = std::numeric_limits<double>::infinity();
            for (const auto& [d, uy] : ball) {
                const double room = ux + dot(p, d, n) + quad_form(A, d) - uy;
                eps = std::min(eps, room / norm2(d, n));
                if (eps <= 0.0) break;
            }
            if (eps <= 0.0) continue;

            BadJet bad;
            bad.x = x;
            bad.J = Jet2(ux, p, A);
            bad.eps_strict = eps;
            bad.radius = radius;
            bad.margin_violation = margin;
            return bad;
        }
    }
    return std::nullopt;
}

SubaffineReport is_subaffine(const ScalarField& w, const Box& region, bool plus, double tol) {
    const GridSpec& g = w.spec;
    const int n = g.dim();
    if (w.has_neg_inf()) throw Error("subaffine test undefined on -inf set");

    const RegionIndex reg = index_region(g, region);

    // Probe slopes from the padded forward-difference slope lattice.
    std::vector<Vec> slopes;
    {
        const GridSpec dual = auto_dual_spec(w);
        const int per_axis = 9;
        std::vector<std::vector<double>> axis_vals(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto ai = static_cast<size_t>(i);
            for (int t = 0; t < per_axis; ++t)
                axis_vals[ai].push_back(dual.box().lo[ai] + (dual.box().hi[ai] - dual.box().lo[ai]) *
                                                              static_cast<double>(t) /
                                                              (per_axis - 1));
        }
        IVec idx = {0, 0, 0};
        for (;;) {
            Vec p = vec_zero();
            for (int i = 0; i < n; ++i)
                p[static_cast<size_t>(i)] = axis_vals[static_cast<size_t>(i)][static_cast<size_t>(idx[static_cast<size_t>(i)])];
            slopes.push_back(p);
            int c = n - 1;
            while (c >= 0 && ++idx[static_cast<size_t>(c)] == per_axis) idx[static_cast<size_t>(c--)] = 0;
            if (c < 0) break;
        }
    }

    // Dyadic sub-box family by index ranges; a chunk needs >= 3 nodes.
    struct SubBox {
        IVec lo, hi;
    };
    std::vector<SubBox> boxes;
    for (int level = 0;; ++level) {
        const int parts = 1 << level;
        bool fits = true;
        for (int i = 0; i < n; ++i) {
            const auto ai = static_cast<size_t>(i);
            if ((reg.hi[ai] - reg.lo[ai]) / parts < 2) fits = false;
        }
        if (!fits) break;
        IVec pi = {0, 0, 0};
        for (;;) {
            SubBox sb;
            sb.lo = sb.hi = reg.lo;
            for (int i = 0; i < n; ++i) {
                const auto ai = static_cast<size_t>(i);
                const int len = reg.hi[ai] - reg.lo[ai];
                sb.lo[ai] = reg.lo[ai] + len * pi[ai] / parts;
                sb.hi[ai] = reg.lo[ai] + len * (pi[ai] + 1) / parts;
            }
            boxes.push_back(sb);
            int c = n - 1;
            while (c >= 0 && ++pi[static_cast<size_t>(c)] == parts) pi[static_cast<size_t>(c--)] = 0;
            if (c < 0) break;
        }
        if (level >= 4) break;
    }

    SubaffineReport rep;
    rep.probe_ok = true;
    for (const auto& sb : boxes) {
        std::vector<std::size_t> box_nodes, boundary;
        IVec c = sb.lo;
        for (;;) {
            const std::size_t k = g.flat(c);
            box_nodes.push_back(k);
            bool bd = false;
            for (int i = 0; i < n; ++i) {
                const auto ai = static_cast<size_t>(i);
                if (c[ai] == sb.lo[ai] || c[ai] == sb.hi[ai]) bd = true;
            }
            if (bd) boundary.push_back(k);
            int ax = n - 1;
            while (ax >= 0) {
                auto ai = static_cast<size_t>(ax);
                if (++c[ai] <= sb.hi[ai]) break;
                c[ai] = sb.lo[ai];
                --ax;
            }
            if (ax < 0) break;
        }

        for (const Vec& p : slopes) {
            double off = kNegInf;
            for (auto k : boundary) off = std::max(off, w.values[k] - dot(p, g.node(k), n));
            if (plus) {
                double need = kNegInf;
                for (auto k : box_nodes) need = std::max(need, -dot(p, g.node(k), n));
                off = std::max(off, need);
            }
            double m_interior = kNegInf, m_boundary = kNegInf;
            for (auto k : box_nodes) {
                const double e = w.values[k] - dot(p, g.node(k), n) - off;
                m_interior = std::max(m_interior, e);
            }
            for (auto k : boundary) {
                const double e = w.values[k] - dot(p, g.node(k), n) - off;
                m_boundary = std::max(m_boundary, e);
            }
            // w <= a on the sub-box boundary must force w <= a inside; when
            // the nonnegativity lift pushes a strictly above w on the
            // boundary, the conclusion is still w <= a, not boundary
            // attainment.
            if (m_interior > std::max(m_boundary, 0.0) + tol) {
                rep.probe_ok = false;
                break;
            }
        }
        if (!rep.probe_ok) break;
    }

    const Subequation F = standard_library(plus ? "subaffineplus" : "subaffine", n);
    rep.ae_ok = check_subharmonic_ae(w, F, region, tol).pass;
    rep.agree = rep.probe_ok == rep.ae_ok;
    rep.pass = rep.probe_ok && rep.ae_ok;
    return rep;
}

namespace {

double zmp_gap_on(const ScalarField& u, const ScalarField& v, const GridSpec& g,
                  const RegionIndex& reg) {
    double all = kNegInf, bd = kNegInf;
    for (auto k : reg.nodes) {
        const double s = u.values[k] + v.values[k];
        all = std::max(all, s);
        if (on_region_boundary(g, reg, k)) bd = std::max(bd, s);
    }
    return all - bd;
}

}  // namespace

ComparisonReport comparison_run(const ScalarField& u, const Subequation& F, const ScalarField& v,
                                const Box& omega, double tol) {
    if (!u.spec.same_grid(v.spec)) throw Error("comparison fields live on different grids");
    ComparisonReport rep;
    rep.verified_u = check_subharmonic_ae(u, F, omega, tol);
    rep.verified_v = check_subharmonic_ae(v, dual(F), omega, tol);
    rep.hypotheses_met = rep.verified_u.pass && rep.verified_v.pass;

    const RegionIndex reg = index_region(u.spec, omega);
    rep.zmp_gap = zmp_gap_on(u, v, u.spec, reg);
    rep.zmp_ok = rep.zmp_gap <= tol;

    if (F.constant_coefficients && (F.pure_second_order || F.gradient_free)) {
        ScalarField sum(u.spec, u.values);
        for (std::size_t k = 0; k < sum.values.size(); ++k) sum.values[k] += v.values[k];
        if (F.pure_second_order)
            rep.sum_subaffine = is_subaffine(sum, omega, false, tol);
        else
            rep.sum_subaffine_plus = is_subaffine(sum, omega, true, tol);
    }

    rep.pass = rep.hypotheses_met && rep.zmp_ok;
    return rep;
}

StrictComparisonReport strict_comparison_run(const ScalarField& u, const Subequation& G,
                                             const Subequation& F, const ScalarField& v,
                                             const Box& omega, double tol, StrictRoute route,
                                             const std::vector<double>& eps_ladder,
                                             const JetSampler& sampler) {
    if (!u.spec.same_grid(v.spec)) throw Error("comparison fields live on different grids");
    StrictComparisonReport rep;

    // Sampled strictness gap: inf of the F margin over G members.
    rep.strictness_gap = std::numeric_limits<double>::infinity();
    for (const Vec& x : sampler.sample_points(G)) {
        for (const Jet2& J : sampler.sample_members(G, x, std::max(16, sampler.count / 4)))
            rep.strictness_gap = std::min(rep.strictness_gap, F.margin_at(x, J));
    }
    if (!(rep.strictness_gap > 0.0)) throw Error("G not strongly strict in F");

    const Subequation Fd = dual(F);
    bool verified = true;
    if (route == StrictRoute::QuasiConvex) {
        verified = check_subharmonic_ae(u, G, omega, tol).pass &&
                   check_subharmonic_ae(v, Fd, omega, tol).pass;
    } else {
        for (double eps : eps_ladder) {
            StrictLadderRung rung;
            rung.eps = eps;
            const SupConvResult us = sup_convolve(u, eps);
            const SupConvResult vs = sup_convolve(v, eps);
            rung.delta = std::max(us.delta, vs.delta);
            const Box shrunk = omega.shrunk(rung.delta);
            rung.u_ok = check_subharmonic_ae(us.field, G, shrunk, tol).pass;
            rung.v_ok = check_subharmonic_ae(vs.field, Fd, shrunk, tol).pass;
            verified = verified && rung.u_ok && rung.v_ok;
            rep.ladder.push_back(rung);
        }
    }
    rep.hypotheses_met = verified;

    const RegionIndex reg = index_region(u.spec, omega);
    rep.zmp_gap = zmp_gap_on(u, v, u.spec, reg);
    rep.zmp_ok = rep.zmp_gap <= tol;

    if (!rep.zmp_ok) {
        // Locate the interior maximum and decompose the flat contact jet.
        std::size_t argmax = reg.nodes.front();
        double best = kNegInf;
        for (auto k : reg.nodes) {
            if (on_region_boundary(u.spec, reg, k)) continue;
            const double s = u.values[k] + v.values[k];
            if (s > best) {
                best = s;
                argmax = k;
            }
        }
        rep.violation_node = argmax;
        double reach = std::numeric_limits<double>::infinity();
        const Vec xp = u.spec.node(argmax);
        for (int i = 0; i < u.spec.dim(); ++i) {
            const auto ai = static_cast<size_t>(i);
            reach = std::min(reach, xp[ai] - omega.lo[ai]);
            reach = std::min(reach, omega.hi[ai] - xp[ai]);
        }
        const double scale_w = 1.0 + u.max_abs_finite() + v.max_abs_finite();
        const double wtol = std::max(tol, 10.0 * u.spec.max_spacing() * scale_w);
        try {
            rep.violation_witness = summand_decompose(u, v, argmax, vec_zero(),
                                                      SymMat(u.spec.dim()), reach, wtol);
        } catch (const Error&) {
            rep.violation_witness = std::nullopt;
        }
    }

    rep.pass = rep.hypotheses_met && rep.zmp_ok;
    return rep;
}

AdditionReport subharmonic_addition_check(const Subequation& F, const Subequation& G,
                                          const Subequation& H, const ScalarField& u,
                                          const ScalarField& v, const Box& region,
                                          const JetSampler& sampler, double tol) {
    if (!u.spec.same_grid(v.spec)) throw Error("addition fields live on different grids");
    AdditionReport rep;

    rep.jet_addition_ok = true;
    for (const Vec& x : sampler.sample_points(F)) {
        const auto fm = sampler.sample_members(F, x, std::max(16, sampler.count / 8));
        const auto gm = sampler.sample_members(G, x, std::max(16, sampler.count / 8));
        for (const Jet2& J : fm)
            for (const Jet2& Jp : gm)
                if (H.margin_at(x, J + Jp) < -tol) rep.jet_addition_ok = false;
    }

    rep.u_in_F = check_subharmonic_ae(u, F, region, tol);
    rep.v_in_G = check_subharmonic_ae(v, G, region, tol);
    ScalarField sum(u.spec, u.values);
    for (std::size_t k = 0; k < sum.values.size(); ++k) sum.values[k] += v.values[k];
    rep.sum_in_H = check_subharmonic_ae(sum, H, region, tol);

    rep.pass = rep.u_in_F.pass && rep.v_in_G.pass &&
               (!rep.jet_addition_ok || rep.sum_in_H.pass);
    return rep;
}

namespace {

SymMat sym_square(const SymMat& A) {
    const int n = A.dim();
    SymMat S(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += A.at(i, k) * A.at(k, j);
            S.set(i, j, s);
        }
    return S;
}

TransportReport transport_with_bump(const ScalarField& u, const SupConvResult& sc,
                                    std::size_t node, double A_scalar, double radius, double tol) {
    const Jet2 j = numeric_jet(sc.field, node);
    const double cstar = std::max(0.0, -A_scalar);
    const std::vector<double> bumps = {0.0,        tol,         cstar,
                                       cstar + tol, cstar + 10 * tol, cstar + 1.0};
    for (double c : bumps) {
        SymMat A(1);
        A.set(0, 0, A_scalar + c);
        try {
            return magic_transport_check(u, sc, node, j.p, A, radius, tol);
        } catch (const Error&) {
            continue;
        }
    }
    throw Error("[stage transport] no validated factor contact jet");
}

}  // namespace

OnSumsReport on_sums_witness(const ScalarField& u, const ScalarField& v, const SymMat& A,
                             double eps, double tol) {
    if (u.spec.dim() != 1 || v.spec.dim() != 1)
        throw Error("on-sums pipeline takes 1D factors");
    if (A.dim() != 2) throw Error("on-sums jet matrix must be 2x2");
    if (eps <= 0.0) throw Error("on-sums requires eps > 0");
    if (u.has_neg_inf() || v.has_neg_inf())
        throw HypothesisError("[stage contact] on-sums factors must be bounded");

    // Product grid w(x, y) = u(x) + v(y).
    const GridSpec& gu = u.spec;
    const GridSpec& gv = v.spec;
    Vec lo = vec_zero(), hi = vec_zero();
    lo[0] = gu.box().lo[0];
    hi[0] = gu.box().hi[0];
    lo[1] = gv.box().lo[0];
    hi[1] = gv.box().hi[0];
    const GridSpec gw(Box(2, lo, hi), {gu.shape()[0], gv.shape()[0], 1});

    const std::size_t origin = gw.nearest(vec_zero());
    const IVec om = gw.multi(origin);
    const std::size_t ox = static_cast<std::size_t>(om[0]);
    const std::size_t oy = static_cast<std::size_t>(om[1]);
    const double norm_tol = std::max(tol, 1e-9);
    if (std::fabs(u.values[ox]) > norm_tol || std::fabs(v.values[oy]) > norm_tol)
        throw HypothesisError("[stage contact] on-sums normalization requires u(0) = v(0) = 0");

    auto product_field = [&](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> w(gw.size());
        for (std::size_t k = 0; k < gw.size(); ++k) {
            const IVec m = gw.multi(k);
            w[k] = a[static_cast<std::size_t>(m[0])] + b[static_cast<std::size_t>(m[1])];
        }
        return ScalarField(gw, std::move(w));
    };
    const ScalarField w = product_field(u.values, v.values);

    // Stage: validate (0, A) as a global upper contact jet for w at 0.
    {
        const Vec xw = gw.node(origin);
        const double w0 = w.values[origin];
        for (std::size_t k = 0; k < gw.size(); ++k) {
            const Vec d = sub(gw.node(k), xw);
            if (w.values[k] > w0 + quad_form(A, d) + tol)
                throw Error("[stage contact] (0, A) is not an upper contact jet for the sum");
        }
    }

    OnSumsReport rep;
    rep.lambda = 1.0 / eps + spectral_norm(A);
    const double eps_sc = 1.0 / rep.lambda;

    const SupConvResult us = sup_convolve(u, eps_sc);
    const SupConvResult vs = sup_convolve(v, eps_sc);

    const SymMat A_target = A + sym_square(A).scaled(eps);

    // Stage: summand witness on the product sup-convolution.
    const ScalarField U = product_field(us.field.values, std::vector<double>(gv.size(), 0.0));
    const ScalarField V = product_field(std::vector<double>(gu.size(), 0.0), vs.field.values);
    SummandWitness witness;
    try {
        witness = summand_decompose(U, V, origin, vec_zero(), A_target, gw.box().diameter(), tol);
    } catch (const Error& e) {
        throw Error(std::string("[stage summand] ") + e.what());
    }
    rep.witness_node = witness.node;
    rep.A1 = SymMat(1);
    rep.A1.set(0, 0, witness.B.at(0, 0));
    rep.A2 = SymMat(1);
    rep.A2.set(0, 0, witness.C.at(1, 1));

    // Stage: transport the factor contacts back to u and v.
    const IVec wm = gw.multi(witness.node);
    const double radius_u = 0.45 * (gu.box().hi[0] - gu.box().lo[0]);
    const double radius_v = 0.45 * (gv.box().hi[0] - gv.box().lo[0]);
    IVec mu = {wm[0], 0, 0}, mv = {wm[1], 0, 0};
    rep.contact_u = transport_with_bump(u, us, gu.flat(mu), rep.A1.at(0, 0), radius_u, tol);
    rep.contact_v = transport_with_bump(v, vs, gv.flat(mv), rep.A2.at(0, 0), radius_v, tol);

    // Sandwich: -(1/eps + |A| + tol) I <= diag(A1, A2) <= A + eps A^2 + tol I.
    SymMat block(2);
    block.set(0, 0, rep.A1.at(0, 0));
    block.set(1, 1, rep.A2.at(0, 0));
    const bool upper = loewner_geq(A_target + SymMat::identity(2, tol), block, 0.0);
    const bool lower = loewner_geq(block, SymMat::identity(2, -(1.0 / eps + spectral_norm(A) + tol)), 0.0);
    rep.sandwich_ok = upper && lower;
    rep.pass = rep.sandwich_ok && rep.contact_u.contact_ok && rep.contact_v.contact_ok;
    return rep;
}

}  // namespace qcpot
