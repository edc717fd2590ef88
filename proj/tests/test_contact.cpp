#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "qcpot/contact.hpp"
#include "qcpot/convex.hpp"

using namespace qcpot;

namespace {

bool contact_invariant_holds(const ScalarField& u, const ContactSet& cs, double tol) {
    const GridSpec& g = u.spec;
    const auto region = region_nodes(g, cs.region);
    for (std::size_t i = 0; i < cs.nodes.size(); ++i) {
        const std::size_t x = cs.nodes[i];
        const Vec xp = g.node(x);
        for (auto y : region) {
            const Vec d = sub(g.node(y), xp);
            if (u.values[y] >
                u.values[x] + dot(cs.gradients[i], d, g.dim()) + quad_form(cs.type_A, d) + tol)
                return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("every node is a type-I contact point of the zero field") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {11, 11});
    const ScalarField u = build_field(g, [](const Vec&) { return 0.0; });
    const ContactSet cs = contact_set(u, SymMat::identity(2), g.box(), 1e-9);
    CHECK(cs.nodes.size() == g.size());
    for (std::size_t i = 0; i < cs.nodes.size(); ++i) {
        // interior gradients are pinned near Du = 0; at region-boundary
        // nodes the witness is one-sided and carries O(h) slack
        const double bound = g.interior(cs.nodes[i]) ? 1e-6 : g.max_spacing();
        CHECK(norm(cs.gradients[i], 2) <= bound + 1e-9);
    }
    CHECK(contact_invariant_holds(u, cs, 1e-8));
}

TEST_CASE("flat contact points of |x| are exactly the endpoints") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {21});
    const ScalarField u = build_field(g, [](const Vec& x) { return std::fabs(x[0]); });
    const ContactSet cs = contact_set(u, SymMat(1), g.box(), 1e-9);
    REQUIRE(cs.nodes.size() == 2);
    CHECK(cs.nodes.front() == 0);
    CHECK(cs.nodes.back() == g.size() - 1);
    CHECK(contact_invariant_holds(u, cs, 1e-8));
}

TEST_CASE("every node is a flat contact point of -|x|") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {21});
    const ScalarField u = build_field(g, [](const Vec& x) { return -std::fabs(x[0]); });
    const ContactSet cs = contact_set(u, SymMat(1), g.box(), 1e-9);
    CHECK(cs.nodes.size() == g.size());
    CHECK(contact_invariant_holds(u, cs, 1e-8));
}

TEST_CASE("contact reduction to flat type is exact (1D and 2D)") {
    Rng rng(3);
    {
        const GridSpec g = GridSpec::make({-1.0}, {1.0}, {31});
        const ScalarField u = fixtures::random_usc_field(rng, g);
        const SymMat A = SymMat::diag({0.8});
        const Vec x0 = g.box().center();
        ScalarField h(g, u.values);
        for (std::size_t k = 0; k < g.size(); ++k)
            h.values[k] -= quad_form(A, sub(g.node(k), x0));
        const ContactSet ca = contact_set(u, A, g.box(), 1e-8);
        const ContactSet cf = contact_set(h, SymMat(1), g.box(), 1e-8);
        CHECK(ca.mask.bits == cf.mask.bits);
    }
    {
        const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {13, 13});
        const ScalarField u = fixtures::random_usc_field(rng, g);
        SymMat A(2);
        A.set(0, 0, 0.9);
        A.set(1, 1, 0.5);
        A.set(0, 1, 0.2);
        const Vec x0 = g.box().center();
        ScalarField h(g, u.values);
        for (std::size_t k = 0; k < g.size(); ++k)
            h.values[k] -= quad_form(A, sub(g.node(k), x0));
        const ContactSet ca = contact_set(u, A, g.box(), 1e-8);
        const ContactSet cf = contact_set(h, SymMat(2), g.box(), 1e-8);
        CHECK(ca.mask.bits == cf.mask.bits);
    }
}

TEST_CASE("1D interval path agrees with the LP on the same inputs") {
    // anchor: embed the 1D field on a 2D grid constant in y; contact sets on
    // a line region must coincide
    Rng rng(8);
    const GridSpec g1 = GridSpec::make({-1.0}, {1.0}, {17});
    const ScalarField u1 = fixtures::random_usc_field(rng, g1);
    const SymMat A1 = SymMat::diag({0.7});
    const ContactSet c1 = contact_set(u1, A1, g1.box(), 1e-8);

    const GridSpec g2 = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {17, 3});
    const ScalarField u2 = build_field(g2, [&](const Vec& x) {
        return u1.values[g1.nearest(vec_of({x[0]}))];
    });
    SymMat A2(2);
    A2.set(0, 0, 0.7);
    const ContactSet c2 = contact_set(u2, A2, g2.box(), 1e-8);
    // a 1D flat-contact node must be flagged in the 2D embedding (the extra
    // axis enters the inequality only through A2 with zero y-block)
    for (std::size_t i = 0; i < g1.size(); ++i) {
        const bool flagged_1d = c1.mask.bits[i] != 0;
        const std::size_t mid = g2.flat({static_cast<int>(i), 1, 0});
        CHECK(flagged_1d == (c2.mask.bits[mid] != 0));
    }
}

TEST_CASE("gradients at contact points of quasi-convex fields are bracketed by one-sided slopes") {
    Rng rng(19);
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {41});
    const double h = g.spacing()[0];
    const ScalarField u = fixtures::random_convex_field(rng, g);
    const double lam = quasiconvex_index(u);
    const ContactSet cs = contact_set(u, SymMat::identity(1, 4.0), g.box(), 1e-9);
    REQUIRE(!cs.nodes.empty());
    for (std::size_t i = 0; i < cs.nodes.size(); ++i) {
        const std::size_t k = cs.nodes[i];
        if (!g.interior(k)) continue;
        const double bwd = (u.values[k] - u.values[k - 1]) / h;
        const double fwd = (u.values[k + 1] - u.values[k]) / h;
        const double p = cs.gradients[i][0];
        const double slack = 2.0 * (lam + 4.0) * h;
        CHECK(p >= bwd - slack);
        CHECK(p <= fwd + slack);
    }
}

TEST_CASE("vertex map of a mild quadratic contracts by 1 - rc") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {41});
    const double c = 0.6, r = 1.0;
    const ScalarField u = build_field(g, [&](const Vec& x) { return 0.5 * c * x[0] * x[0]; });
    const ContactSet cs = contact_set(u, SymMat::identity(1, 1.0 / r), g.box(), 1e-9);
    CHECK(cs.nodes.size() == g.size());  // curvature c < 1/r everywhere
    const auto rep = vertex_map_check(u, r, cs);
    CHECK(rep.pass);
    CHECK(rep.max_expansion <= 1.0 - r * c + 0.1);
}

TEST_CASE("vertex map of the zero field is the identity") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {9, 9});
    const ScalarField u = build_field(g, [](const Vec&) { return 0.0; });
    const ContactSet cs = contact_set(u, SymMat::identity(2, 2.0), g.box(), 1e-10);
    const auto rep = vertex_map_check(u, 0.5, cs);
    CHECK(rep.max_expansion == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(rep.pass);
}

TEST_CASE("vertex map expansion on random convex fields stays within the grid bound") {
    Rng rng(23);
    for (int t = 0; t < 5; ++t) {
        const GridSpec g = GridSpec::make({-1.0}, {1.0}, {41});
        const ScalarField u = fixtures::random_convex_field(rng, g);
        const double r = 0.35;
        const ContactSet cs = contact_set(u, SymMat::identity(1, 1.0 / r), g.box(), 1e-9);
        if (cs.nodes.size() < 2) continue;
        const auto rep = vertex_map_check(u, r, cs);
        CHECK(rep.pass);
    }
}

TEST_CASE("vertex map nonexpansiveness needs convexity") {
    // -|x| is concave: the two branches map to opposite sides of the kink
    // and cross-branch pairs expand
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {41});
    const ScalarField u = build_field(g, [](const Vec& x) { return -std::fabs(x[0]); });
    const ContactSet cs = contact_set(u, SymMat::identity(1, 1.0), g.box(), 1e-9);
    CHECK(cs.nodes.size() == g.size());
    const auto rep = vertex_map_check(u, 1.0, cs);
    CHECK(rep.max_expansion > 1.5);
}

TEST_CASE("vertex map type mismatch is rejected") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {11});
    const ScalarField u = build_field(g, [](const Vec&) { return 0.0; });
    const ContactSet cs = contact_set(u, SymMat::identity(1, 2.0), g.box(), 1e-9);
    CHECK_THROWS_AS(vertex_map_check(u, 1.0, cs), Error);
}

TEST_CASE("slod_K of a quadratic is its largest eigenvalue") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const ScalarField u = build_field(g, [](const Vec& x) { return 0.75 * x[0] * x[0]; });
    // eps multiples of h = 0.02 with exact shell nodes: K is exact
    const double K = slod_K(u, g.nearest(vec_zero()), {0.2, 0.3}, 10.0 * g.spacing()[0]);
    CHECK(K == doctest::Approx(1.5).epsilon(1e-9));

    const GridSpec g2 = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {51, 51});
    SymMat A(2);
    A.set(0, 0, 1.5);
    A.set(1, 1, 0.5);
    const ScalarField u2 = build_field(g2, [&](const Vec& x) { return quad_form(A, x); });
    const double h2 = g2.max_spacing();
    const double K2 = slod_K(u2, g2.nearest(vec_zero()), {0.25, 0.35}, 10.0 * h2);
    CHECK(std::fabs(K2 - 1.5) <= 1.5 * (3.0 * h2 / 0.25 + h2));
}

TEST_CASE("slod_K is +infinity at kinks") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const ScalarField u = build_field(g, [](const Vec& x) { return std::fabs(x[0]); });
    CHECK(std::isinf(slod_K(u, g.nearest(vec_zero()), {0.2}, 0.1)));
}

TEST_CASE("slod_K of a quartic at its flat minimum is nearly zero") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const ScalarField u = build_field(g, [](const Vec& x) { return std::pow(x[0], 4.0); });
    // one-sided slopes at 0 differ by 2h^3; the tolerance must absorb that
    const double K = slod_K(u, g.nearest(vec_zero()), {0.2, 0.3}, 1e-4);
    CHECK(K >= 0.0);
    CHECK(K <= 2.0 * 0.3 * 0.3 + 1e-9);
}

TEST_CASE("slod_K error paths") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {11});
    const ScalarField u = build_field(g, [](const Vec& x) { return x[0] * x[0]; });
    CHECK_THROWS_AS(slod_K(u, g.nearest(vec_zero()), {2.0}, 1e-6), Error);
    CHECK_THROWS_WITH_AS(slod_K(u, 0, {0.2}, 1e-6), "non-interior node", Error);
}

TEST_CASE("slod_K upper bound at paraboloidal contact points") {
    Rng rng(29);
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const double h = g.spacing()[0];
    const double r = 1.0;
    const ScalarField u = build_field(g, [](const Vec& x) { return 0.475 * x[0] * x[0]; });
    const ContactSet cs = contact_set(u, SymMat::identity(1, 1.0 / r), g.box(), 1e-9);
    for (std::size_t i = 0; i < cs.nodes.size(); ++i) {
        const std::size_t k = cs.nodes[i];
        const Vec x = g.node(k);
        if (std::min(x[0] + 1.0, 1.0 - x[0]) < 0.35) continue;
        const double K = slod_K(u, k, {0.2, 0.3}, 10.0 * h);
        CHECK(K <= 1.0 / r + 10.0 * h);
    }
}

TEST_CASE("largest eigenvalue lower bounds propagate to every node") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {41, 41});
    const double h = g.max_spacing();
    const ScalarField u = build_field(g, [](const Vec& x) {
        return 0.5 * (x[0] * x[0] + 0.8 * x[1] * x[1]) + 0.25 * std::fabs(x[0]);
    });
    std::vector<double> ks;
    std::vector<std::size_t> eligible;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec x = g.node(k);
        bool inside = true;
        for (int i = 0; i < 2; ++i) {
            const auto ai = static_cast<size_t>(i);
            if (std::min(x[ai] - g.box().lo[ai], g.box().hi[ai] - x[ai]) < 0.3) inside = false;
        }
        if (inside) eligible.push_back(k);
    }
    for (auto k : eligible) ks.push_back(slod_K(u, k, {0.2, 0.25}, 10.0 * h));
    std::vector<double> sorted(ks);
    std::sort(sorted.begin(), sorted.end());
    const double M = sorted[sorted.size() / 100];  // 99% of nodes sit at or above M
    for (double K : ks) CHECK(K >= M - 10.0 * h * (1.0 + M));
}

TEST_CASE("density of paraboloid contact sets obeys the lower bound") {
    const double R = 1.0;
    {
        const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
        const ScalarField u =
            build_field(g, [&](const Vec& x) { return norm2(x, 1) / (4.0 * R); });
        for (double r : {R, R / 4.0}) {
            const auto rows = density_experiment(u, r, R, {0.5, 0.25}, 5e-5);
            for (const auto& row : rows) {
                CHECK(row.pass);
                CHECK(row.ratio == doctest::Approx(1.0));
            }
        }
    }
    {
        const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {41, 41});
        const ScalarField u =
            build_field(g, [&](const Vec& x) { return norm2(x, 2) / (4.0 * R); });
        const auto rows = density_experiment(u, R / 4.0, R, {0.5}, 3e-4);
        for (const auto& row : rows) {
            CHECK(row.pass);
            CHECK(row.ratio >= std::pow(0.5, 2) - row.slack);
        }
    }
}

TEST_CASE("glued convex field has contact density strictly below one") {
    const double R = 1.0, c = 0.2, d = 0.021;
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const ScalarField u = build_field(g, [&](const Vec& x) {
        return std::max(x[0] * x[0] / (4.0 * R), c * std::fabs(x[0]) - d);
    });
    const auto rows = density_experiment(u, R, R, {0.5, 0.25}, 5e-5);
    for (const auto& row : rows) {
        CHECK(row.pass);
        CHECK(row.ratio < 1.0);
        CHECK(row.ratio > row.bound);
    }
}

TEST_CASE("density hypotheses are validated") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {41});
    const ScalarField bad = build_field(g, [](const Vec& x) { return x[0] * x[0]; });
    // x^2 exceeds |x|^2/(2R) for R = 1
    CHECK_THROWS_WITH_AS(density_experiment(bad, 1.0, 1.0, {0.5}, 1e-6),
                         "density hypotheses violated", HypothesisError);
}

TEST_CASE("Jensen ladder: strict maxima spread contact measure at every rung") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {21, 21});
    const ScalarField w = build_field(g, [](const Vec& x) { return -norm2(x, 2); });
    StrictJetWitness witness;
    witness.x = g.nearest(vec_zero());
    witness.A = SymMat(2);
    witness.eps_strict = 0.5;
    witness.radius = 0.8;
    const auto rep = jensen_slodkowski_verify(w, witness, 0.8, 1e-9);
    CHECK(rep.found);
    CHECK(rep.all_positive);
    CHECK(rep.rows.size() >= 1);
    for (const auto& row : rep.rows) CHECK(row.measure >= g.cell_volume());
}

TEST_CASE("Jensen ladder on the quasi-convex kink crater") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const ScalarField w =
        build_field(g, [](const Vec& x) { return 0.5 * x[0] * x[0] - std::fabs(x[0]); });
    StrictJetWitness witness;
    witness.x = g.nearest(vec_zero());
    witness.A = SymMat(1);
    witness.eps_strict = 0.4;
    witness.radius = 0.5;
    const auto rep = jensen_slodkowski_verify(w, witness, 0.5, 1e-9);
    CHECK(rep.found);
    CHECK(rep.all_positive);
}

TEST_CASE("Jensen ladder for a paraboloidal strict jet on a convex field") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const ScalarField w = build_field(g, [](const Vec& x) { return 0.25 * x[0] * x[0]; });
    StrictJetWitness witness;
    witness.x = g.nearest(vec_zero());
    witness.A = SymMat::identity(1, 1.0);  // lambda I with lambda = 1 > 1/2 = curvature
    witness.eps_strict = 0.2;
    witness.radius = 0.5;
    const auto rep = jensen_slodkowski_verify(w, witness, 0.5, 1e-9);
    CHECK(rep.all_positive);
}

TEST_CASE("invalid strict witnesses are rejected") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {41});
    const ScalarField w = build_field(g, [](const Vec& x) { return x[0] * x[0]; });
    StrictJetWitness witness;  // (0,0) is not an upper jet at the minimum of x^2
    witness.x = g.nearest(vec_zero());
    witness.A = SymMat(1);
    witness.eps_strict = 0.1;
    witness.radius = 0.5;
    CHECK_THROWS_AS(jensen_slodkowski_verify(w, witness, 0.5, 1e-9), HypothesisError);
}

TEST_CASE("Alexandrov estimate on the concave bump") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {41, 41});
    const ScalarField u = build_field(g, [](const Vec& x) { return 1.0 - norm2(x, 2); });
    const auto rep = alexandrov_bound(u, g.box(), 10.0 * g.max_spacing());
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.boundary_sup == 0.0);
    CHECK(rep.integral > 1.0);  // |det(-2I)| = 4 over most of the box
    CHECK(rep.mp_ok);
    CHECK(rep.area_ok);
    CHECK_FALSE(rep.coarse_violation);
}

TEST_CASE("Alexandrov estimate is trivial for nonpositive fields") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {21, 21});
    const ScalarField u = build_field(g, [](const Vec& x) { return -1.0 - x[0]; });
    const auto rep = alexandrov_bound(u, g.box(), 1e-6);
    CHECK(rep.lhs <= 0.0);
    CHECK(rep.mp_ok);
}

TEST_CASE("Alexandrov estimate is equality-tight for affine fields") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {21, 21});
    const ScalarField u = build_field(g, [](const Vec& x) { return 0.5 + 0.3 * x[0] - 0.2 * x[1]; });
    const auto rep = alexandrov_bound(u, g.box(), 10.0 * g.max_spacing());
    CHECK(rep.integral <= 1e-7);
    CHECK(rep.lhs == doctest::Approx(rep.boundary_sup));
    CHECK(rep.mp_ok);
    CHECK(rep.area_ok);
}

TEST_CASE("Alexandrov estimates on random concave quadratics") {
    Rng rng(31);
    for (int t = 0; t < 3; ++t) {
        const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {31, 31});
        const ScalarField u = fixtures::random_concave_quadratic(rng, g);
        const auto rep = alexandrov_bound(u, g.box(), 10.0 * g.max_spacing());
        CHECK(rep.mp_ok);
        CHECK(rep.area_ok);
    }
}

TEST_CASE("summand witness for the split paraboloid") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {21, 21});
    const ScalarField u = build_field(g, [](const Vec& x) { return 0.25 * norm2(x, 2); });
    const std::size_t x = g.nearest(vec_of({0.3, -0.2}));
    const Vec p = g.node(x);
    const auto w = summand_decompose(u, u, x, p, SymMat::identity(2), 0.5, 1e-6);
    CHECK(w.node == x);
    CHECK(w.B.at(0, 0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(w.C.at(1, 1) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(loewner_geq(SymMat::identity(2, 1.0 + 1e-6), w.B + w.C, 0.0));
}

TEST_CASE("summand witness at a kink of the sum") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const ScalarField u = build_field(g, [](const Vec& x) { return 0.5 * x[0] * x[0]; });
    const ScalarField v = build_field(g, [](const Vec& x) { return -std::fabs(x[0]) + 0.5; });
    const std::size_t x = g.nearest(vec_zero());
    const auto w = summand_decompose(u, v, x, vec_zero(), SymMat::identity(1, 1.0), 0.5, 0.05);
    CHECK(loewner_geq(SymMat::identity(1, 1.0 + 0.05), w.B + w.C, 0.0));
}

TEST_CASE("summand slack absorbs added positive parts") {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {21, 21});
    const ScalarField u = build_field(g, [](const Vec& x) { return 0.5 * norm2(x, 2); });
    const ScalarField v = build_field(g, [](const Vec&) { return 0.0; });
    const std::size_t x = g.nearest(vec_of({0.1, 0.1}));
    const auto w =
        summand_decompose(u, v, x, g.node(x), SymMat::identity(2, 2.0), 0.5, 1e-6);
    CHECK(w.node == x);
    CHECK(loewner_geq(SymMat::identity(2, 2.0 + 1e-6), w.B + w.C, 0.0));
}

TEST_CASE("summand rejects jets that are not upper contact jets") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {41});
    const ScalarField u = build_field(g, [](const Vec& x) { return x[0] * x[0]; });
    const ScalarField v = build_field(g, [](const Vec&) { return 0.0; });
    CHECK_THROWS_AS(
        summand_decompose(u, v, g.nearest(vec_zero()), vec_zero(), SymMat(1), 0.5, 1e-9), Error);
}

TEST_CASE("partial upper semicontinuity at validated jets") {
    Rng rng(37);
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {81});
    const ScalarField u = fixtures::random_quasiconvex_field(rng, g);
    const double h = g.spacing()[0];
    // validate (Du, D2u + s I) as an upper contact jet at a smooth node
    const std::size_t x = g.nearest(vec_of({0.2}));
    const Jet2 jet = numeric_jet(u, x);
    const double bump = 2.0 * quasiconvex_index(u) + 1.0;
    const SymMat A = jet.A + SymMat::identity(1, bump);
    // among the nearest interior nodes some Hessian sits below A + tol
    bool found = false;
    for (std::size_t k : {x - 2, x - 1, x + 1, x + 2}) {
        const SymMat H = numeric_jet(u, k).A;
        if (loewner_geq(A + SymMat::identity(1, 10.0 * h * (1.0 + bump)), H, 0.0)) found = true;
    }
    CHECK(found);
}

TEST_CASE("per-vertex contact sets are nonempty and land in the delta ball") {
    Rng rng(41);
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {81});
    const ScalarField u = fixtures::random_usc_field(rng, g);
    const double r = 0.2;
    double osc = 0.0;
    {
        double lo = u.values[0], hi = u.values[0];
        for (double v : u.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        osc = hi - lo;
    }
    const double delta = std::sqrt(2.0 * r * osc);
    for (double vx : {-0.3, 0.0, 0.4}) {
        if (std::fabs(vx) + delta > 1.0) continue;
        const Vec v = vec_of({vx});
        // argmax of u - |., v|^2 / (2r)
        double best = kNegInf;
        std::size_t arg = 0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double val = u.values[k] - norm2(sub(g.node(k), v), 1) / (2.0 * r);
            if (val > best) {
                best = val;
                arg = k;
            }
        }
        CHECK(dist(g.node(arg), v, 1) <= delta + g.spacing()[0]);
    }
}

TEST_CASE("density of generalized-eigenvalue sublevel sets near a kinked minimum") {
    // K jumps to +infinity on the kink; off it, K sits near 2a + c so the
    // sublevel set {K < k} fills the ball up to the kink node
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const double h = g.spacing()[0];
    const double a = 0.3, cone = 0.4;
    const ScalarField u =
        build_field(g, [&](const Vec& x) { return a * x[0] * x[0] + cone * std::fabs(x[0]); });
    const std::size_t xstar = g.nearest(vec_of({0.3}));
    const double kstar = slod_K(u, xstar, {0.2, 0.3}, 10.0 * h);
    REQUIRE(std::isfinite(kstar));
    const double k = 2.0 * kstar;
    for (double rho : {0.4, 0.2}) {
        const auto ball = ball_nodes(g, g.node(xstar), rho);
        std::size_t below = 0;
        for (auto node : ball) {
            double K = std::numeric_limits<double>::infinity();
            try {
                K = slod_K(u, node, {0.2, 0.3}, 10.0 * h);
            } catch (const Error&) {
                continue;  // too close to the boundary for the shells
            }
            if (K < k) ++below;
        }
        const double ratio = static_cast<double>(below) / static_cast<double>(ball.size());
        const double bound = (k - kstar) / (2.0 * k);
        CHECK(ratio >= bound - 5.0 * h / rho);
    }
}

TEST_CASE("contact sets reject -inf regions") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {11});
    ScalarField u = build_field(g, [](const Vec& x) { return x[0]; });
    u.values[5] = kNegInf;
    CHECK_THROWS_AS(contact_set(u, SymMat(1), g.box(), 1e-9), Error);
}

TEST_CASE("3D contact set of a concave field covers the grid") {
    const GridSpec g = GridSpec::make({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {7, 7, 7});
    const ScalarField u = build_field(g, [](const Vec& x) { return -0.5 * norm2(x, 3); });
    const ContactSet cs = contact_set(u, SymMat(3), g.box(), 1e-8);
    CHECK(cs.nodes.size() == g.size());
    CHECK(contact_invariant_holds(u, cs, 1e-7));

    // strictly convex fields have no interior flat contact at all
    const ScalarField v = build_field(g, [](const Vec& x) { return 0.5 * norm2(x, 3); });
    const ContactSet cv = contact_set(v, SymMat(3), g.box(), 1e-10);
    for (auto k : cv.nodes) CHECK_FALSE(g.interior(k));
}
