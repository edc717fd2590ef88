#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "qcpot/convex.hpp"
#include "qcpot/regularize.hpp"

using namespace qcpot;

namespace {

// Reference sup-convolution: unwindowed scan over every node.
SupConvResult brute_force_supconv(const ScalarField& u, double eps) {
    const GridSpec& g = u.spec;
    SupConvResult out;
    out.eps = eps;
    out.delta = 2.0 * std::sqrt(eps * u.max_abs_finite());
    out.argmax_map.assign(g.size(), 0);
    std::vector<double> vals(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec x = g.node(k);
        double best = kNegInf;
        std::size_t arg = 0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (u.values[j] == kNegInf) continue;
            const double d = dist(g.node(j), x, g.dim());
            const double v = u.values[j] - d * d / (2.0 * eps);
            if (v > best) {
                best = v;
                arg = j;
            }
        }
        vals[k] = best;
        out.argmax_map[k] = arg;
    }
    out.field = ScalarField(g, std::move(vals));
    return out;
}

}  // namespace

TEST_CASE("sup-convolution of a constant is the constant with identity argmax") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {21});
    const ScalarField u = build_field(g, [](const Vec&) { return 3.25; });
    const auto sc = sup_convolve(u, 0.5);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(sc.field.values[k] == 3.25);
        CHECK(sc.argmax_map[k] == k);
    }
}

TEST_CASE("sup-convolution of -|x| matches the closed form") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {201});
    const double h = g.spacing()[0];
    const ScalarField u = build_field(g, [](const Vec& x) { return -std::fabs(x[0]); });
    for (double eps : {0.2, 0.1}) {
        const auto sc = sup_convolve(u, eps);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double x = g.node(k)[0];
            const double exact = std::fabs(x) <= eps ? -x * x / (2.0 * eps)
                                                     : -std::fabs(x) + eps / 2.0;
            CHECK(std::fabs(sc.field.values[k] - exact) <= h * h / (2.0 * eps) + 1e-12);
        }
    }
}

TEST_CASE("sup-convolution of a concave quadratic matches the stationary-point oracle") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {201});
    const double h = g.spacing()[0];
    const double a = 1.3, eps = 0.15;
    const ScalarField u = build_field(g, [&](const Vec& x) { return -0.5 * a * x[0] * x[0]; });
    const auto sc = sup_convolve(u, eps);
    // stationary point y = x/(1 + a eps), value -a x^2 / (2 (1 + a eps))
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = g.node(k)[0];
        const double y = x / (1.0 + a * eps);
        if (std::fabs(y) > 1.0) continue;  // argmax clipped by the box
        const double exact = -a * x * x / (2.0 * (1.0 + a * eps));
        CHECK(std::fabs(sc.field.values[k] - exact) <= h * h / (2.0 * eps) + 1e-12);
        CHECK(std::fabs(g.node(sc.argmax_map[k])[0] - y) <= h);
    }
}

TEST_CASE("sup-convolution majorizes and decreases along the eps ladder") {
    Rng rng(21);
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {25, 25});
    const ScalarField u = fixtures::random_usc_field(rng, g);
    const auto s2 = sup_convolve(u, 0.2);
    const auto s1 = sup_convolve(u, 0.1);
    const auto s05 = sup_convolve(u, 0.05);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(s05.field.values[k] >= u.values[k] - 1e-12);
        CHECK(s1.field.values[k] >= s05.field.values[k] - 1e-12);
        CHECK(s2.field.values[k] >= s1.field.values[k] - 1e-12);
    }
}

TEST_CASE("dyadic eps ladder converges at continuity nodes") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const ScalarField u = build_field(g, [](const Vec& x) { return std::sin(3.0 * x[0]); });
    ScalarField last = u;
    double eps = 0.2;
    for (int t = 0; t < 6; ++t) {
        last = sup_convolve(u, eps).field;
        eps /= 2.0;
    }
    const double tol = 10.0 * g.spacing()[0];
    for (std::size_t k = 0; k < g.size(); ++k)
        CHECK(std::fabs(last.values[k] - u.values[k]) <= tol);
}

TEST_CASE("global maxima are fixpoints of the sup-convolution") {
    Rng rng(33);
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {81});
    const ScalarField u = fixtures::random_usc_field(rng, g);
    std::size_t arg = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (u.values[k] > u.values[arg]) arg = k;
    for (double eps : {0.3, 0.1, 0.02})
        CHECK(sup_convolve(u, eps).field.values[arg] == doctest::Approx(u.values[arg]));
}

TEST_CASE("sup-convolution quasi-convexity index bound") {
    Rng rng(44);
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const double h = g.spacing()[0];
    for (int t = 0; t < 5; ++t) {
        const ScalarField u = fixtures::random_usc_field(rng, g);
        for (double eps : {0.2, 0.1, 0.05}) {
            const auto sc = sup_convolve(u, eps);
            CHECK(quasiconvex_index(sc.field) <= 1.0 / eps + 10.0 * h / (eps * eps));
        }
    }
}

TEST_CASE("windowed and full-grid maximization agree exactly") {
    Rng rng(55);
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {21, 21});
    const ScalarField u = fixtures::random_usc_field(rng, g);
    for (double eps : {0.25, 0.05}) {
        const auto win = sup_convolve(u, eps);
        const auto full = brute_force_supconv(u, eps);
        for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK(win.field.values[k] == full.field.values[k]);
            CHECK(win.argmax_map[k] == full.argmax_map[k]);
        }
    }
}

TEST_CASE("-inf entries never attain the maximum") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {21});
    ScalarField u = build_field(g, [](const Vec& x) { return -x[0] * x[0]; });
    u.values[4] = kNegInf;
    const auto sc = sup_convolve(u, 0.3);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(std::isfinite(sc.field.values[k]));
        CHECK(sc.argmax_map[k] != 4);
    }
}

TEST_CASE("sup-convolution error paths") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {11});
    const ScalarField u = build_field(g, [](const Vec&) { return 0.0; });
    CHECK_THROWS_AS(sup_convolve(u, 0.0), Error);
    const ScalarField bottom = build_field(g, [](const Vec&) { return kNegInf; });
    CHECK_THROWS_AS(sup_convolve(bottom, 0.1), Error);
}

TEST_CASE("balanced sup-inf regularization is C^{1,1}") {
    // inf parameter eps/2: both one-sided Hessian bounds equal 2/eps
    // (equal parameters fail: the inf-convolution restores concave kinks)
    Rng rng(66);
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {101});
    const double h = g.spacing()[0];
    const ScalarField u = fixtures::random_usc_field(rng, g);
    const double eps = 0.2, delta = eps / 2.0;
    const ScalarField up = sup_convolve(u, eps).field;
    ScalarField neg(g, up.values);
    for (auto& v : neg.values) v = -v;
    const ScalarField down = sup_convolve(neg, delta).field;
    ScalarField w(g, down.values);
    for (auto& v : w.values) v = -v;  // inf-convolution of the sup-convolution

    const double lam = 2.0 / eps;
    const auto rep = c11_check(w, lam, 40.0 * h / (eps * eps) + 1e-9);
    CHECK(rep.qc_plus);
    CHECK(rep.qc_minus);
}

TEST_CASE("magic transport: the kink of -|x| receives the contact point") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {201});
    const double h = g.spacing()[0];
    const ScalarField u = build_field(g, [](const Vec& x) { return -std::fabs(x[0]); });
    const double eps = 0.2;
    const auto sc = sup_convolve(u, eps);

    const std::size_t x = g.nearest(vec_of({0.1}));
    const Vec p = vec_of({-0.5});  // D u^eps(0.1) = -x/eps
    SymMat A(1);
    A.set(0, 0, -1.0 / eps + 0.05);
    const double tol = 10.0 * h * h / (2.0 * eps);
    const auto rep = magic_transport_check(u, sc, x, p, A, 0.1, tol);
    CHECK(std::fabs(rep.xi_exact[0]) <= 1e-12);
    CHECK(std::fabs(g.node(rep.xi_node)[0]) <= h / 2.0);
    CHECK(rep.within_one_cell);
    CHECK(rep.contact_ok);
    CHECK(rep.value_residual <= tol);
}

TEST_CASE("magic transport: smooth concave quadratic lands on the analytic argmax") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {201});
    const double h = g.spacing()[0];
    const double a = 1.0, eps = 0.1;
    const ScalarField u = build_field(g, [&](const Vec& x) { return -0.5 * a * x[0] * x[0]; });
    const auto sc = sup_convolve(u, eps);

    const double x_val = 0.22;
    const std::size_t x = g.nearest(vec_of({x_val}));
    const Vec p = vec_of({-x_val / (1.0 + a * eps)});
    SymMat A(1);
    A.set(0, 0, -a / (1.0 + a * eps) + 0.05);
    const double tol = 10.0 * h * h / (2.0 * eps);
    const auto rep = magic_transport_check(u, sc, x, p, A, 0.4, tol);
    CHECK(rep.xi_exact[0] == doctest::Approx(x_val / (1.0 + a * eps)));
    CHECK(rep.within_one_cell);
    CHECK(rep.contact_ok);
}

TEST_CASE("magic transport: constants transport trivially") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {51});
    const ScalarField u = build_field(g, [](const Vec&) { return 1.0; });
    const auto sc = sup_convolve(u, 0.25);
    const std::size_t x = g.nearest(vec_of({0.3}));
    const auto rep =
        magic_transport_check(u, sc, x, vec_zero(), SymMat::identity(1, 2.0), 0.3, 1e-9);
    CHECK(rep.xi_node == x);
    CHECK(rep.contact_ok);
}

TEST_CASE("magic transport rejects jets that are not upper contact jets") {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {51});
    const ScalarField u = build_field(g, [](const Vec& x) { return -x[0] * x[0]; });
    const auto sc = sup_convolve(u, 0.1);
    SymMat A(1);
    A.set(0, 0, -50.0);  // far below the curvature of u^eps
    CHECK_THROWS_AS(
        magic_transport_check(u, sc, g.nearest(vec_zero()), vec_zero(), A, 0.3, 1e-9), Error);
}

TEST_CASE("3D sup-convolution window agrees with the full scan") {
    Rng rng(77);
    const GridSpec g = GridSpec::make({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {7, 7, 7});
    const ScalarField u = fixtures::random_usc_field(rng, g);
    const auto win = sup_convolve(u, 0.15);
    const auto full = brute_force_supconv(u, 0.15);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(win.field.values[k] == full.field.values[k]);
        CHECK(win.argmax_map[k] == full.argmax_map[k]);
    }
}
