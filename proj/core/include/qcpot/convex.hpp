#pragma once

#include <optional>
#include <vector>

#include "qcpot/grid.hpp"

namespace qcpot {

/// Global subdifferential of a grid field at a node. In 1D the set is the
/// exact interval [left_slope, right_slope] over all nodes; in higher
/// dimension a single feasible witness is produced by a linear-feasibility
/// solve over the node constraints.
struct SubdifferentialResult {
    std::size_t node = 0;
    bool feasible = false;
    double left_slope = kNegInf;  // 1D: sup of backward chord slopes
    double right_slope = std::numeric_limits<double>::infinity();
    Vec p = vec_zero();  // witness (1D: interval midpoint when feasible)
};

SubdifferentialResult subdifferential(const ScalarField& field, std::size_t index, double tol);

/// Smallest lambda* >= 0 such that u + (lambda*/2)|.|^2 has nonnegative
/// second differences along every lattice axis and face diagonal.
double quasiconvex_index(const ScalarField& field);

struct C11Report {
    bool qc_plus = false;
    bool qc_minus = false;
    double grad_lip = 0.0;
    bool grad_lip_ok = false;
    double index_plus = 0.0;
    double index_minus = 0.0;
};

/// Tests whether both +u and -u are lambda-quasi-convex and measures the
/// discrete Lipschitz constant of the centered gradient.
C11Report c11_check(const ScalarField& field, double lambda, double tol);

/// Discrete Legendre-Fenchel conjugate g(y) = max_z (<y,z> - f(z)) over the
/// primal nodes (brute force; -inf entries never attain the max).
ScalarField fenchel_conjugate(const ScalarField& field, const GridSpec& dual_spec);

/// Linear-time 1D conjugate via the lower convex hull of (z, f(z)). Results
/// match fenchel_conjugate exactly (same argmax under lowest-index ties).
ScalarField fenchel_conjugate_1d_fast(const ScalarField& field, const GridSpec& dual_spec);

/// Dual grid used by biconjugation: per-axis forward-difference slope range
/// padded by one h, same shape as the primal grid.
GridSpec auto_dual_spec(const ScalarField& field);

/// L(Lf) restricted to the primal grid: the discrete convex envelope.
ScalarField biconjugate(const ScalarField& field);

/// Argmax map of the conjugate: G(y) = argmax_z (<y,z> - f(z)), ties broken
/// by lowest row-major index. The pairwise contraction post-check
/// |G(y1)-G(y2)| <= |y1-y2| + 2h is enforced on construction.
struct GradConjugateMap {
    GridSpec dual_spec;
    std::vector<std::size_t> argmax_node;  // per dual node, primal flat index

    Vec at(std::size_t dual_index, const GridSpec& primal) const {
        return primal.node(argmax_node[dual_index]);
    }
};

GradConjugateMap grad_conjugate(const ScalarField& field, const GridSpec& dual_spec);

/// Inverse-function identity for f = r u + |.|^2/2: at a dual node y where
/// the argmax map G is differentiable with invertible derivative B, the
/// primal Hessian at x0 = G(y) must satisfy D2f(x0) . B = I.
struct MagicLegendreReport {
    std::size_t x0_node = 0;
    Vec x0 = vec_zero();
    SymMat H;          // D2 f(x0), centered differences on the primal grid
    double B[3][3]{};  // DG(y), centered differences on the dual grid
    double det_B = 0.0;
    double residual = 0.0;  // max-abs entry of H*B - I
    bool pass = false;

    MagicLegendreReport() : H(1) {}
};

MagicLegendreReport magic_legendre_check(const ScalarField& u, double r, const GridSpec& dual_spec,
                                         std::size_t dual_index, double tol);

/// As above with the auto-sized dual grid of f = r u + |.|^2/2.
MagicLegendreReport magic_legendre_check(const ScalarField& u, double r, std::size_t dual_index,
                                         double tol);

GridSpec magic_legendre_dual_spec(const ScalarField& u, double r);

}  // namespace qcpot
