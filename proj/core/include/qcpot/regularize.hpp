#pragma once

#include <vector>

#include "qcpot/grid.hpp"

namespace qcpot {

/// Result of sup-convolving a field: u^eps(x) = max_y (u(y) - |y-x|^2/(2 eps)).
/// The result majorizes u, decreases as eps decreases, and is (1/eps)-quasi-
/// convex up to grid error. argmax_map stores the maximizing node per
/// evaluation point (lowest row-major index on ties).
struct SupConvResult {
    double eps = 0.0;
    double delta = 0.0;  // 2 sqrt(eps * max|u|), window radius on bounded fields
    ScalarField field;
    std::vector<std::size_t> argmax_map;
};

SupConvResult sup_convolve(const ScalarField& field, double eps);

/// Transport of an upper contact jet (p, A) of u^eps at x to the contact
/// point xi = x + eps p of u. The jet must hold as an upper contact jet for
/// u^eps at x over the given radius (validated; error otherwise).
struct TransportReport {
    Vec xi_exact = vec_zero();
    std::size_t xi_node = 0;
    double xi_round_dist = 0.0;
    std::size_t argmax_node = 0;
    bool within_one_cell = false;  // |xi - argmax| <= h on every axis
    bool contact_inequality_ok = false;
    double value_residual = 0.0;  // |u(xi) - u^eps(x) - eps |p|^2 / 2|
    bool value_ok = false;
    bool contact_ok = false;  // contact inequality and value identity
};

TransportReport magic_transport_check(const ScalarField& u, double eps, std::size_t x_index,
                                      const Vec& p, const SymMat& A, double radius, double tol);

/// As above but reusing an already computed sup-convolution of u.
TransportReport magic_transport_check(const ScalarField& u, const SupConvResult& sc,
                                      std::size_t x_index, const Vec& p, const SymMat& A,
                                      double radius, double tol);

}  // namespace qcpot
