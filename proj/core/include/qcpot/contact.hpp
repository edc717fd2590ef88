#pragma once

#include <optional>
#include <vector>

#include "qcpot/grid.hpp"

namespace qcpot {

/// Global upper contact points of a fixed type A on a node region: nodes x
/// admitting a gradient p with u(y) <= u(x) + <p, y-x> + Q_A(y-x) + tol for
/// every region node y. gradients[i] is the stored p of nodes[i].
struct ContactSet {
    GridMask mask;
    std::vector<std::size_t> nodes;
    std::vector<Vec> gradients;
    SymMat type_A;
    Box region;

    ContactSet() : type_A(1) {}

    std::optional<Vec> gradient_at(std::size_t node) const;
};

/// Nodes of the grid inside a box region.
std::vector<std::size_t> region_nodes(const GridSpec& g, const Box& region);
/// Nodes in the closed ball realization { |node - center| <= rho + h/2 }.
std::vector<std::size_t> ball_nodes(const GridSpec& g, const Vec& center, double rho);

ContactSet contact_set(const ScalarField& u, const SymMat& A, const Box& region, double tol);
ContactSet contact_set_ball(const ScalarField& u, const SymMat& A, const Vec& center, double rho,
                            double tol);
/// Core entry point on an explicit node set. In 1D the feasibility interval
/// is computed exactly (the concave-envelope touch test); otherwise each
/// node runs a dense linear-feasibility solve.
ContactSet contact_set_on(const ScalarField& u, const SymMat& A,
                          const std::vector<std::size_t>& nodes, const Box& region, double tol);

/// An eps-strict upper contact jet at a node over a radius:
/// u(y) <= u(x) + <p, y-x> + Q_A(y-x) - eps_strict |y-x|^2 for nodes y != x.
struct StrictJetWitness {
    std::size_t x = 0;
    Vec p = vec_zero();
    SymMat A;
    double eps_strict = 0.0;
    double radius = 0.0;

    StrictJetWitness() : A(1) {}
};

/// Validates the witness inequality on the grid (with slack tol).
bool validate_strict_jet(const ScalarField& u, const StrictJetWitness& w, double tol);

/// Expansion ratios of the vertex map V(x) = x - r p(x) over a contact set
/// of type (1/r) I. Nonexpansive up to the measured grid slack.
struct VertexMapReport {
    double max_expansion = 0.0;
    double min_pair_distance = 0.0;
    double bound = 1.0;  // 1 + 4h / min_pair_distance
    bool pass = true;
    std::size_t pairs = 0;
};

VertexMapReport vertex_map_check(const ScalarField& u, double r, const ContactSet& cs);

/// Generalized largest Hessian eigenvalue at a node: max over the two
/// smallest shell radii of 2 eps^-2 max_shell(u(x+.) - u(x) - <p, .>), with
/// p the centered gradient; +infinity when the one-sided slopes disagree
/// beyond slope_tol (the non-differentiable sentinel).
double slod_K(const ScalarField& u, std::size_t x, const std::vector<double>& eps_seq,
              double slope_tol);

struct DensityRow {
    double rho = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // 5h/rho
    bool pass = false;
};

/// Measures contact-set density ratios over shrinking balls against the
/// lower bound (1 - sqrt(r/R))^n. The field must satisfy the centered
/// paraboloid hypotheses 0 <= u(y) <= |y - c|^2/(2R) - tol away from the
/// center c, with u(c) = 0.
std::vector<DensityRow> density_experiment(const ScalarField& u, double r, double R,
                                           const std::vector<double>& rho_list, double tol);

struct JensenLadderRow {
    double rho = 0.0;
    double measure = 0.0;
};

struct JensenReport {
    std::vector<JensenLadderRow> rows;
    double rho_used = 0.0;  // first rung with positive measure
    bool found = false;
    bool all_positive = false;
};

/// Positive-measure verification for contact sets of the witness type over
/// the dyadic ladder rho0, rho0/2, ... down to 4h.
JensenReport jensen_slodkowski_verify(const ScalarField& w, const StrictJetWitness& witness,
                                      double rho0, double tol);

struct AlexandrovReport {
    double lhs = 0.0;       // sup of u over the closed region
    double boundary_sup = 0.0;  // sup of u^+ over the region boundary nodes
    double integral = 0.0;  // sum_E |det D2u| * prod(h)
    double rhs = 0.0;
    bool mp_ok = false;
    double area_lhs = 0.0;  // binned measure of the gradient image of E
    double area_rhs = 0.0;
    bool area_ok = false;
    std::size_t contact_count = 0;
    bool coarse_violation = false;  // E empty while lhs exceeds the boundary sup
};

/// Maximum-principle estimate through the area formula: the interior excess
/// of u is controlled by the Hessian determinant over the flat upper
/// contact points.
AlexandrovReport alexandrov_bound(const ScalarField& u, const Box& omega, double tol);

struct SummandWitness {
    std::size_t node = 0;
    SymMat B;
    SymMat C;

    SummandWitness() : B(1), C(1) {}
};

/// Given an upper contact jet (p, A) for w = u + v at x, finds a nearby
/// node where the numeric Hessians B of u and C of v satisfy B + C <= A
/// (up to tol) and the gradients sum to p. Nodes are scanned by distance
/// from x, lowest flat index on ties.
SummandWitness summand_decompose(const ScalarField& u, const ScalarField& v, std::size_t x,
                                 const Vec& p, const SymMat& A, double search_radius, double tol);

}  // namespace qcpot
