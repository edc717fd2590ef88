#pragma once

#include <optional>
#include <vector>

#include "qcpot/contact.hpp"
#include "qcpot/regularize.hpp"
#include "qcpot/subeq.hpp"

namespace qcpot {

struct SubharmonicReport {
    double pass_fraction = 0.0;
    double worst_margin = 0.0;
    std::size_t worst_node = 0;
    std::string mode = "ae";
    std::size_t nodes_checked = 0;
    bool pass = false;
};

/// Classical route: evaluates the margin on the centered-difference jet at
/// every interior region node. For quasi-convex fields this almost-
/// everywhere check is equivalent to the viscosity notion.
SubharmonicReport check_subharmonic_ae(const ScalarField& u, const Subequation& F,
                                       const Box& region, double tol);

struct BadJet {
    std::size_t x = 0;
    Jet2 J;
    double eps_strict = 0.0;
    double radius = 0.0;
    double margin_violation = 0.0;
};

struct JetLatticeParams {
    double a_max = 0.0;   // 0: derive 2 max|H| + 1 from the local Hessian
    double a_step = 0.0;  // 0: a_max / 8
    double p_rad = -1.0;  // <0: 2 max|grad| (floored at one h)
    double p_step = 0.0;  // 0: p_rad / 8
};

/// Lattice search for an eps-strict upper test jet violating the margin at
/// x. A returned jet certifies the viscosity failure; exhaustion certifies
/// subharmonicity at x relative to the searched jet family.
std::optional<BadJet> find_bad_test_jet(const ScalarField& u, const Subequation& F, std::size_t x,
                                        double radius, const JetLatticeParams& params, double tol);

struct SubaffineReport {
    bool probe_ok = false;  // affine comparison on the dyadic sub-box family
    bool ae_ok = false;     // cross-check against the dual-cone margin
    bool agree = false;
    bool pass = false;  // both routes
};

SubaffineReport is_subaffine(const ScalarField& w, const Box& region, bool plus, double tol);

struct ComparisonReport {
    SubharmonicReport verified_u;
    SubharmonicReport verified_v;
    bool hypotheses_met = false;
    double zmp_gap = 0.0;  // max over the closed region minus max over its boundary
    bool zmp_ok = false;
    std::optional<SubaffineReport> sum_subaffine;  // pure second-order extras
    std::optional<SubaffineReport> sum_subaffine_plus;  // gradient-free extras
    bool pass = false;
};

/// Zero-maximum-principle experiment: verify u against F and v against the
/// dual of F, then compare the interior max of u + v with its boundary max.
ComparisonReport comparison_run(const ScalarField& u, const Subequation& F, const ScalarField& v,
                                const Box& omega, double tol);

struct StrictLadderRung {
    double eps = 0.0;
    double delta = 0.0;
    bool u_ok = false;
    bool v_ok = false;
};

struct StrictComparisonReport {
    double strictness_gap = 0.0;  // sampled inf of margin_F over G-members
    bool hypotheses_met = false;
    double zmp_gap = 0.0;
    bool zmp_ok = false;
    std::vector<StrictLadderRung> ladder;  // usc route only
    std::optional<SummandWitness> violation_witness;
    std::size_t violation_node = 0;
    bool pass = false;
};

enum class StrictRoute { QuasiConvex, SupConvolutionLadder };

/// Strict comparison: u in G with G strongly strict inside F, v in dual(F).
/// The sup-convolution route re-verifies each rung of the eps ladder on the
/// shrunk region. A detected violation carries a summand witness at the
/// interior maximum.
StrictComparisonReport strict_comparison_run(const ScalarField& u, const Subequation& G,
                                             const Subequation& F, const ScalarField& v,
                                             const Box& omega, double tol, StrictRoute route,
                                             const std::vector<double>& eps_ladder,
                                             const JetSampler& sampler);

struct AdditionReport {
    bool jet_addition_ok = false;
    SubharmonicReport u_in_F;
    SubharmonicReport v_in_G;
    SubharmonicReport sum_in_H;
    bool pass = false;  // jet addition implies subharmonic addition, sampled
};

AdditionReport subharmonic_addition_check(const Subequation& F, const Subequation& G,
                                          const Subequation& H, const ScalarField& u,
                                          const ScalarField& v, const Box& region,
                                          const JetSampler& sampler, double tol);

struct OnSumsReport {
    double lambda = 0.0;  // 1/eps + |A|
    SymMat A1;
    SymMat A2;
    std::size_t witness_node = 0;  // product-grid node of the summand witness
    TransportReport contact_u;
    TransportReport contact_v;
    bool sandwich_ok = false;
    bool pass = false;

    OnSumsReport() : A1(1), A2(1) {}
};

/// Doubled-variable pipeline for an upper contact jet (0, A) of
/// w(x, y) = u(x) + v(y) at the origin: sup-convolve both factors at
/// 1/(1/eps + |A|), locate a summand witness on the product grid, transport
/// the factor contacts back, and check the block sandwich
/// -(1/eps + |A|) I <= diag(A1, A2) <= A + eps A^2 within tol.
OnSumsReport on_sums_witness(const ScalarField& u, const ScalarField& v, const SymMat& A,
                             double eps, double tol);

}  // namespace qcpot
