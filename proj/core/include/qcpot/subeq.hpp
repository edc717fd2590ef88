#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcpot/grid.hpp"
#include "qcpot/jets.hpp"

namespace qcpot {

/// A fibered jet constraint set represented through a proper-elliptic
/// defining margin: membership of (r, p, A) at x holds iff margin >= 0,
/// interior membership iff margin > 0.
class Subequation {
public:
    using Margin = std::function<double(const Vec&, const Jet2&)>;

    std::string name;
    int dim = 1;
    Margin margin;
    bool constant_coefficients = true;
    /// Domain of the coefficient data for variable-coefficient margins.
    std::optional<Box> domain;
    /// Flagged false for the degenerate minimal cone, whose interior is empty.
    bool topological = true;
    /// Constant-coefficient structural reductions (drive the comparison
    /// harness extras).
    bool pure_second_order = false;
    bool gradient_free = false;

    double margin_at(const Vec& x, const Jet2& J) const { return margin(x, J); }
    bool member(const Vec& x, const Jet2& J, double tol) const {
        return margin(x, J) >= -tol;
    }
};

/// Dirichlet dual: margin~(x, J) = -margin(x, -J). Involutive exactly.
Subequation dual(const Subequation& F);

/// Deterministic jet sampler: entries uniform in [-scale, scale], positive
/// increments drawn as G^T G.
struct JetSampler {
    std::uint64_t seed = 1;
    int count = 1000;
    double scale = 2.0;

    /// Raw jets, r/p/A entries uniform in [-scale, scale].
    std::vector<Jet2> sample_jets(int dim) const;
    /// Positive semidefinite samples G^T G (entries of G in [-scale, scale]).
    std::vector<SymMat> sample_psd(int dim) const;
    /// Probe points: domain midpoint plus a deterministic spread when the
    /// subequation carries coefficient data, else the origin.
    std::vector<Vec> sample_points(const Subequation& F) const;
    /// Member jets of F at x: rejection over sample_jets plus a constructed
    /// fallback ladder (-s, 0, t I) that reaches every proper-elliptic cone.
    std::vector<Jet2> sample_members(const Subequation& F, const Vec& x, int want) const;
};

struct StructureReport {
    bool positivity_ok = false;
    bool negativity_ok = false;
    bool t_proxy_ok = false;
    bool fibers_proper = false;
    int members_found = 0;
    int boundary_jets_probed = 0;

    bool pass() const { return positivity_ok && negativity_ok && t_proxy_ok && fibers_proper; }
};

/// Sampled verification of the defining properties: positivity under PSD
/// increments, negativity under r decrease, a two-sided boundary proxy for
/// topological stability, and proper (nonempty, nontrivial) fibers.
StructureReport check_structure(const Subequation& F, const JetSampler& sampler, double tol);

/// Sampled monotonicity F_x + M  in  F_x for a constant-coefficient cone M.
bool check_monotone(const Subequation& F, const Subequation& M, const JetSampler& sampler,
                    double tol);

struct LibraryParams {
    double lambda = 0.0;           // qccone
    double gamma = 1.0;            // mgamma
    double radius = 1.0;           // mr
    double f_const = 1.0;          // monge-ampere with constant right side
    std::optional<ScalarField> f_field;  // monge-ampere with sampled right side
    std::vector<Vec> normals;      // md: unit inward normals of the cone
};

/// Named margins:
///   laplacian        tr(A)
///   pcone            lambda_min(A)
///   qccone           lambda_min(A) + lambda
///   q                min(-r, lambda_min(A))
///   subaffine        lambda_max(A)
///   subaffineplus    max(-r, lambda_max(A))
///   mgamma           -r - gamma |p|
///   mr               lambda_min(A - (|p|/R) I)
///   md               min_i <n_i, p>
///   monge-ampere     min(lambda_min(A), det A - f(x))
///   m0               min(-r, lambda_min(A), -|p|)   [degenerate, non-topological]
Subequation standard_library(const std::string& name, int dim, const LibraryParams& params = {});

/// All registrable library names (m0 included last).
std::vector<std::string> library_names();

/// CLI name parser: `laplacian | pcone | qccone:L | q | subaffine |
/// subaffineplus | mgamma:G | mr:R | md:FILE | ma:FIELD | ma:CONST | m0`.
Subequation parse_subequation(const std::string& spec, int dim);

}  // namespace qcpot
