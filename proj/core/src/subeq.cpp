#include "qcpot/subeq.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "qcpot/field_io.hpp"

namespace qcpot {

Subequation dual(const Subequation& F) {
    Subequation out = F;
    out.name = "dual(" + F.name + ")";
    const auto inner = F.margin;
    out.margin = [inner](const Vec& x, const Jet2& J) { return -inner(x, -J); };
    return out;
}

std::vector<Jet2> JetSampler::sample_jets(int dim) const {
    Rng rng(seed);
    std::vector<Jet2> jets;
    jets.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Jet2 J(0.0, vec_zero(), SymMat(dim));
        J.r = rng.uniform(-scale, scale);
        for (int a = 0; a < dim; ++a) J.p[static_cast<size_t>(a)] = rng.uniform(-scale, scale);
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) J.A.set(a, b, rng.uniform(-scale, scale));
        jets.push_back(J);
    }
    return jets;
}

std::vector<SymMat> JetSampler::sample_psd(int dim) const {
    Rng rng(seed ^ 0x5bd1e995u);
    std::vector<SymMat> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double G[3][3] = {};
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) G[a][b] = rng.uniform(-scale, scale);
        SymMat P(dim);
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) {
                double s = 0.0;
                for (int k = 0; k < dim; ++k) s += G[k][a] * G[k][b];
                P.set(a, b, s);
            }
        out.push_back(P);
    }
    return out;
}

std::vector<Vec> JetSampler::sample_points(const Subequation& F) const {
    if (!F.domain) return {vec_zero()};
    Rng rng(seed ^ 0x9e3779b9u);
    std::vector<Vec> pts;
    pts.push_back(F.domain->center());
    for (int i = 0; i < 4; ++i) {
        Vec x = vec_zero();
        for (int a = 0; a < F.dim; ++a) {
            const auto aa = static_cast<size_t>(a);
            x[aa] = rng.uniform(F.domain->lo[aa], F.domain->hi[aa]);
        }
        pts.push_back(x);
    }
    return pts;
}

std::vector<Jet2> JetSampler::sample_members(const Subequation& F, const Vec& x, int want) const {
    std::vector<Jet2> members;
    for (const Jet2& J : sample_jets(F.dim)) {
        if (F.margin_at(x, J) >= 0.0) members.push_back(J);
        if (static_cast<int>(members.size()) >= want) return members;
    }
    // Constructed fallback: (-s, 0, t I) enters every proper-elliptic cone
    // for s, t large (and sits on the boundary of the degenerate m0 cone).
    for (double t = 0.0; t <= 16.0 * scale && static_cast<int>(members.size()) < want;
         t = (t == 0.0 ? scale : 2.0 * t)) {
        const Jet2 J(-t, vec_zero(), SymMat::identity(F.dim, t));
        if (F.margin_at(x, J) >= 0.0) members.push_back(J);
    }
    return members;
}

StructureReport check_structure(const Subequation& F, const JetSampler& sampler, double tol) {
    StructureReport rep;
    const int n = F.dim;
    const auto points = sampler.sample_points(F);
    const auto jets = sampler.sample_jets(n);
    const auto psd = sampler.sample_psd(n);

    bool p_ok = true, n_ok = true, proper = true, t_ok = true;
    Rng rng(sampler.seed ^ 0xabcdef12u);

    for (const Vec& x : points) {
        std::vector<Jet2> members, nonmembers;
        for (const Jet2& J : jets) {
            if (F.margin_at(x, J) >= 0.0)
                members.push_back(J);
            else
                nonmembers.push_back(J);
        }
        if (members.empty()) {
            const auto extra = sampler.sample_members(F, x, 4);
            members.insert(members.end(), extra.begin(), extra.end());
        }
        if (members.empty() || nonmembers.empty()) {
            proper = false;
            continue;
        }
        rep.members_found += static_cast<int>(members.size());

        for (std::size_t i = 0; i < members.size(); ++i) {
            const Jet2& J = members[i];
            const SymMat& P = psd[i % psd.size()];
            if (F.margin_at(x, Jet2(J.r, J.p, J.A + P)) < -tol) p_ok = false;
            const double s = -std::fabs(rng.uniform(0.0, sampler.scale));
            if (F.margin_at(x, Jet2(J.r + s, J.p, J.A)) < -tol) n_ok = false;
        }

        // Boundary proxy: bisect member/non-member pairs to |margin| <= tol,
        // then look for a member and a non-member within 10 tol of the
        // boundary jet along probe directions.
        const std::size_t pairs = std::min<std::size_t>({members.size(), nonmembers.size(), 16});
        for (std::size_t i = 0; i < pairs; ++i) {
            Jet2 a = members[i], b = nonmembers[i];
            for (int it = 0; it < 200; ++it) {
                Jet2 mid((a.r + b.r) / 2.0, scale(add(a.p, b.p), 0.5), (a.A + b.A).scaled(0.5));
                const double mm = F.margin_at(x, mid);
                if (std::fabs(mm) <= 0.5 * tol) {
                    a = mid;
                    break;
                }
                (mm >= 0.0 ? a : b) = mid;
            }
            const Jet2& Jb = a;
            if (std::fabs(F.margin_at(x, Jb)) > tol) continue;
            ++rep.boundary_jets_probed;

            bool found_member = false, found_nonmember = false;
            const double step = 10.0 * tol;
            auto probe = [&](const Jet2& D) {
                const double nm = std::sqrt(D.r * D.r + norm2(D.p, n) +
                                            [&] {
                                                double s = 0.0;
                                                for (int ii = 0; ii < n; ++ii)
                                                    for (int jj = 0; jj < n; ++jj)
                                                        s += D.A.at(ii, jj) * D.A.at(ii, jj);
                                                return s;
                                            }());
                if (nm < 1e-300) return;
                const double f = step / nm;
                const Jet2 probe_jet(Jb.r + f * D.r, add(Jb.p, scale(D.p, f)),
                                     Jb.A + D.A.scaled(f));
                const double mv = F.margin_at(x, probe_jet);
                if (mv >= 0.0) found_member = true;
                if (mv < 0.0) found_nonmember = true;
            };
            // r and A axis probes cover every monotone margin; random jets
            // cover the rest.
            for (double s : {+1.0, -1.0}) {
                probe(Jet2(s, vec_zero(), SymMat(n)));
                probe(Jet2(0.0, vec_zero(), SymMat::identity(n, s)));
            }
            for (int d = 0; d < 6 && !(found_member && found_nonmember); ++d) {
                Jet2 D(rng.uniform(-1.0, 1.0), vec_zero(), SymMat(n));
                for (int a2 = 0; a2 < n; ++a2) D.p[static_cast<size_t>(a2)] = rng.uniform(-1.0, 1.0);
                for (int a2 = 0; a2 < n; ++a2)
                    for (int b2 = a2; b2 < n; ++b2) D.A.set(a2, b2, rng.uniform(-1.0, 1.0));
                probe(D);
            }
            if (!(found_member && found_nonmember)) t_ok = false;
        }
    }

    rep.positivity_ok = p_ok;
    rep.negativity_ok = n_ok;
    rep.fibers_proper = proper;
    rep.t_proxy_ok = t_ok && proper;
    return rep;
}

bool check_monotone(const Subequation& F, const Subequation& M, const JetSampler& sampler,
                    double tol) {
    if (!M.constant_coefficients) throw Error("monotonicity cone must have constant coefficients");
    const auto points = sampler.sample_points(F);
    const auto cone = sampler.sample_members(M, vec_zero(), std::max(8, sampler.count / 8));
    if (cone.empty()) throw Error("no cone members found");
    for (const Vec& x : points) {
        const auto members = sampler.sample_members(F, x, std::max(8, sampler.count / 8));
        for (const Jet2& J : members)
            for (const Jet2& Jp : cone)
                if (F.margin_at(x, J + Jp) < -tol) return false;
    }
    return true;
}

namespace {

double norm_p(const Jet2& J) { return norm(J.p, J.dim()); }

Subequation make(const std::string& name, int dim, Subequation::Margin m) {
    Subequation F;
    F.name = name;
    F.dim = dim;
    F.margin = std::move(m);
    return F;
}

void validate_positivity(const Subequation& F) {
    JetSampler s;
    s.seed = 0x4d41;  // registration self-check
    s.count = 200;
    const auto rep = check_structure(F, s, 1e-9);
    if (!rep.positivity_ok)
        throw Error("margin fails the positivity sample; registration aborted");
}

}  // namespace

Subequation standard_library(const std::string& name, int dim, const LibraryParams& params) {
    if (dim < 1 || dim > kMaxDim) throw Error("subequation dimension must be 1..3");

    if (name == "laplacian") {
        auto F = make(name, dim, [](const Vec&, const Jet2& J) { return J.A.trace(); });
        F.pure_second_order = true;
        return F;
    }
    if (name == "pcone") {
        auto F = make(name, dim, [](const Vec&, const Jet2& J) { return lambda_min(J.A); });
        F.pure_second_order = true;
        return F;
    }
    if (name == "qccone") {
        const double lambda = params.lambda;
        if (lambda < 0.0) throw Error("qccone requires lambda >= 0");
        auto F = make(name, dim,
                      [lambda](const Vec&, const Jet2& J) { return lambda_min(J.A) + lambda; });
        F.pure_second_order = true;
        return F;
    }
    if (name == "q") {
        auto F = make(name, dim, [](const Vec&, const Jet2& J) {
            return std::min(-J.r, lambda_min(J.A));
        });
        F.gradient_free = true;
        return F;
    }
    if (name == "subaffine") {
        auto F = make(name, dim, [](const Vec&, const Jet2& J) { return lambda_max(J.A); });
        F.pure_second_order = true;
        return F;
    }
    if (name == "subaffineplus") {
        // Dual of q: membership means r <= 0 or the largest eigenvalue of A
        // is nonnegative.
        auto F = make(name, dim, [](const Vec&, const Jet2& J) {
            return std::max(-J.r, lambda_max(J.A));
        });
        F.gradient_free = true;
        return F;
    }
    if (name == "mgamma") {
        const double gamma = params.gamma;
        if (gamma <= 0.0) throw Error("mgamma requires gamma > 0");
        return make(name, dim,
                    [gamma](const Vec&, const Jet2& J) { return -J.r - gamma * norm_p(J); });
    }
    if (name == "mr") {
        const double R = params.radius;
        if (R <= 0.0) throw Error("mr requires R > 0");
        return make(name, dim, [R](const Vec&, const Jet2& J) {
            return lambda_min(J.A - SymMat::identity(J.dim(), norm_p(J) / R));
        });
    }
    if (name == "md") {
        if (params.normals.empty()) throw Error("md requires at least one cone normal");
        auto normals = params.normals;
        for (auto& nv : normals) {
            const double nn = norm(nv, dim);
            if (nn <= 0.0) throw Error("md normal must be nonzero");
            nv = scale(nv, 1.0 / nn);
        }
        return make(name, dim, [normals, dim](const Vec&, const Jet2& J) {
            double m = std::numeric_limits<double>::infinity();
            for (const auto& nv : normals) m = std::min(m, dot(nv, J.p, dim));
            return m;
        });
    }
    if (name == "monge-ampere" || name == "ma") {
        Subequation F;
        if (params.f_field) {
            const ScalarField f = *params.f_field;
            if (f.spec.dim() != dim) throw Error("monge-ampere coefficient dimension mismatch");
            F = make("monge-ampere", dim, [f](const Vec& x, const Jet2& J) {
                const double fx = f.values[f.spec.nearest(x)];
                return std::min(lambda_min(J.A), J.A.det() - fx);
            });
            F.constant_coefficients = false;
            F.domain = f.spec.box();
        } else {
            const double fc = params.f_const;
            F = make("monge-ampere", dim, [fc](const Vec&, const Jet2& J) {
                return std::min(lambda_min(J.A), J.A.det() - fc);
            });
        }
        F.pure_second_order = F.constant_coefficients;
        validate_positivity(F);
        return F;
    }
    if (name == "m0") {
        auto F = make(name, dim, [](const Vec&, const Jet2& J) {
            return std::min({-J.r, lambda_min(J.A), -norm_p(J)});
        });
        F.topological = false;
        return F;
    }
    throw Error("unknown subequation name: " + name);
}

std::vector<std::string> library_names() {
    return {"laplacian", "pcone",  "qccone", "q",  "subaffine", "subaffineplus",
            "mgamma",    "mr",     "md",     "ma", "m0"};
}

Subequation parse_subequation(const std::string& spec, int dim) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    LibraryParams params;

    auto parse_num = [&](const char* what) {
        try {
            return std::stod(arg);
        } catch (...) {
            throw Error(std::string("bad ") + what + " parameter: " + arg);
        }
    };

    if (head == "qccone") {
        params.lambda = arg.empty() ? 0.0 : parse_num("lambda");
    } else if (head == "mgamma") {
        params.gamma = arg.empty() ? 1.0 : parse_num("gamma");
    } else if (head == "mr") {
        params.radius = arg.empty() ? 1.0 : parse_num("R");
    } else if (head == "md") {
        if (arg.empty()) {
            // default: the first-axis half space
            Vec n0 = vec_zero();
            n0[0] = 1.0;
            params.normals = {n0};
        } else {
            std::ifstream is(arg);
            if (!is) throw Error("cannot open cone normal file: " + arg);
            double x;
            std::vector<double> nums;
            while (is >> x) nums.push_back(x);
            if (nums.empty() || nums.size() % static_cast<std::size_t>(dim) != 0)
                throw Error("cone normal file must hold k*dim reals");
            for (std::size_t i = 0; i < nums.size(); i += static_cast<std::size_t>(dim)) {
                Vec nv = vec_zero();
                for (int a = 0; a < dim; ++a) nv[static_cast<size_t>(a)] = nums[i + static_cast<size_t>(a)];
                params.normals.push_back(nv);
            }
        }
    } else if (head == "ma" || head == "monge-ampere") {
        if (!arg.empty()) {
            try {
                params.f_const = std::stod(arg);
            } catch (...) {
                params.f_field = read_field(arg);
            }
        }
    }
    return standard_library(head == "ma" ? "monge-ampere" : head, dim, params);
}

}  // namespace qcpot
