// qcpot: grid experiments in quasi-convex analysis and nonlinear potential
// theory. Subcommands generate sampled fields, run the verification
// harnesses, and emit JSON (or CSV) reports; exit codes are 0 (pass),
// 1 (usage or I/O error), 2 (hypotheses unmet), 3 (property violation).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcpot/convex.hpp"
#include "qcpot/expr.hpp"
#include "qcpot/field_io.hpp"
#include "qcpot/potential.hpp"

using nlohmann::json;
using namespace qcpot;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitHypotheses = 2;
constexpr int kExitViolation = 3;

json jet_to_json(const Jet2& J) {
    json j;
    j["r"] = J.r;
    j["p"] = std::vector<double>(J.p.begin(), J.p.begin() + J.dim());
    j["A"] = J.A.packed_vector();
    return j;
}

json sym_to_json(const SymMat& A) { return json(A.packed_vector()); }

json vec_to_json(const Vec& v, int n) {
    return json(std::vector<double>(v.begin(), v.begin() + n));
}

json report_to_json(const SubharmonicReport& r, const GridSpec& g) {
    json j;
    j["pass_fraction"] = r.pass_fraction;
    j["worst_margin"] = r.worst_margin;
    j["worst_node"] = r.worst_node;
    j["worst_point"] = vec_to_json(g.node(r.worst_node), g.dim());
    j["mode"] = r.mode;
    j["nodes_checked"] = r.nodes_checked;
    j["pass"] = r.pass;
    return j;
}

void write_field_or_stdout(const std::string& path, const ScalarField& f) {
    if (path == "-")
        write_field(std::cout, f);
    else
        write_field(path, f);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) throw Error("cannot open for writing: " + out_path);
        os << j.dump(2) << "\n";
    }
}

Box parse_box(const std::vector<double>& bounds) {
    if (bounds.empty() || bounds.size() % 2 != 0 || bounds.size() > 6)
        throw Error("--box takes lo hi pairs, one per axis");
    const int n = static_cast<int>(bounds.size() / 2);
    Vec lo = vec_zero(), hi = vec_zero();
    for (int i = 0; i < n; ++i) {
        lo[static_cast<size_t>(i)] = bounds[static_cast<size_t>(2 * i)];
        hi[static_cast<size_t>(i)] = bounds[static_cast<size_t>(2 * i + 1)];
    }
    return Box(n, lo, hi);
}

Box box_or_field(const std::vector<double>& bounds, const ScalarField& f) {
    return bounds.empty() ? f.spec.box() : parse_box(bounds);
}

SymMat read_type_matrix(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open: " + path);
    json j;
    is >> j;
    const int n = j.at("n").get<int>();
    return SymMat::from_packed(n, j.at("upper").get<std::vector<double>>());
}

SymMat parse_packed(const std::string& text, int n) {
    std::vector<double> vals;
    std::string tok;
    for (char c : text + ",") {
        if (c == ',') {
            if (!tok.empty()) vals.push_back(std::stod(tok));
            tok.clear();
        } else {
            tok += c;
        }
    }
    return SymMat::from_packed(n, vals);
}

double default_tol(const GridSpec& g, double kappa) { return kappa * g.max_spacing(); }

// --- subcommand bodies ----------------------------------------------------

int cmd_gen(const std::string& expr_text, const std::vector<double>& box,
            std::vector<int> shape, const std::string& out) {
    const Box b = parse_box(box);
    if (shape.size() == 1) shape.assign(static_cast<size_t>(b.dim), shape[0]);
    if (static_cast<int>(shape.size()) != b.dim) throw Error("--shape arity mismatch");
    IVec s = {1, 1, 1};
    for (int i = 0; i < b.dim; ++i) s[static_cast<size_t>(i)] = shape[static_cast<size_t>(i)];
    const GridSpec g(b, s);
    const Expr e = Expr::parse(expr_text);
    const ScalarField f = build_field(g, [&](const Vec& x) { return e.eval(x); });
    write_field(out, f);
    return kExitPass;
}

int cmd_supconv(double eps, const std::string& in, const std::string& out,
                const std::string& report_path) {
    const ScalarField u = read_field(in);
    const auto sc = sup_convolve(u, eps);
    write_field(out, sc.field);
    if (!report_path.empty()) {
        const double h = u.spec.max_spacing();
        json j;
        j["paper_ref"] = "sup-convolution envelope properties";
        j["eps"] = eps;
        j["delta"] = sc.delta;
        bool majorizes = true;
        for (std::size_t k = 0; k < u.spec.size(); ++k)
            if (sc.field.values[k] < u.values[k] - 1e-12) majorizes = false;
        j["majorizes"] = majorizes;
        const auto finer = sup_convolve(u, eps / 2.0);
        bool monotone = true;
        for (std::size_t k = 0; k < u.spec.size(); ++k)
            if (finer.field.values[k] > sc.field.values[k] + 1e-12) monotone = false;
        j["eps_monotone"] = monotone;
        const double index = quasiconvex_index(sc.field);
        j["quasiconvex_index"] = index;
        j["quasiconvex_bound"] = 1.0 / eps + 10.0 * h / (eps * eps);
        j["quasiconvex_ok"] = index <= 1.0 / eps + 10.0 * h / (eps * eps);
        emit(j, report_path);
        if (!(majorizes && monotone && index <= 1.0 / eps + 10.0 * h / (eps * eps)))
            return kExitViolation;
    }
    return kExitPass;
}

int cmd_legendre(const std::string& in, const std::string& out,
                 const std::vector<double>& dual_box, std::vector<int> dual_shape,
                 bool biconjugate_mode, double magic_r, double magic_y, double kappa) {
    const ScalarField f = read_field(in);
    if (magic_r > 0.0) {
        // inverse-function report for f = r u + |.|^2/2 at the dual node
        // nearest the requested slope
        const GridSpec dual = magic_legendre_dual_spec(f, magic_r);
        Vec y = vec_zero();
        y[0] = magic_y;
        const std::size_t j = dual.nearest(y);
        const auto rep =
            magic_legendre_check(f, magic_r, dual, j, kappa * f.spec.max_spacing());
        json out_json;
        out_json["paper_ref"] = "inverse-function identity of the Legendre argmax map";
        out_json["y"] = vec_to_json(dual.node(j), dual.dim());
        out_json["x0"] = vec_to_json(rep.x0, f.spec.dim());
        json B = json::array();
        for (int a = 0; a < f.spec.dim(); ++a)
            for (int b = 0; b < f.spec.dim(); ++b) B.push_back(rep.B[a][b]);
        out_json["B"] = B;
        out_json["H"] = sym_to_json(rep.H);
        out_json["residual"] = rep.residual;
        out_json["pass"] = rep.pass;
        emit(out_json, out);
        return rep.pass ? kExitPass : kExitViolation;
    }
    if (biconjugate_mode) {
        write_field_or_stdout(out, biconjugate(f));
        return kExitPass;
    }
    GridSpec dual = auto_dual_spec(f);
    if (!dual_box.empty()) {
        const Box b = parse_box(dual_box);
        if (dual_shape.empty()) {
            IVec s = f.spec.shape();
            dual = GridSpec(b, s);
        } else {
            if (dual_shape.size() == 1) dual_shape.assign(static_cast<size_t>(b.dim), dual_shape[0]);
            IVec s = {1, 1, 1};
            for (int i = 0; i < b.dim; ++i) s[static_cast<size_t>(i)] = dual_shape[static_cast<size_t>(i)];
            dual = GridSpec(b, s);
        }
    }
    write_field_or_stdout(out, fenchel_conjugate(f, dual));
    return kExitPass;
}

int cmd_contact(const std::string& type_path, const std::vector<double>& region,
                const std::string& in, const std::string& out, double kappa,
                const std::string& gradients_path) {
    const ScalarField u = read_field(in);
    const SymMat A = type_path.empty() ? SymMat(u.spec.dim()) : read_type_matrix(type_path);
    const Box reg = box_or_field(region, u);
    const ContactSet cs = contact_set(u, A, reg, default_tol(u.spec, kappa));
    write_mask(out, cs.mask);
    if (!gradients_path.empty()) {
        json j;
        j["paper_ref"] = "upper contact points of fixed type";
        j["type"] = sym_to_json(A);
        j["count"] = cs.nodes.size();
        j["measure"] = mask_measure(cs.mask);
        json rows = json::array();
        for (std::size_t i = 0; i < cs.nodes.size(); ++i) {
            json row;
            row["node"] = cs.nodes[i];
            row["p"] = vec_to_json(cs.gradients[i], u.spec.dim());
            rows.push_back(row);
        }
        j["gradients"] = rows;
        emit(j, gradients_path);
    }
    return kExitPass;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> vals;
    std::string tok;
    for (char c : text + ",") {
        if (c == ',') {
            if (!tok.empty()) vals.push_back(std::stod(tok));
            tok.clear();
        } else {
            tok += c;
        }
    }
    return vals;
}

int cmd_density(double r, double R, const std::string& rho_list, const std::string& in,
                double tol, bool csv, const std::string& out) {
    const ScalarField u = read_field(in);
    const std::vector<double> rhos = parse_list(rho_list);
    if (rhos.empty()) throw Error("--rho takes a comma-separated radius list");
    const double tol_eff =
        tol > 0 ? tol : u.spec.max_spacing() * u.spec.max_spacing() / (8.0 * R);
    const auto rows = density_experiment(u, r, R, rhos, tol_eff);
    bool all = true;
    for (const auto& row : rows) all = all && row.pass;
    if (csv) {
        std::ostringstream ss;
        ss << "rho,ratio,bound,slack,pass\n";
        for (const auto& row : rows)
            ss << row.rho << ',' << row.ratio << ',' << row.bound << ',' << row.slack << ','
               << (row.pass ? 1 : 0) << "\n";
        if (out.empty())
            std::cout << ss.str();
        else {
            std::ofstream os(out);
            os << ss.str();
        }
    } else {
        json j;
        j["paper_ref"] = "lower bound on the measure of paraboloid contact sets";
        j["r"] = r;
        j["R"] = R;
        json jr = json::array();
        for (const auto& row : rows)
            jr.push_back({{"rho", row.rho},
                          {"ratio", row.ratio},
                          {"bound", row.bound},
                          {"slack", row.slack},
                          {"pass", row.pass}});
        j["rows"] = jr;
        j["pass"] = all;
        emit(j, out);
    }
    return all ? kExitPass : kExitViolation;
}

int cmd_jensen(const std::string& in, const std::string& point_list, const std::string& p_list,
               const std::string& a_packed, double eps_strict, double radius, double rho0,
               double kappa, bool csv, const std::string& out) {
    const ScalarField w = read_field(in);
    const int n = w.spec.dim();
    const std::vector<double> point = point_list.empty() ? std::vector<double>() : parse_list(point_list);
    const std::vector<double> p = p_list.empty() ? std::vector<double>() : parse_list(p_list);
    StrictJetWitness witness;
    Vec xp = vec_zero();
    for (int i = 0; i < n && i < static_cast<int>(point.size()); ++i)
        xp[static_cast<size_t>(i)] = point[static_cast<size_t>(i)];
    witness.x = w.spec.nearest(xp);
    for (int i = 0; i < n && i < static_cast<int>(p.size()); ++i)
        witness.p[static_cast<size_t>(i)] = p[static_cast<size_t>(i)];
    witness.A = a_packed.empty() ? SymMat(n) : parse_packed(a_packed, n);
    witness.eps_strict = eps_strict;
    witness.radius = radius;

    const auto rep = jensen_slodkowski_verify(w, witness, rho0, default_tol(w.spec, kappa));
    if (csv) {
        std::ostringstream ss;
        ss << "rho,measure\n";
        for (const auto& row : rep.rows) ss << row.rho << ',' << row.measure << "\n";
        if (out.empty())
            std::cout << ss.str();
        else {
            std::ofstream os(out);
            os << ss.str();
        }
    } else {
        json j;
        j["paper_ref"] = "positive measure of contact sets near strict contact points";
        j["rho_used"] = rep.rho_used;
        j["found"] = rep.found;
        j["all_positive"] = rep.all_positive;
        json jr = json::array();
        for (const auto& row : rep.rows)
            jr.push_back({{"rho", row.rho}, {"measure", row.measure}});
        j["ladder"] = jr;
        emit(j, out);
    }
    return rep.all_positive ? kExitPass : kExitViolation;
}

int cmd_alexandrov(const std::string& in, const std::vector<double>& box, double kappa,
                   const std::string& out) {
    const ScalarField u = read_field(in);
    const Box omega = box_or_field(box, u);
    const auto rep = alexandrov_bound(u, omega, default_tol(u.spec, kappa));
    json j;
    j["paper_ref"] = "Alexandrov maximum principle and the gradient area bound";
    j["lhs"] = rep.lhs;
    j["boundary_sup"] = rep.boundary_sup;
    j["integral"] = rep.integral;
    j["rhs"] = rep.rhs;
    j["mp_ok"] = rep.mp_ok;
    j["area_lhs"] = rep.area_lhs;
    j["area_rhs"] = rep.area_rhs;
    j["area_ok"] = rep.area_ok;
    j["contact_count"] = rep.contact_count;
    j["coarse_violation"] = rep.coarse_violation;
    emit(j, out);
    return (rep.mp_ok && rep.area_ok) ? kExitPass : kExitViolation;
}

int cmd_check(const std::string& subeq, const std::string& mode, const std::string& in,
              const std::vector<double>& box, double kappa, double radius_mult, int visc_nodes,
              std::uint64_t seed, const std::string& out) {
    const ScalarField u = read_field(in);
    const Subequation F = parse_subequation(subeq, u.spec.dim());
    const Box omega = box_or_field(box, u);
    const double tol = default_tol(u.spec, kappa);

    json j;
    j["paper_ref"] = "almost-everywhere characterization of viscosity subharmonics";
    j["subeq"] = F.name;

    if (mode == "ae") {
        const auto rep = check_subharmonic_ae(u, F, omega, tol);
        j["report"] = report_to_json(rep, u.spec);
        emit(j, out);
        return rep.pass ? kExitPass : kExitViolation;
    }
    if (mode != "visc") throw Error("--mode must be ae or visc");

    const auto nodes = region_nodes(u.spec, omega);
    std::vector<std::size_t> interior;
    for (auto k : nodes)
        if (u.spec.interior(k)) interior.push_back(k);
    if (interior.empty()) throw Error("region has no interior nodes");
    Rng rng(seed);
    json found = json::array();
    bool pass = true;
    const double radius = radius_mult * u.spec.max_spacing();
    const int probes = std::min<int>(visc_nodes, static_cast<int>(interior.size()));
    for (int t = 0; t < probes; ++t) {
        const std::size_t k = interior[rng.next_below(interior.size())];
        const auto bad = find_bad_test_jet(u, F, k, radius, JetLatticeParams{}, tol);
        if (bad.has_value()) {
            pass = false;
            json b;
            b["node"] = bad->x;
            b["jet"] = jet_to_json(bad->J);
            b["eps_strict"] = bad->eps_strict;
            b["margin_violation"] = bad->margin_violation;
            found.push_back(b);
        }
    }
    j["mode"] = "visc";
    j["nodes_probed"] = probes;
    j["bad_jets"] = found;
    j["pass"] = pass;
    emit(j, out);
    return pass ? kExitPass : kExitViolation;
}

int cmd_compare(const std::string& subeq, const std::string& u_path, const std::string& v_path,
                const std::vector<double>& box, double kappa, const std::string& out) {
    const ScalarField u = read_field(u_path);
    const ScalarField v = read_field(v_path);
    const Subequation F = parse_subequation(subeq, u.spec.dim());
    const Box omega = box_or_field(box, u);
    const auto rep = comparison_run(u, F, v, omega, default_tol(u.spec, kappa));

    json j;
    j["paper_ref"] = "comparison through the zero maximum principle for dual pairs";
    j["subeq"] = F.name;
    j["verified_u"] = report_to_json(rep.verified_u, u.spec);
    j["verified_v"] = report_to_json(rep.verified_v, u.spec);
    j["hypotheses_met"] = rep.hypotheses_met;
    j["zmp_gap"] = rep.zmp_gap;
    j["zmp_ok"] = rep.zmp_ok;
    if (rep.sum_subaffine)
        j["sum_subaffine"] = {{"probe_ok", rep.sum_subaffine->probe_ok},
                              {"ae_ok", rep.sum_subaffine->ae_ok},
                              {"pass", rep.sum_subaffine->pass}};
    if (rep.sum_subaffine_plus)
        j["sum_subaffine_plus"] = {{"probe_ok", rep.sum_subaffine_plus->probe_ok},
                                   {"ae_ok", rep.sum_subaffine_plus->ae_ok},
                                   {"pass", rep.sum_subaffine_plus->pass}};
    j["pass"] = rep.pass;
    emit(j, out);
    if (!rep.hypotheses_met) return kExitHypotheses;
    return rep.pass ? kExitPass : kExitViolation;
}

int cmd_dual(const std::string& subeq, int dim, int samples, std::uint64_t seed,
             const std::string& out) {
    const Subequation F = parse_subequation(subeq, dim);
    const Subequation Fd = dual(F);
    const Subequation Fdd = dual(Fd);
    JetSampler sampler;
    sampler.seed = seed;
    sampler.count = samples;

    bool involution = true, self_dual = true;
    for (const Vec& x : sampler.sample_points(F)) {
        for (const Jet2& J : sampler.sample_jets(dim)) {
            if (Fdd.margin_at(x, J) != F.margin_at(x, J)) involution = false;
            if (Fd.margin_at(x, J) != F.margin_at(x, J)) self_dual = false;
        }
    }
    const auto st = check_structure(Fd, sampler, 1e-6);

    json j;
    j["paper_ref"] = "Dirichlet duality of constraint sets";
    j["subeq"] = F.name;
    j["dual"] = Fd.name;
    j["involution_exact"] = involution;
    j["self_dual"] = self_dual;
    j["dual_structure"] = {{"positivity_ok", st.positivity_ok},
                           {"negativity_ok", st.negativity_ok},
                           {"t_proxy_ok", st.t_proxy_ok},
                           {"fibers_proper", st.fibers_proper}};
    emit(j, out);
    return involution ? kExitPass : kExitViolation;
}

int cmd_addition(const std::string& f_name, const std::string& g_name, const std::string& h_name,
                 const std::string& u_path, const std::string& v_path,
                 const std::vector<double>& box, double kappa, int samples, std::uint64_t seed,
                 const std::string& out) {
    const ScalarField u = read_field(u_path);
    const ScalarField v = read_field(v_path);
    const int n = u.spec.dim();
    const Subequation F = parse_subequation(f_name, n);
    const Subequation G = parse_subequation(g_name, n);
    const Subequation H = parse_subequation(h_name, n);
    JetSampler sampler;
    sampler.seed = seed;
    sampler.count = samples;
    const auto rep = subharmonic_addition_check(F, G, H, u, v, box_or_field(box, u), sampler,
                                                default_tol(u.spec, kappa));
    json j;
    j["paper_ref"] = "jet addition implies subharmonic addition";
    j["jet_addition_ok"] = rep.jet_addition_ok;
    j["u_in_F"] = report_to_json(rep.u_in_F, u.spec);
    j["v_in_G"] = report_to_json(rep.v_in_G, u.spec);
    j["sum_in_H"] = report_to_json(rep.sum_in_H, u.spec);
    j["pass"] = rep.pass;
    emit(j, out);
    if (!(rep.u_in_F.pass && rep.v_in_G.pass)) return kExitHypotheses;
    return rep.pass ? kExitPass : kExitViolation;
}

int cmd_onsums(const std::string& u_path, const std::string& v_path, const std::string& a_packed,
               double eps, double kappa, const std::string& out) {
    const ScalarField u = read_field(u_path);
    const ScalarField v = read_field(v_path);
    const SymMat A = a_packed.empty() ? SymMat(2) : parse_packed(a_packed, 2);
    const auto rep = on_sums_witness(u, v, A, eps, default_tol(u.spec, kappa));
    json j;
    j["paper_ref"] = "doubled-variable sum decomposition with the block sandwich";
    j["lambda"] = rep.lambda;
    j["A1"] = sym_to_json(rep.A1);
    j["A2"] = sym_to_json(rep.A2);
    j["witness_node"] = rep.witness_node;
    j["contact_u"] = {{"xi", rep.contact_u.xi_exact[0]},
                      {"within_one_cell", rep.contact_u.within_one_cell},
                      {"contact_ok", rep.contact_u.contact_ok}};
    j["contact_v"] = {{"xi", rep.contact_v.xi_exact[0]},
                      {"within_one_cell", rep.contact_v.within_one_cell},
                      {"contact_ok", rep.contact_v.contact_ok}};
    j["sandwich_ok"] = rep.sandwich_ok;
    j["pass"] = rep.pass;
    emit(j, out);
    return rep.pass ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcpot: quasi-convex analysis and nonlinear potential theory on grids"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    // gen
    std::string gen_expr, gen_out;
    std::vector<double> gen_box;
    std::vector<int> gen_shape;
    auto* gen = app.add_subcommand("gen", "sample an expression onto a grid field");
    gen->add_option("--expr", gen_expr, "expression over x, y, z")->required();
    gen->add_option("--box", gen_box, "lo hi pairs, one per axis")->required()->expected(-2);
    gen->add_option("--shape", gen_shape, "nodes per axis")->required()->expected(-1);
    gen->add_option("-o,--out", gen_out, "output field file")->required();

    // supconv
    double sc_eps = 0.1;
    std::string sc_in, sc_out, sc_report;
    auto* sc = app.add_subcommand("supconv", "sup-convolve a field");
    sc->add_option("--eps", sc_eps, "regularization parameter")->required();
    sc->add_option("in", sc_in, "input field")->required();
    sc->add_option("out", sc_out, "output field")->required();
    sc->add_option("--report", sc_report, "write the invariant-suite report");

    // legendre
    std::string lg_in, lg_out;
    std::vector<double> lg_dual_box;
    std::vector<int> lg_dual_shape;
    bool lg_bi = false;
    double lg_magic_r = 0.0, lg_magic_y = 0.0, lg_kappa = 10.0;
    auto* lg = app.add_subcommand("legendre", "discrete Legendre-Fenchel conjugate");
    lg->add_option("in", lg_in)->required();
    lg->add_option("-o,--out", lg_out)->required();
    lg->add_option("--dual-box", lg_dual_box, "dual grid lo hi pairs")->expected(-2);
    lg->add_option("--dual-shape", lg_dual_shape)->expected(-1);
    lg->add_flag("--bi", lg_bi, "emit the biconjugate (convex envelope) instead");
    lg->add_option("--magic-r", lg_magic_r,
                   "emit the inverse-function JSON report for r u + |.|^2/2 instead");
    lg->add_option("--magic-y", lg_magic_y, "dual slope probed by --magic-r");
    lg->add_option("--kappa", lg_kappa);

    // contact
    std::string ct_type, ct_in, ct_out, ct_grads;
    std::vector<double> ct_region;
    double ct_kappa = 10.0;
    auto* ct = app.add_subcommand("contact", "contact set of a fixed type");
    ct->add_option("--type", ct_type, "JSON file {n, upper:[...]}; omitted = flat type");
    ct->add_option("--region", ct_region, "lo hi pairs")->expected(-2);
    ct->add_option("--kappa", ct_kappa, "tolerance multiplier (tol = kappa h)");
    ct->add_option("--gradients", ct_grads, "write the per-node gradient report");
    ct->add_option("in", ct_in)->required();
    ct->add_option("out", ct_out, "output mask file")->required();

    // density
    double de_r = 0.25, de_R = 1.0, de_tol = 0.0;
    std::string de_rhos;
    std::string de_in, de_out;
    bool de_csv = false;
    auto* de = app.add_subcommand("density", "contact-set density ladder");
    de->add_option("--r", de_r)->required();
    de->add_option("--R", de_R)->required();
    de->add_option("--rho", de_rhos, "comma-separated ball radii")->required();
    de->add_option("--tol", de_tol, "hypothesis margin (default h^2/(8R))");
    de->add_flag("--csv", de_csv);
    de->add_option("-o,--out", de_out);
    de->add_option("field", de_in)->required();

    // jensen
    std::string je_in, je_out, je_A, je_point, je_p;
    double je_eps = 0.1, je_radius = 0.5, je_rho0 = 0.5, je_kappa = 10.0;
    bool je_csv = false;
    auto* je = app.add_subcommand("jensen", "positive-measure ladder at a strict jet");
    je->add_option("--x", je_point, "witness point, comma-separated coordinates");
    je->add_option("--p", je_p, "witness gradient, comma-separated");
    je->add_option("--A", je_A, "witness matrix, packed upper triangle");
    je->add_option("--eps-strict", je_eps)->required();
    je->add_option("--radius", je_radius)->required();
    je->add_option("--rho0", je_rho0)->required();
    je->add_option("--kappa", je_kappa);
    je->add_flag("--csv", je_csv);
    je->add_option("-o,--out", je_out);
    je->add_option("field", je_in)->required();

    // alexandrov
    std::string al_in, al_out;
    std::vector<double> al_box;
    double al_kappa = 10.0;
    auto* al = app.add_subcommand("alexandrov", "maximum-principle and area estimates");
    al->add_option("--box", al_box)->expected(-2);
    al->add_option("--kappa", al_kappa);
    al->add_option("-o,--out", al_out);
    al->add_option("field", al_in)->required();

    // check
    std::string ch_subeq, ch_mode = "ae", ch_in, ch_out;
    std::vector<double> ch_box;
    double ch_kappa = 10.0, ch_radius = 5.0;
    int ch_nodes = 50;
    std::uint64_t ch_seed = 1;
    auto* ch = app.add_subcommand("check", "verify subharmonicity of a field");
    ch->add_option("--subeq", ch_subeq)->required();
    ch->add_option("--mode", ch_mode, "ae | visc");
    ch->add_option("--box", ch_box)->expected(-2);
    ch->add_option("--kappa", ch_kappa);
    ch->add_option("--radius", ch_radius, "test-jet radius in grid spacings (visc)");
    ch->add_option("--nodes", ch_nodes, "sampled nodes (visc)");
    ch->add_option("--seed", ch_seed);
    ch->add_option("-o,--out", ch_out);
    ch->add_option("field", ch_in)->required();

    // compare
    std::string cp_subeq, cp_u, cp_v, cp_out;
    std::vector<double> cp_box;
    double cp_kappa = 10.0;
    auto* cp = app.add_subcommand("compare", "zero-maximum-principle experiment");
    cp->add_option("--subeq", cp_subeq)->required();
    cp->add_option("--box", cp_box)->expected(-2);
    cp->add_option("--kappa", cp_kappa);
    cp->add_option("-o,--out", cp_out);
    cp->add_option("u", cp_u)->required();
    cp->add_option("v", cp_v)->required();

    // dual
    std::string du_subeq, du_out;
    int du_dim = 2, du_samples = 1000;
    std::uint64_t du_seed = 1;
    auto* du = app.add_subcommand("dual", "duality diagnostics of a named margin");
    du->add_option("--subeq", du_subeq)->required();
    du->add_option("--dim", du_dim);
    du->add_option("--samples", du_samples);
    du->add_option("--seed", du_seed);
    du->add_option("-o,--out", du_out);

    // addition
    std::string ad_f, ad_g, ad_h, ad_u, ad_v, ad_out;
    std::vector<double> ad_box;
    double ad_kappa = 10.0;
    int ad_samples = 600;
    std::uint64_t ad_seed = 1;
    auto* ad = app.add_subcommand("addition", "subharmonic addition experiment");
    ad->add_option("--F", ad_f)->required();
    ad->add_option("--G", ad_g)->required();
    ad->add_option("--H", ad_h)->required();
    ad->add_option("--box", ad_box)->expected(-2);
    ad->add_option("--kappa", ad_kappa);
    ad->add_option("--samples", ad_samples);
    ad->add_option("--seed", ad_seed);
    ad->add_option("-o,--out", ad_out);
    ad->add_option("u", ad_u)->required();
    ad->add_option("v", ad_v)->required();

    // onsums
    std::string os_u, os_v, os_A, os_out;
    double os_eps = 0.1, os_kappa = 10.0;
    auto* osums = app.add_subcommand("onsums", "doubled-variable decomposition pipeline");
    osums->add_option("--A", os_A, "2x2 jet matrix, packed upper triangle a00,a01,a11");
    osums->add_option("--eps", os_eps)->required();
    osums->add_option("--kappa", os_kappa);
    osums->add_option("-o,--out", os_out);
    osums->add_option("u", os_u)->required();
    osums->add_option("v", os_v)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    set_thread_count(threads);
    try {
        if (*gen) return cmd_gen(gen_expr, gen_box, gen_shape, gen_out);
        if (*sc) return cmd_supconv(sc_eps, sc_in, sc_out, sc_report);
        if (*lg)
            return cmd_legendre(lg_in, lg_out, lg_dual_box, lg_dual_shape, lg_bi,
                                lg_magic_r, lg_magic_y, lg_kappa);
        if (*ct) return cmd_contact(ct_type, ct_region, ct_in, ct_out, ct_kappa, ct_grads);
        if (*de) return cmd_density(de_r, de_R, de_rhos, de_in, de_tol, de_csv, de_out);
        if (*je)
            return cmd_jensen(je_in, je_point, je_p, je_A, je_eps, je_radius, je_rho0, je_kappa,
                              je_csv, je_out);
        if (*al) return cmd_alexandrov(al_in, al_box, al_kappa, al_out);
        if (*ch)
            return cmd_check(ch_subeq, ch_mode, ch_in, ch_box, ch_kappa, ch_radius, ch_nodes,
                             ch_seed, ch_out);
        if (*cp) return cmd_compare(cp_subeq, cp_u, cp_v, cp_box, cp_kappa, cp_out);
        if (*du) return cmd_dual(du_subeq, du_dim, du_samples, du_seed, du_out);
        if (*ad)
            return cmd_addition(ad_f, ad_g, ad_h, ad_u, ad_v, ad_box, ad_kappa, ad_samples,
                                ad_seed, ad_out);
        if (*osums) return cmd_onsums(os_u, os_v, os_A, os_eps, os_kappa, os_out);
    } catch (const HypothesisError& e) {
        std::cerr << "qcpot: hypotheses unmet: " << e.what() << "\n";
        return kExitHypotheses;
    } catch (const Error& e) {
        std::cerr << "qcpot: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "qcpot: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
