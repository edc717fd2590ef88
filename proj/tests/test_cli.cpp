#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qcpot/field_io.hpp"

#ifndef QCPOT_CLI_PATH
#define QCPOT_CLI_PATH "qcpot"
#endif

using namespace qcpot;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string tmp_file(const char* suffix) {
    char buf[] = "/tmp/qcpot-test-XXXXXX";
    const int fd = mkstemp(buf);
    REQUIRE(fd >= 0);
    close(fd);
    std::remove(buf);
    return std::string(buf) + suffix;
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = tmp_file(".out");
    const std::string cmd = std::string(QCPOT_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WEXITSTATUS(rc);
    std::ifstream is(out_path);
    std::stringstream ss;
    ss << is.rdbuf();
    res.output = ss.str();
    std::remove(out_path.c_str());
    return res;
}

}  // namespace

TEST_CASE("gen then read reproduces the expression bit-exactly") {
    const std::string path = tmp_file(".field");
    const auto r = run_cli("gen --expr \"0.5*x^2\" --box -1 1 --shape 101 -o " + path);
    REQUIRE(r.exit_code == 0);
    const ScalarField f = read_field(path);
    CHECK(f.spec.size() == 101);
    for (std::size_t k = 0; k < f.spec.size(); ++k) {
        const double x = f.spec.node(k)[0];
        CHECK(f.values[k] == 0.5 * x * x);
    }

    // writing the parsed field back reproduces the file contents
    const std::string path2 = tmp_file(".field");
    write_field(path2, f);
    std::ifstream a(path), b(path2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("legendre of the half parabola is its own conjugate") {
    const std::string f = tmp_file(".field"), g = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0.5*x^2\" --box -3 3 --shape 121 -o " + f).exit_code == 0);
    REQUIRE(run_cli("legendre " + f + " -o " + g + " --dual-box -2 2 --dual-shape 81").exit_code ==
            0);
    const ScalarField conj = read_field(g);
    for (std::size_t k = 0; k < conj.spec.size(); ++k) {
        const double y = conj.spec.node(k)[0];
        CHECK(std::fabs(conj.values[k] - 0.5 * y * y) <= 0.01);
    }
    std::remove(f.c_str());
    std::remove(g.c_str());
}

TEST_CASE("exit codes separate pass, usage, hypotheses, violation") {
    const std::string f = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0.5*(x^2+y^2)\" --box -1 1 -1 1 --shape 21 21 -o " + f)
                .exit_code == 0);

    CHECK(run_cli("check --subeq pcone " + f).exit_code == 0);
    CHECK(run_cli("check --badflag " + f).exit_code == 1);
    CHECK(run_cli("check --subeq no-such-margin " + f).exit_code == 1);

    const std::string c = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0-(x^2)-(y^2)\" --box -1 1 -1 1 --shape 21 21 -o " + c)
                .exit_code == 0);
    CHECK(run_cli("check --subeq pcone " + c).exit_code == 3);

    // density hypotheses: x^2 exceeds |x|^2/(2R) for R = 1
    const std::string d = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"x^2\" --box -1 1 --shape 41 -o " + d).exit_code == 0);
    CHECK(run_cli("density --r 1 --R 1 --rho 0.5 " + d).exit_code == 2);

    std::remove(f.c_str());
    std::remove(c.c_str());
    std::remove(d.c_str());
}

TEST_CASE("reports are byte-identical across reruns with the same seed") {
    const std::string f = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0.5*(x^2+y^2)\" --box -1 1 -1 1 --shape 15 15 -o " + f)
                .exit_code == 0);
    const auto a = run_cli("check --subeq pcone --mode visc --nodes 5 --seed 7 " + f);
    const auto b = run_cli("check --subeq pcone --mode visc --nodes 5 --seed 7 " + f);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    const auto da = run_cli("dual --subeq subaffineplus --dim 2 --samples 256 --seed 3");
    const auto db = run_cli("dual --subeq subaffineplus --dim 2 --samples 256 --seed 3");
    CHECK(da.exit_code == 0);
    CHECK(da.output == db.output);
    std::remove(f.c_str());
}

TEST_CASE("contact masks round trip through the CLI") {
    const std::string f = tmp_file(".field"), m = tmp_file(".mask");
    REQUIRE(run_cli("gen --expr \"0-abs(x)\" --box -1 1 --shape 41 -o " + f).exit_code == 0);
    REQUIRE(run_cli("contact " + f + " " + m).exit_code == 0);
    const GridMask mask = read_mask(m);
    CHECK(mask.count() == mask.spec.size());  // concave: every node flat contact
    std::remove(f.c_str());
    std::remove(m.c_str());
}

TEST_CASE("compare command drives the dual-pair experiment") {
    const std::string u = tmp_file(".field"), v = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"x^2-y^2\" --box -1 1 -1 1 --shape 21 21 -o " + u).exit_code ==
            0);
    REQUIRE(run_cli("gen --expr \"y^2-x^2\" --box -1 1 -1 1 --shape 21 21 -o " + v).exit_code ==
            0);
    const auto rep = run_cli("compare --subeq laplacian " + u + " " + v);
    CHECK(rep.exit_code == 0);
    CHECK(rep.output.find("\"pass\": true") != std::string::npos);

    // swap in a non-subharmonic u: hypotheses unmet
    const std::string w = tmp_file(".field");
    REQUIRE(
        run_cli("gen --expr \"0-(x^2)-(y^2)\" --box -1 1 -1 1 --shape 21 21 -o " + w).exit_code ==
        0);
    CHECK(run_cli("compare --subeq laplacian " + w + " " + v).exit_code == 2);
    std::remove(u.c_str());
    std::remove(v.c_str());
    std::remove(w.c_str());
}

TEST_CASE("jensen and alexandrov commands run end to end") {
    const std::string f = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0-(x^2)-(y^2)\" --box -1 1 -1 1 --shape 21 21 -o " + f)
                .exit_code == 0);
    const auto je = run_cli("jensen --x 0,0 --eps-strict 0.4 --radius 0.8 --rho0 0.8 " + f);
    CHECK(je.exit_code == 0);
    CHECK(je.output.find("\"all_positive\": true") != std::string::npos);

    const std::string g = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"1-(x^2)-(y^2)\" --box -1 1 -1 1 --shape 21 21 -o " + g)
                .exit_code == 0);
    const auto al = run_cli("alexandrov " + g);
    CHECK(al.exit_code == 0);
    CHECK(al.output.find("\"mp_ok\": true") != std::string::npos);
    std::remove(f.c_str());
    std::remove(g.c_str());
}

TEST_CASE("addition and onsums commands run end to end") {
    const std::string u = tmp_file(".field"), v = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0.5*(x^2+y^2)\" --box -1 1 -1 1 --shape 21 21 -o " + u)
                .exit_code == 0);
    REQUIRE(run_cli("gen --expr \"x^2-y^2\" --box -1 1 -1 1 --shape 21 21 -o " + v).exit_code ==
            0);
    const auto ad = run_cli("addition --F pcone --G subaffine --H subaffine " + u + " " + v);
    CHECK(ad.exit_code == 0);

    const std::string k = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0-abs(x)\" --box -1 1 --shape 201 -o " + k).exit_code == 0);
    const auto osr = run_cli("onsums " + k + " " + k + " --eps 0.1 --A 0,0,0");
    CHECK(osr.exit_code == 0);
    CHECK(osr.output.find("\"sandwich_ok\": true") != std::string::npos);
    std::remove(u.c_str());
    std::remove(v.c_str());
    std::remove(k.c_str());
}

TEST_CASE("legendre --magic-r emits the inverse-function report") {
    const std::string f = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0.5*x^2\" --box -1 1 --shape 101 -o " + f).exit_code == 0);
    const auto rep = run_cli("legendre " + f + " -o - --magic-r 1 --magic-y 0.5");
    CHECK(rep.exit_code == 0);
    for (const char* key : {"\"x0\"", "\"B\"", "\"H\"", "\"residual\"", "\"pass\": true"})
        CHECK(rep.output.find(key) != std::string::npos);
    std::remove(f.c_str());
}

TEST_CASE("viscosity check reports bad jets in the documented shape") {
    const std::string f = tmp_file(".field");
    REQUIRE(run_cli("gen --expr \"0-(x^2)\" --box -1 1 --shape 101 -o " + f).exit_code == 0);
    const auto rep = run_cli("check --subeq pcone --mode visc --nodes 3 --seed 5 " + f);
    CHECK(rep.exit_code == 3);
    for (const char* key : {"\"bad_jets\"", "\"jet\"", "\"r\"", "\"p\"", "\"A\""})
        CHECK(rep.output.find(key) != std::string::npos);
    std::remove(f.c_str());
}

TEST_CASE("contact --type reads the packed JSON matrix") {
    const std::string f = tmp_file(".field"), m = tmp_file(".mask"), t = tmp_file(".json");
    {
        std::ofstream os(t);
        os << "{\"n\": 1, \"upper\": [1.0]}\n";
    }
    REQUIRE(run_cli("gen --expr \"0.25*x^2\" --box -1 1 --shape 41 -o " + f).exit_code == 0);
    REQUIRE(run_cli("contact --type " + t + " " + f + " " + m).exit_code == 0);
    const GridMask mask = read_mask(m);
    CHECK(mask.count() == mask.spec.size());  // curvature 1/2 below the type scale 1
    std::remove(f.c_str());
    std::remove(m.c_str());
    std::remove(t.c_str());
}
