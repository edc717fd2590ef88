#include "qcpot/field_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qcpot {

std::string format_value(double v) {
    if (v == kNegInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_header(std::ostream& os, const char* magic, const GridSpec& g) {
    os << magic << "\n";
    os << "dim " << g.dim() << "\n";
    os << "lo";
    for (int i = 0; i < g.dim(); ++i) os << ' ' << format_value(g.box().lo[static_cast<size_t>(i)]);
    os << "\nhi";
    for (int i = 0; i < g.dim(); ++i) os << ' ' << format_value(g.box().hi[static_cast<size_t>(i)]);
    os << "\nshape";
    for (int i = 0; i < g.dim(); ++i) os << ' ' << g.shape()[static_cast<size_t>(i)];
    os << "\n";
}

GridSpec read_header(std::istream& is, const char* magic) {
    std::string line;
    if (!std::getline(is, line) || line != magic)
        throw Error(std::string("bad header, expected `") + magic + "`");

    auto expect_key = [&](const char* key) {
        std::string tok;
        if (!(is >> tok) || tok != key) throw Error(std::string("expected `") + key + "` line");
    };

    expect_key("dim");
    int n = 0;
    if (!(is >> n) || n < 1 || n > kMaxDim) throw Error("bad dim");

    Vec lo = vec_zero(), hi = vec_zero();
    expect_key("lo");
    for (int i = 0; i < n; ++i)
        if (!(is >> lo[static_cast<size_t>(i)])) throw Error("bad lo line");
    expect_key("hi");
    for (int i = 0; i < n; ++i)
        if (!(is >> hi[static_cast<size_t>(i)])) throw Error("bad hi line");

    IVec shape = {1, 1, 1};
    expect_key("shape");
    for (int i = 0; i < n; ++i)
        if (!(is >> shape[static_cast<size_t>(i)])) throw Error("bad shape line");

    return GridSpec(Box(n, lo, hi), shape);
}

double parse_value(const std::string& tok) {
    if (tok == "-inf") return kNegInf;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') throw Error("bad value token: " + tok);
    return v;
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& field) {
    write_header(os, "qcpot-field v1", field.spec);
    const IVec shape = field.spec.shape();
    const std::size_t row = static_cast<std::size_t>(shape[static_cast<size_t>(field.spec.dim() - 1)]);
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        os << format_value(field.values[k]);
        os << ((k % row == row - 1) ? '\n' : ' ');
    }
}

void write_field(const std::string& path, const ScalarField& field) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    write_field(os, field);
}

ScalarField read_field(std::istream& is) {
    const GridSpec g = read_header(is, "qcpot-field v1");
    std::vector<double> values(g.size());
    std::string tok;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!(is >> tok)) throw Error("field truncated");
        values[k] = parse_value(tok);
    }
    return ScalarField(g, std::move(values));
}

ScalarField read_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open: " + path);
    return read_field(is);
}

void write_mask(std::ostream& os, const GridMask& mask) {
    write_header(os, "qcpot-mask v1", mask.spec);
    const IVec shape = mask.spec.shape();
    const std::size_t row = static_cast<std::size_t>(shape[static_cast<size_t>(mask.spec.dim() - 1)]);
    for (std::size_t k = 0; k < mask.bits.size(); ++k) {
        os << (mask.bits[k] ? '1' : '0');
        os << ((k % row == row - 1) ? '\n' : ' ');
    }
}

void write_mask(const std::string& path, const GridMask& mask) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    write_mask(os, mask);
}

GridMask read_mask(std::istream& is) {
    const GridSpec g = read_header(is, "qcpot-mask v1");
    GridMask mask(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        int b = 0;
        if (!(is >> b)) throw Error("mask truncated");
        mask.bits[k] = b ? 1 : 0;
    }
    return mask;
}

GridMask read_mask(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open: " + path);
    return read_mask(is);
}

}  // namespace qcpot
