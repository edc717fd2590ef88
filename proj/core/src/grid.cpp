#include "qcpot/grid.hpp"

#include <algorithm>
#include <cmath>

namespace qcpot {

Box::Box(int n, const Vec& lo_, const Vec& hi_) : dim(n), lo(lo_), hi(hi_) {
    if (n < 1 || n > kMaxDim) throw Error("box dimension must be 1..3");
    for (int i = 0; i < n; ++i) {
        if (!(lo[static_cast<size_t>(i)] < hi[static_cast<size_t>(i)]))
            throw Error("box must satisfy lo < hi on every axis");
        if (!std::isfinite(lo[static_cast<size_t>(i)]) || !std::isfinite(hi[static_cast<size_t>(i)]))
            throw Error("box bounds must be finite");
    }
}

Box Box::make(std::initializer_list<double> lo_, std::initializer_list<double> hi_) {
    if (lo_.size() != hi_.size()) throw Error("box lo/hi length mismatch");
    return Box(static_cast<int>(lo_.size()), vec_of(lo_), vec_of(hi_));
}

bool Box::contains(const Vec& x, double tol) const {
    for (int i = 0; i < dim; ++i) {
        const auto k = static_cast<size_t>(i);
        if (x[k] < lo[k] - tol || x[k] > hi[k] + tol) return false;
    }
    return true;
}

double Box::diameter() const { return dist(lo, hi, dim); }

Vec Box::center() const {
    Vec c = vec_zero();
    for (int i = 0; i < dim; ++i)
        c[static_cast<size_t>(i)] = 0.5 * (lo[static_cast<size_t>(i)] + hi[static_cast<size_t>(i)]);
    return c;
}

Box Box::shrunk(double delta) const {
    Vec l = lo, h = hi;
    for (int i = 0; i < dim; ++i) {
        l[static_cast<size_t>(i)] += delta;
        h[static_cast<size_t>(i)] -= delta;
        if (!(l[static_cast<size_t>(i)] < h[static_cast<size_t>(i)]))
            throw Error("shrunk box is empty");
    }
    return Box(dim, l, h);
}

GridSpec::GridSpec(const Box& box, const IVec& shape) : box_(box), shape_(shape) {
    size_ = 1;
    for (int i = 0; i < box_.dim; ++i) {
        const auto k = static_cast<size_t>(i);
        if (shape_[k] < 3) throw Error("grid shape must be >= 3 on every axis");
        h_[k] = (box_.hi[k] - box_.lo[k]) / static_cast<double>(shape_[k] - 1);
        size_ *= static_cast<std::size_t>(shape_[k]);
    }
    for (int i = box_.dim; i < kMaxDim; ++i) shape_[static_cast<size_t>(i)] = 1;
}

GridSpec GridSpec::make(std::initializer_list<double> lo, std::initializer_list<double> hi,
                        std::initializer_list<int> shape) {
    if (shape.size() > kMaxDim) throw Error("grid dimension must be 1..3");
    IVec s = {1, 1, 1};
    int i = 0;
    for (int v : shape) s[static_cast<size_t>(i++)] = v;
    return GridSpec(Box::make(lo, hi), s);
}

double GridSpec::max_spacing() const {
    double m = 0.0;
    for (int i = 0; i < dim(); ++i) m = std::max(m, h_[static_cast<size_t>(i)]);
    return m;
}

double GridSpec::min_spacing() const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim(); ++i) m = std::min(m, h_[static_cast<size_t>(i)]);
    return m;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= h_[static_cast<size_t>(i)];
    return v;
}

IVec GridSpec::multi(std::size_t flat) const {
    IVec m = {0, 0, 0};
    for (int i = dim() - 1; i >= 0; --i) {
        const auto k = static_cast<size_t>(i);
        const auto n = static_cast<std::size_t>(shape_[k]);
        m[k] = static_cast<int>(flat % n);
        flat /= n;
    }
    return m;
}

std::size_t GridSpec::flat(const IVec& m) const {
    std::size_t f = 0;
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<size_t>(i);
        f = f * static_cast<std::size_t>(shape_[k]) + static_cast<std::size_t>(m[k]);
    }
    return f;
}

Vec GridSpec::node(std::size_t flat_idx) const { return node(multi(flat_idx)); }

Vec GridSpec::node(const IVec& m) const {
    Vec x = vec_zero();
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<size_t>(i);
        x[k] = box_.lo[k] + static_cast<double>(m[k]) * h_[k];
    }
    return x;
}

bool GridSpec::interior(std::size_t flat_idx) const {
    const IVec m = multi(flat_idx);
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<size_t>(i);
        if (m[k] < 1 || m[k] > shape_[k] - 2) return false;
    }
    return true;
}

std::size_t GridSpec::nearest(const Vec& x) const {
    IVec m = {0, 0, 0};
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<size_t>(i);
        const double t = (x[k] - box_.lo[k]) / h_[k];
        int j = static_cast<int>(std::lround(t));
        j = std::clamp(j, 0, shape_[k] - 1);
        m[k] = j;
    }
    return flat(m);
}

bool GridSpec::same_grid(const GridSpec& o) const {
    if (o.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<size_t>(i);
        if (shape_[k] != o.shape_[k]) return false;
        if (box_.lo[k] != o.box_.lo[k] || box_.hi[k] != o.box_.hi[k]) return false;
    }
    return true;
}

ScalarField::ScalarField(const GridSpec& s, std::vector<double> v)
    : spec(s), values(std::move(v)) {
    if (values.size() != spec.size()) throw Error("field values length mismatch");
    for (double x : values)
        if (std::isnan(x) || x == std::numeric_limits<double>::infinity())
            throw Error("field entries must be finite or -inf");
}

bool ScalarField::has_neg_inf() const {
    for (double v : values)
        if (v == kNegInf) return true;
    return false;
}

double ScalarField::max_value() const {
    double m = kNegInf;
    for (double v : values) m = std::max(m, v);
    return m;
}

double ScalarField::max_abs_finite() const {
    double m = 0.0;
    for (double v : values)
        if (v != kNegInf) m = std::max(m, std::fabs(v));
    return m;
}

std::size_t GridMask::count() const {
    std::size_t c = 0;
    for (auto b : bits) c += b ? 1 : 0;
    return c;
}

ScalarField build_field(const GridSpec& spec, const std::function<double(const Vec&)>& generator) {
    std::vector<double> values(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) values[k] = generator(spec.node(k));
    return ScalarField(spec, std::move(values));
}

Jet2 numeric_jet(const ScalarField& field, std::size_t index) {
    const GridSpec& g = field.spec;
    const int n = g.dim();
    if (!g.interior(index)) throw Error("non-interior node");

    const IVec m = g.multi(index);
    auto shifted = [&](int axis, int d1, int axis2, int d2) {
        IVec mm = m;
        mm[static_cast<size_t>(axis)] += d1;
        if (axis2 >= 0) mm[static_cast<size_t>(axis2)] += d2;
        const double v = field.values[g.flat(mm)];
        if (v == kNegInf) throw Error("undefined jet");
        return v;
    };

    const double u0 = field.values[index];
    if (u0 == kNegInf) throw Error("undefined jet");

    Jet2 jet(u0, vec_zero(), SymMat(n));
    for (int i = 0; i < n; ++i) {
        const double hi = g.spacing()[static_cast<size_t>(i)];
        const double up = shifted(i, +1, -1, 0);
        const double um = shifted(i, -1, -1, 0);
        jet.p[static_cast<size_t>(i)] = (up - um) / (2.0 * hi);
        jet.A.set(i, i, (up - 2.0 * u0 + um) / (hi * hi));
        for (int j = i + 1; j < n; ++j) {
            const double hj = g.spacing()[static_cast<size_t>(j)];
            const double upp = shifted(i, +1, j, +1);
            const double upm = shifted(i, +1, j, -1);
            const double ump = shifted(i, -1, j, +1);
            const double umm = shifted(i, -1, j, -1);
            jet.A.set(i, j, (upp - upm - ump + umm) / (4.0 * hi * hj));
        }
    }
    return jet;
}

double mask_measure(const GridMask& mask) {
    return static_cast<double>(mask.count()) * mask.spec.cell_volume();
}

}  // namespace qcpot
