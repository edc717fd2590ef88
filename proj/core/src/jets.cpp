#include "qcpot/jets.hpp"

#include <algorithm>
#include <cmath>

namespace qcpot {

SymMat::SymMat(int n) : n_(n) {
    if (n < 1 || n > kMaxDim) throw Error("SymMat dimension must be 1..3");
}

SymMat SymMat::identity(int n, double s) {
    SymMat m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, s);
    return m;
}

SymMat SymMat::diag(std::initializer_list<double> d) {
    SymMat m(static_cast<int>(d.size()));
    int i = 0;
    for (double v : d) {
        m.set(i, i, v);
        ++i;
    }
    return m;
}

SymMat SymMat::from_packed(int n, const std::vector<double>& upper) {
    SymMat m(n);
    if (static_cast<int>(upper.size()) != m.packed_size())
        throw Error("packed symmetric matrix has wrong length");
    for (int k = 0; k < m.packed_size(); ++k) m.a_[static_cast<size_t>(k)] = upper[static_cast<size_t>(k)];
    return m;
}

int SymMat::idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    // row-major upper triangle: row i starts after i*n - i*(i-1)/2 entries
    return i * n_ - i * (i - 1) / 2 + (j - i);
}

double SymMat::at(int i, int j) const { return a_[static_cast<size_t>(idx(i, j))]; }

void SymMat::set(int i, int j, double v) { a_[static_cast<size_t>(idx(i, j))] = v; }

std::vector<double> SymMat::packed_vector() const {
    return std::vector<double>(a_.begin(), a_.begin() + packed_size());
}

double SymMat::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

double SymMat::det() const {
    switch (n_) {
        case 1:
            return at(0, 0);
        case 2:
            return at(0, 0) * at(1, 1) - at(0, 1) * at(0, 1);
        default: {
            const double a = at(0, 0), b = at(0, 1), c = at(0, 2);
            const double d = at(1, 1), e = at(1, 2), f = at(2, 2);
            return a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c);
        }
    }
}

double SymMat::max_abs_entry() const {
    double m = 0.0;
    for (int k = 0; k < packed_size(); ++k) m = std::max(m, std::fabs(a_[static_cast<size_t>(k)]));
    return m;
}

SymMat SymMat::operator+(const SymMat& o) const {
    if (o.n_ != n_) throw Error("SymMat dimension mismatch");
    SymMat r(n_);
    for (int k = 0; k < packed_size(); ++k)
        r.a_[static_cast<size_t>(k)] = a_[static_cast<size_t>(k)] + o.a_[static_cast<size_t>(k)];
    return r;
}

SymMat SymMat::operator-(const SymMat& o) const {
    if (o.n_ != n_) throw Error("SymMat dimension mismatch");
    SymMat r(n_);
    for (int k = 0; k < packed_size(); ++k)
        r.a_[static_cast<size_t>(k)] = a_[static_cast<size_t>(k)] - o.a_[static_cast<size_t>(k)];
    return r;
}

SymMat SymMat::operator-() const {
    SymMat r(n_);
    for (int k = 0; k < packed_size(); ++k) r.a_[static_cast<size_t>(k)] = -a_[static_cast<size_t>(k)];
    return r;
}

SymMat SymMat::scaled(double t) const {
    SymMat r(n_);
    for (int k = 0; k < packed_size(); ++k) r.a_[static_cast<size_t>(k)] = t * a_[static_cast<size_t>(k)];
    return r;
}

Vec SymMat::apply(const Vec& x) const {
    Vec y = vec_zero();
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += at(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = s;
    }
    return y;
}

Jet2 Jet2::operator+(const Jet2& o) const {
    return Jet2(r + o.r, add(p, o.p), A + o.A);
}

Jet2 Jet2::operator-() const { return Jet2(-r, scale(p, -1.0), -A); }

namespace {

// One full cyclic Jacobi pass over the off-diagonal entries of a 3x3 matrix.
void jacobi3(double a[3][3], double q[3][3]) {
    for (int p = 0; p < 3; ++p)
        for (int r = 0; r < 3; ++r) q[p][r] = (p == r) ? 1.0 : 0.0;

    auto off2 = [&]() {
        return a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    };
    const double scale2 = a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2] + 2.0 * off2();
    const double thresh = 1e-28 * (1.0 + scale2);

    for (int sweep = 0; sweep < 50; ++sweep) {
        if (off2() <= thresh) break;
        for (int p = 0; p < 3; ++p) {
            for (int r = p + 1; r < 3; ++r) {
                if (std::fabs(a[p][r]) <= 1e-300) {
                    a[p][r] = a[r][p] = 0.0;
                    continue;
                }
                const double theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double apr = a[p][r];
                a[p][p] -= t * apr;
                a[r][r] += t * apr;
                a[p][r] = a[r][p] = 0.0;
                for (int k = 0; k < 3; ++k) {
                    if (k != p && k != r) {
                        const double akp = a[k][p], akr = a[k][r];
                        a[k][p] = a[p][k] = akp - s * (akr + tau * akp);
                        a[k][r] = a[r][k] = akr + s * (akp - tau * akr);
                    }
                    const double qkp = q[k][p], qkr = q[k][r];
                    q[k][p] = qkp - s * (qkr + tau * qkp);
                    q[k][r] = qkr + s * (qkp - tau * qkr);
                }
            }
        }
    }
}

}  // namespace

EigSys eig_sym_full(const SymMat& A) {
    EigSys out;
    const int n = A.dim();
    if (n == 1) {
        out.values = {A.at(0, 0)};
        out.vectors[0] = {1.0, 0.0, 0.0};
        return out;
    }
    if (n == 2) {
        const double a = A.at(0, 0), b = A.at(0, 1), d = A.at(1, 1);
        const double mean = 0.5 * (a + d);
        const double rad = std::hypot(0.5 * (a - d), b);
        const double l1 = mean - rad, l2 = mean + rad;
        out.values = {l1, l2};
        // eigenvector for l2: (b, l2-a) or (l2-d, b), whichever is better conditioned
        double vx, vy;
        if (std::fabs(b) > 1e-300) {
            vx = b;
            vy = l2 - a;
        } else if (a >= d) {
            vx = 1.0;
            vy = 0.0;
        } else {
            vx = 0.0;
            vy = 1.0;
        }
        const double nv = std::hypot(vx, vy);
        vx /= nv;
        vy /= nv;
        out.vectors[1] = {vx, vy, 0.0};
        out.vectors[0] = {-vy, vx, 0.0};
        return out;
    }

    double a[3][3], q[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = A.at(i, j);
    jacobi3(a, q);

    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a[i][i] < a[j][j]; });
    out.values = {a[order[0]][order[0]], a[order[1]][order[1]], a[order[2]][order[2]]};
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < 3; ++k) out.vectors[static_cast<size_t>(c)][static_cast<size_t>(k)] = q[k][order[static_cast<size_t>(c)]];
    return out;
}

std::vector<double> eig_sym(const SymMat& A) { return eig_sym_full(A).values; }

double spectral_norm(const SymMat& A) {
    const auto ev = eig_sym(A);
    return std::max(std::fabs(ev.front()), std::fabs(ev.back()));
}

bool loewner_geq(const SymMat& A, const SymMat& B, double tol) {
    if (A.dim() != B.dim()) throw Error("SymMat dimension mismatch");
    if (tol < 0) throw Error("loewner_geq: tolerance must be nonnegative");
    return lambda_min(A - B) >= -tol;
}

double quad_form(const SymMat& A, const Vec& y) {
    return 0.5 * dot(A.apply(y), y, A.dim());
}

}  // namespace qcpot
