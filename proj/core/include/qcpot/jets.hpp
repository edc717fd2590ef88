#pragma once

#include <vector>

#include "qcpot/common.hpp"

namespace qcpot {

/// Small dense symmetric matrix (n = 1..3), stored as the packed upper
/// triangle in row-major order, so symmetry holds by representation.
class SymMat {
public:
    explicit SymMat(int n);

    static SymMat identity(int n, double s = 1.0);
    static SymMat diag(std::initializer_list<double> d);
    static SymMat from_packed(int n, const std::vector<double>& upper);

    int dim() const { return n_; }
    int packed_size() const { return n_ * (n_ + 1) / 2; }

    double at(int i, int j) const;
    void set(int i, int j, double v);

    const std::array<double, 6>& packed() const { return a_; }
    std::vector<double> packed_vector() const;

    double trace() const;
    double det() const;
    double max_abs_entry() const;

    SymMat operator+(const SymMat& o) const;
    SymMat operator-(const SymMat& o) const;
    SymMat operator-() const;
    SymMat scaled(double t) const;

    /// y = A x (length-n matrix-vector product).
    Vec apply(const Vec& x) const;

private:
    int idx(int i, int j) const;

    int n_;
    std::array<double, 6> a_{};
};

/// A 2-jet (r, p, A): value, gradient, Hessian.
struct Jet2 {
    double r = 0.0;
    Vec p = vec_zero();
    SymMat A;

    Jet2() : A(1) {}
    Jet2(double r_, const Vec& p_, const SymMat& A_) : r(r_), p(p_), A(A_) {}

    int dim() const { return A.dim(); }
    Jet2 operator+(const Jet2& o) const;
    Jet2 operator-() const;
};

/// Eigenvalues in ascending order. Closed-form for n = 1, 2; cyclic Jacobi
/// rotations for n = 3 (off-diagonal norm below 1e-14 relative, or 50 sweeps).
std::vector<double> eig_sym(const SymMat& A);

/// Eigen decomposition with an orthonormal basis, columns ordered to match
/// the ascending eigenvalues.
struct EigSys {
    std::vector<double> values;
    std::array<std::array<double, 3>, 3> vectors{};  // vectors[i] = column i
};
EigSys eig_sym_full(const SymMat& A);

inline double lambda_min(const SymMat& A) { return eig_sym(A).front(); }
inline double lambda_max(const SymMat& A) { return eig_sym(A).back(); }

/// Spectral norm (largest absolute eigenvalue).
double spectral_norm(const SymMat& A);

/// Loewner comparison: A >= B - tol, i.e. lambda_min(A - B) >= -tol.
bool loewner_geq(const SymMat& A, const SymMat& B, double tol);

/// The normalized quadratic form Q_A(y) = (1/2) <A y, y>.
double quad_form(const SymMat& A, const Vec& y);

}  // namespace qcpot
