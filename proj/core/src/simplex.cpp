#include "qcpot/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace qcpot {

namespace {

constexpr double kPivotEps = 1e-11;

// Dense tableau for min c.x, T x = d, x >= 0 with d >= 0 and an identity
// start basis in the artificial columns. Bland's rule throughout.
class Tableau {
public:
    Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_(static_cast<size_t>(rows * (cols + 1)), 0.0),
                                  obj_(static_cast<size_t>(cols + 1), 0.0), basis_(static_cast<size_t>(rows), -1) {}

    double& at(int r, int c) { return t_[static_cast<size_t>(r * (cols_ + 1) + c)]; }
    double& rhs(int r) { return t_[static_cast<size_t>(r * (cols_ + 1) + cols_)]; }
    double& obj(int c) { return obj_[static_cast<size_t>(c)]; }
    double& obj_rhs() { return obj_[static_cast<size_t>(cols_)]; }
    int basis(int r) const { return basis_[static_cast<size_t>(r)]; }
    void set_basis(int r, int c) { basis_[static_cast<size_t>(r)] = c; }

    void pivot(int pr, int pc) {
        const double piv = at(pr, pc);
        for (int c = 0; c <= cols_; ++c) t_[static_cast<size_t>(pr * (cols_ + 1) + c)] /= piv;
        for (int r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c <= cols_; ++c)
                t_[static_cast<size_t>(r * (cols_ + 1) + c)] -= f * t_[static_cast<size_t>(pr * (cols_ + 1) + c)];
        }
        const double fo = obj_[static_cast<size_t>(pc)];
        if (fo != 0.0) {
            for (int c = 0; c <= cols_; ++c)
                obj_[static_cast<size_t>(c)] -= fo * t_[static_cast<size_t>(pr * (cols_ + 1) + c)];
        }
        basis_[static_cast<size_t>(pr)] = pc;
    }

    /// Runs Bland-rule simplex to optimality. Columns with banned(c) true
    /// never enter the basis.
    void solve(const std::vector<char>& banned) {
        for (int iter = 0; iter < 20000; ++iter) {
            int enter = -1;
            for (int c = 0; c < cols_; ++c) {
                if (banned[static_cast<size_t>(c)]) continue;
                if (obj_[static_cast<size_t>(c)] < -kPivotEps) {
                    enter = c;
                    break;
                }
            }
            if (enter < 0) return;

            int leave = -1;
            double best = 0.0;
            for (int r = 0; r < rows_; ++r) {
                const double a = at(r, enter);
                if (a > kPivotEps) {
                    const double ratio = rhs(r) / a;
                    if (leave < 0 || ratio < best - 1e-15 ||
                        (std::fabs(ratio - best) <= 1e-15 && basis(r) < basis(leave))) {
                        leave = r;
                        best = ratio;
                    }
                }
            }
            if (leave < 0) throw Error("simplex: unbounded subproblem");
            pivot(leave, enter);
        }
        throw Error("simplex: iteration limit exceeded");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_, cols_;
    std::vector<double> t_;
    std::vector<double> obj_;
    std::vector<int> basis_;
};

}  // namespace

HalfspaceResult halfspace_feasible(const std::vector<Vec>& a, const std::vector<double>& b,
                                   int n, double p_bound, double feas_eps) {
    HalfspaceResult out;
    const int m = static_cast<int>(a.size());
    if (m == 0) {
        out.feasible = true;
        return out;
    }

    // Normalize rows for conditioning; feasibility is unchanged.
    std::vector<Vec> an(a.begin(), a.end());
    std::vector<double> bn(b.begin(), b.end());
    for (int k = 0; k < m; ++k) {
        const double s = std::max(norm_inf(an[static_cast<size_t>(k)], n), 1e-30);
        an[static_cast<size_t>(k)] = scale(an[static_cast<size_t>(k)], 1.0 / s);
        bn[static_cast<size_t>(k)] /= s;
    }

    // Dual of (min t : a_k.p - t <= b_k, |p_i| <= M):
    //   min bn.y + M 1.(y+ + y-)
    //   s.t. sum_k y_k an_k + y+ - y- = 0   (n rows)
    //        sum_k y_k = 1                  (1 row)
    //        y, y+, y- >= 0
    // Columns: m constraint vars, n y+, n y-, n+1 artificials.
    const int rows = n + 1;
    const int cols = m + 2 * n + rows;
    const int art0 = m + 2 * n;
    Tableau t(rows, cols);

    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < n; ++i) t.at(i, k) = an[static_cast<size_t>(k)][static_cast<size_t>(i)];
        t.at(n, k) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        t.at(i, m + i) = 1.0;       // y+
        t.at(i, m + n + i) = -1.0;  // y-
    }
    for (int r = 0; r < rows; ++r) {
        t.at(r, art0 + r) = 1.0;
        t.set_basis(r, art0 + r);
        t.rhs(r) = (r == n) ? 1.0 : 0.0;
    }

    std::vector<char> banned(static_cast<size_t>(cols), 0);

    // Phase 1: minimize the artificial sum.
    for (int r = 0; r < rows; ++r) t.obj(art0 + r) = 1.0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c <= cols; ++c)
            (c == cols ? t.obj_rhs() : t.obj(c)) -= (c == cols ? t.rhs(r) : t.at(r, c));
    t.solve(banned);
    // The dual is always feasible (the box-bound columns absorb any a_k),
    // so a positive phase-1 optimum is a numerical failure.
    if (-t.obj_rhs() > 1e-7) throw Error("simplex: phase-1 failed");

    // Phase 2: artificials stay at cost zero but may not enter.
    for (int r = 0; r < rows; ++r) banned[static_cast<size_t>(art0 + r)] = 1;
    for (int c = 0; c <= cols; ++c) (c == cols ? t.obj_rhs() : t.obj(c)) = 0.0;
    const double M = std::max(p_bound, 1.0);
    for (int k = 0; k < m; ++k) t.obj(k) = bn[static_cast<size_t>(k)];
    for (int i = 0; i < 2 * n; ++i) t.obj(m + i) = M;
    for (int r = 0; r < rows; ++r) {
        const int c = t.basis(r);
        double cost = 0.0;
        if (c < m) cost = bn[static_cast<size_t>(c)];
        else if (c < m + 2 * n) cost = M;
        if (cost != 0.0)
            for (int cc = 0; cc <= cols; ++cc)
                (cc == cols ? t.obj_rhs() : t.obj(cc)) -= cost * (cc == cols ? t.rhs(r) : t.at(r, cc));
    }
    t.solve(banned);

    // Multipliers: with zero phase-2 cost on artificial j, its reduced cost
    // equals -pi_j. Rows 0..n-1 give p, row n gives the max-violation bound.
    for (int i = 0; i < n; ++i) out.p[static_cast<size_t>(i)] = -t.obj(art0 + i);

    double viol = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k)
        viol = std::max(viol, dot(a[static_cast<size_t>(k)], out.p, n) - b[static_cast<size_t>(k)]);
    out.violation = viol;
    out.feasible = viol <= feas_eps;
    return out;
}

}  // namespace qcpot
