#pragma once

#include <vector>

#include "qcpot/common.hpp"

namespace qcpot {

struct HalfspaceResult {
    bool feasible = false;
    Vec p = vec_zero();     // witness (best point found)
    double violation = 0.0; // max_k (a_k . p - b_k) at the witness
};

/// Feasibility of { p in R^n : a_k . p <= b_k, k = 0..m-1, |p_i| <= p_bound }.
///
/// Solves min t s.t. a_k . p - t <= b_k through its standard-form dual with
/// a dense two-phase simplex under Bland's rule (the n+1-row dual tableau
/// carries the m node constraints as columns). The recovered multipliers
/// give the minimizing p; the system is reported feasible when the exact
/// violation of p is at most feas_eps.
HalfspaceResult halfspace_feasible(const std::vector<Vec>& a, const std::vector<double>& b,
                                   int n, double p_bound, double feas_eps);

}  // namespace qcpot
