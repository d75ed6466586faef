#pragma once

#include "omdp/mdp.hpp"

#include <vector>

namespace omdp {

/// Expected discounted gain per state, in declared state order.
struct ValueTable {
    std::vector<double> values;

    double operator[](int s) const { return values[s]; }
};

struct ValueIterationResult {
    ValueTable table;
    bool converged = false;
    int sweeps = 0;
    /// Sup-norm change of each sweep, for contraction diagnostics.
    std::vector<double> sweep_deltas;
};

/// Synchronous (Jacobi) value iteration: every sweep reads only the
/// previous snapshot, so the result does not depend on state order.
/// Stops when the sup-norm change of a sweep is <= tol; hitting max_iter
/// first yields converged = false.
ValueIterationResult value_iteration(const MdpModel& model, double tol = 1e-9,
                                     int max_iter = 10000);

/// Q(s,a) = R(s,a) + lambda * sum_j p(j|s,a) v(j) for each allowed action
/// of s, aligned with model.allowed(s).
std::vector<double> q_values(const MdpModel& model, const ValueTable& values, int s);

/// Argmax of the Q-values per state; ties go to the lowest declared
/// action index.
Policy greedy_policy(const MdpModel& model, const ValueTable& values);

/// Solves (I - lambda P_pi) v = R_pi directly (dense elimination with
/// partial pivoting). Exact up to round-off, well below the 1e-10 target
/// for any discount < 1.
ValueTable policy_evaluation_exact(const MdpModel& model, const Policy& policy);

} // namespace omdp
