#include "omdp/expected_gain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omdp {

namespace {

double bellman_backup(const MdpModel& model, const std::vector<double>& v, int s, int a) {
    double q = 0.0;
    for (const Transition& t : model.arcs(s, a)) q += t.prob * (t.reward + model.discount() * v[t.to]);
    return q;
}

} // namespace

ValueIterationResult value_iteration(const MdpModel& model, double tol, int max_iter) {
    require_valid(model);
    if (!(tol > 0.0)) throw std::invalid_argument("value_iteration: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("value_iteration: max_iter must be >= 1");

    const int n = model.num_states();
    ValueIterationResult res;
    std::vector<double> v(n, 0.0), next(n, 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        double delta = 0.0;
        for (int s = 0; s < n; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (int a : model.allowed(s)) best = std::max(best, bellman_backup(model, v, s, a));
            next[s] = best;
            delta = std::max(delta, std::abs(next[s] - v[s]));
        }
        v.swap(next);
        res.sweeps = iter + 1;
        res.sweep_deltas.push_back(delta);
        if (delta <= tol) {
            res.converged = true;
            break;
        }
    }
    res.table.values = std::move(v);
    return res;
}

std::vector<double> q_values(const MdpModel& model, const ValueTable& values, int s) {
    if (s < 0 || s >= model.num_states())
        throw std::invalid_argument("q_values: unknown state index " + std::to_string(s));
    std::vector<double> q;
    q.reserve(model.allowed(s).size());
    for (int a : model.allowed(s)) q.push_back(bellman_backup(model, values.values, s, a));
    return q;
}

Policy greedy_policy(const MdpModel& model, const ValueTable& values) {
    Policy policy;
    policy.action_of.resize(model.num_states());
    for (int s = 0; s < model.num_states(); ++s) {
        const auto& acts = model.allowed(s);
        const std::vector<double> q = q_values(model, values, s);
        int best = 0;
        for (std::size_t i = 1; i < q.size(); ++i)
            if (q[i] > q[best]) best = static_cast<int>(i);
        policy.action_of[s] = acts[best];
    }
    return policy;
}

ValueTable policy_evaluation_exact(const MdpModel& model, const Policy& policy) {
    require_valid(model);
    require_valid_policy(model, policy);

    const int n = model.num_states();
    // Assemble (I - lambda P) v = R and eliminate with partial pivoting.
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
    for (int s = 0; s < n; ++s) {
        m[s][s] = 1.0;
        for (const Transition& t : model.arcs(s, policy.action_of[s])) {
            m[s][t.to] -= model.discount() * t.prob;
            m[s][n] += t.prob * t.reward;
        }
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        for (int r = col + 1; r < n; ++r) {
            const double f = m[r][col] / m[col][col];
            if (f == 0.0) continue;
            for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    ValueTable table;
    table.values.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double acc = m[r][n];
        for (int c = r + 1; c < n; ++c) acc -= m[r][c] * table.values[c];
        table.values[r] = acc / m[r][r];
    }
    return table;
}

} // namespace omdp
