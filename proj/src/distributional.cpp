#include "omdp/distributional.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace omdp {

GainGrid::GainGrid(std::vector<double> centers) : centers_(std::move(centers)) {
    if (centers_.size() < 2) throw std::invalid_argument("GainGrid: need at least 2 centers");
    for (std::size_t i = 1; i < centers_.size(); ++i)
        if (!(centers_[i] > centers_[i - 1]))
            throw std::invalid_argument("GainGrid: centers must be strictly increasing");
    edges_.reserve(centers_.size() - 1);
    for (std::size_t i = 1; i < centers_.size(); ++i)
        edges_.push_back(0.5 * (centers_[i - 1] + centers_[i]));
}

int GainGrid::bin_of(double g) const {
    // First edge strictly greater than g; a value on an edge goes to the
    // upper bin, values beyond the outermost edges clamp to the end bins.
    return static_cast<int>(std::upper_bound(edges_.begin(), edges_.end(), g) - edges_.begin());
}

double GainGrid::bin_width() const {
    double w = 0.0;
    for (std::size_t i = 1; i < centers_.size(); ++i) w = std::max(w, centers_[i] - centers_[i - 1]);
    return w;
}

namespace {

std::vector<double> linspace(double lo, double hi, int k) {
    std::vector<double> xs(k);
    const double step = (hi - lo) / (k - 1);
    for (int i = 0; i < k; ++i) xs[i] = lo + step * i;
    xs.back() = hi;
    return xs;
}

} // namespace

GridSet make_global_grids(const MdpModel& model, int k_bins) {
    if (k_bins < 2) throw std::invalid_argument("make_global_grids: k_bins must be >= 2");
    auto [lo, hi] = gain_bounds(model);
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    auto grid = std::make_shared<const GainGrid>(linspace(lo, hi, k_bins));
    return GridSet(model.num_states(), grid);
}

GridSet make_centered_grids(const MdpModel& model, int k_bins, const ValueTable& values) {
    if (k_bins < 2) throw std::invalid_argument("make_centered_grids: k_bins must be >= 2");
    if (static_cast<int>(values.values.size()) != model.num_states())
        throw std::invalid_argument("make_centered_grids: value table size mismatch");
    auto [lo, hi] = gain_bounds(model);
    double span = hi - lo;
    if (span < 1e-12) span = 1.0;
    const double step = span / (k_bins - 1);
    const int mid = (k_bins + 1) / 2 - 1; // 0-based index of center ceil(K/2)

    GridSet grids;
    grids.reserve(model.num_states());
    for (int s = 0; s < model.num_states(); ++s) {
        std::vector<double> centers(k_bins);
        for (int i = 0; i < k_bins; ++i) centers[i] = values[s] + step * (i - mid);
        grids.push_back(std::make_shared<const GainGrid>(std::move(centers)));
    }
    return grids;
}

void normalize_simplex(std::vector<double>& probs) {
    for (double& p : probs)
        if (p < 0.0) p = 0.0;
    const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (sum == 0.0) {
        std::fill(probs.begin(), probs.end(), 1.0 / probs.size());
        return;
    }
    if (sum != 1.0)
        for (double& p : probs) p /= sum;
}

namespace {

ActionBinning bin_action(const MdpModel& model, const GridSet& grids, int s, int a) {
    ActionBinning entry;
    entry.action = a;
    const GainGrid& own = *grids[s];
    for (const Transition& t : model.arcs(s, a)) {
        SuccessorMap row;
        row.successor = t.to;
        row.prob = t.prob;
        const auto& succ_centers = grids[t.to]->centers();
        row.target.reserve(succ_centers.size());
        for (double c : succ_centers) row.target.push_back(own.bin_of(t.reward + model.discount() * c));
        entry.rows.push_back(std::move(row));
    }
    return entry;
}

void check_grids(const MdpModel& model, const GridSet& grids) {
    if (static_cast<int>(grids.size()) != model.num_states())
        throw std::invalid_argument("binning: grids must cover every state");
    for (const auto& g : grids)
        if (!g) throw std::invalid_argument("binning: null grid");
}

} // namespace

BinningRule build_binning_rule(const MdpModel& model, const GridSet& grids) {
    check_grids(model, grids);
    BinningRule rule;
    rule.per_state_.resize(model.num_states());
    for (int s = 0; s < model.num_states(); ++s)
        for (int a : model.allowed(s)) rule.per_state_[s].push_back(bin_action(model, grids, s, a));
    return rule;
}

BinningRule build_binning_rule(const MdpModel& model, const GridSet& grids, const Policy& policy) {
    check_grids(model, grids);
    require_valid_policy(model, policy);
    BinningRule rule;
    rule.per_state_.resize(model.num_states());
    for (int s = 0; s < model.num_states(); ++s)
        rule.per_state_[s].push_back(bin_action(model, grids, s, policy.action_of[s]));
    return rule;
}

std::vector<double> propagate_binned(const BinningRule& rule, int s, int slot,
                                     const std::vector<StateDistribution>& dists) {
    const ActionBinning& entry = rule.entry(s, slot);
    std::vector<double> acc(dists[s].probs.size(), 0.0);
    for (const SuccessorMap& row : entry.rows) {
        const std::vector<double>& src = dists[row.successor].probs;
        for (std::size_t k = 0; k < src.size(); ++k) acc[row.target[k]] += row.prob * src[k];
    }
    return acc;
}

std::vector<StateDistribution> initial_distributions(const GridSet& grids, const InitSpec& init) {
    std::vector<StateDistribution> dists;
    dists.reserve(grids.size());
    for (const GridPtr& g : grids) {
        StateDistribution d;
        d.grid = g;
        d.probs.assign(g->size(), 0.0);
        if (init.mode == InitMode::uniform)
            std::fill(d.probs.begin(), d.probs.end(), 1.0 / g->size());
        else
            d.probs[g->bin_of(init.value)] = 1.0;
        dists.push_back(std::move(d));
    }
    return dists;
}

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

EvaluationResult evaluate_policy_distribution(const MdpModel& model, const Policy& policy,
                                              const GridSet& grids, const InitSpec& init,
                                              double tol, int max_iter, SweepMode mode) {
    require_valid(model);
    if (!(tol > 0.0)) throw std::invalid_argument("evaluate_policy_distribution: tol must be > 0");
    const BinningRule rule = build_binning_rule(model, grids, policy);

    EvaluationResult res;
    res.dists = initial_distributions(grids, init);
    std::vector<StateDistribution> snapshot;
    for (int iter = 0; iter < max_iter; ++iter) {
        double delta = 0.0;
        const std::vector<StateDistribution>* src = &res.dists;
        if (mode == SweepMode::snapshot) {
            snapshot = res.dists;
            src = &snapshot;
        }
        for (int s = 0; s < model.num_states(); ++s) {
            std::vector<double> next = propagate_binned(rule, s, 0, *src);
            normalize_simplex(next);
            delta = std::max(delta, sup_diff(next, res.dists[s].probs));
            res.dists[s].probs = std::move(next);
        }
        res.sweeps = iter + 1;
        if (delta <= tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

double outage_value(const StateDistribution& dist, double alpha) {
    const auto& centers = dist.grid->centers();
    double v = 0.0;
    for (std::size_t k = 0; k < centers.size(); ++k)
        if (centers[k] > alpha) v += dist.probs[k];
    return v;
}

OutageSolution solve_outage(const MdpModel& model, const GridSet& grids, double alpha,
                            const InitSpec& init, double tol, int max_iter, SweepMode mode) {
    require_valid(model);
    if (!(tol > 0.0)) throw std::invalid_argument("solve_outage: tol must be > 0");
    const BinningRule rule = build_binning_rule(model, grids);

    const int n = model.num_states();
    OutageSolution res;
    res.dists = initial_distributions(grids, init);
    res.policy.action_of.assign(n, 0);
    res.q.assign(n, {});

    // Last two sweeps, for period-2 cycle detection.
    std::vector<std::vector<double>> prev1, prev2;
    std::vector<StateDistribution> snapshot;

    for (int iter = 0; iter < max_iter; ++iter) {
        prev2 = std::move(prev1);
        prev1.clear();
        for (const auto& d : res.dists) prev1.push_back(d.probs);

        double delta = 0.0;
        const std::vector<StateDistribution>* src = &res.dists;
        if (mode == SweepMode::snapshot) {
            snapshot = res.dists;
            src = &snapshot;
        }
        for (int s = 0; s < n; ++s) {
            const auto& entries = rule.entries(s);
            std::vector<std::vector<double>> candidates(entries.size());
            std::vector<double> qs(entries.size());
            const auto& centers = grids[s]->centers();
            for (std::size_t i = 0; i < entries.size(); ++i) {
                candidates[i] = propagate_binned(rule, s, static_cast<int>(i), *src);
                double q = 0.0;
                for (std::size_t k = 0; k < centers.size(); ++k)
                    if (centers[k] > alpha) q += candidates[i][k];
                qs[i] = q;
            }
            std::size_t best = 0;
            for (std::size_t i = 1; i < qs.size(); ++i)
                if (qs[i] > qs[best]) best = i;
            res.policy.action_of[s] = entries[best].action;
            res.q[s] = std::move(qs);
            std::vector<double> next = std::move(candidates[best]);
            normalize_simplex(next);
            delta = std::max(delta, sup_diff(next, res.dists[s].probs));
            res.dists[s].probs = std::move(next);
        }
        res.sweeps = iter + 1;
        if (delta <= tol) {
            res.converged = true;
            break;
        }
        if (!prev2.empty()) {
            double cycle = 0.0;
            for (int s = 0; s < n; ++s) cycle = std::max(cycle, sup_diff(res.dists[s].probs, prev2[s]));
            if (cycle <= tol) {
                res.oscillating = true;
                break;
            }
        }
    }
    return res;
}

std::vector<double> ccdf_from_distribution(const StateDistribution& dist,
                                           const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] < xs[i - 1])
            throw std::invalid_argument("ccdf_from_distribution: xs must be sorted ascending");
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(outage_value(dist, x));
    return out;
}

} // namespace omdp
