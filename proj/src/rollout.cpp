#include "omdp/rollout.hpp"

#include "omdp/rng.hpp"

#include <stdexcept>

namespace omdp {

int truncation_horizon(const MdpModel& model, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("truncation_horizon: eps must be > 0");
    double bound = max_abs_reward(model) / (1.0 - model.discount());
    int horizon = 0;
    while (bound >= eps) {
        bound *= model.discount();
        ++horizon;
    }
    return horizon;
}

std::vector<double> simulate_gains(const MdpModel& model, const Policy& policy, int start_state,
                                   const RolloutConfig& cfg) {
    require_valid(model);
    require_valid_policy(model, policy);
    if (start_state < 0 || start_state >= model.num_states())
        throw std::invalid_argument("simulate_gains: unknown start state");
    if (cfg.episodes < 1) throw std::invalid_argument("simulate_gains: episodes must be >= 1");

    const int horizon = truncation_horizon(model, cfg.truncation_eps);
    const double lambda = model.discount();
    std::vector<double> gains(cfg.episodes);
    for (long ep = 0; ep < cfg.episodes; ++ep) {
        std::mt19937_64 gen(sub_seed(cfg.seed, static_cast<std::uint64_t>(ep)));
        int s = start_state;
        double gain = 0.0;
        double weight = 1.0;
        for (int t = 0; t < horizon; ++t) {
            const auto& rows = model.arcs(s, policy.action_of[s]);
            const double u = uniform01(gen);
            double cum = 0.0;
            const Transition* chosen = &rows.back();
            for (const Transition& row : rows) {
                cum += row.prob;
                if (u < cum) {
                    chosen = &row;
                    break;
                }
            }
            gain += weight * chosen->reward;
            s = chosen->to;
            weight *= lambda;
        }
        gains[ep] = gain;
    }
    return gains;
}

std::vector<double> empirical_ccdf(const std::vector<double>& gains,
                                   const std::vector<double>& xs) {
    if (gains.empty()) throw std::invalid_argument("empirical_ccdf: gains must be non-empty");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] < xs[i - 1])
            throw std::invalid_argument("empirical_ccdf: xs must be sorted ascending");
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        long count = 0;
        for (double g : gains)
            if (g > x) ++count;
        out.push_back(static_cast<double>(count) / static_cast<double>(gains.size()));
    }
    return out;
}

} // namespace omdp
