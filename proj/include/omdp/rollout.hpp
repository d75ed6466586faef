#pragma once

#include "omdp/mdp.hpp"

#include <cstdint>
#include <vector>

namespace omdp {

struct RolloutConfig {
    long episodes = 100000;
    /// Bound on the discarded discounted tail, in gain units.
    double truncation_eps = 1e-3;
    std::uint64_t seed = 1;
};

/// Smallest T with lambda^T * max|r| / (1 - lambda) < eps, i.e. the
/// horizon after which the remaining discounted rewards cannot change the
/// gain by eps.
int truncation_horizon(const MdpModel& model, double eps);

/// Realized discounted gains of cfg.episodes rollouts from start_state.
/// Episode i draws from its own sub-seeded generator, so the result is a
/// deterministic function of cfg.seed regardless of execution order.
std::vector<double> simulate_gains(const MdpModel& model, const Policy& policy, int start_state,
                                   const RolloutConfig& cfg);

/// Fraction of gains strictly above each xs point. xs must be ascending
/// and gains non-empty.
std::vector<double> empirical_ccdf(const std::vector<double>& gains,
                                   const std::vector<double>& xs);

} // namespace omdp
