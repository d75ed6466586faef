#pragma once

#include "omdp/distributional.hpp"

#include <cstdint>
#include <vector>

namespace omdp {

enum class TdLoss { squared_difference, kl_divergence };

struct TdConfig {
    double learning_rate = 0.01; ///< gamma in (0, 1]
    TdLoss loss = TdLoss::squared_difference;
    long steps = 100000;
    std::uint64_t seed = 1;
};

/// One temporal-difference step on a probability vector: moves dist
/// toward target along the negative gradient of the configured loss,
/// scaled by the learning rate, then clamps at zero and renormalizes.
/// With learning rate 1 and squared-difference loss the step lands on the
/// target bit-for-bit.
StateDistribution td_step(const StateDistribution& dist, const StateDistribution& target,
                          const TdConfig& cfg);

struct MixtureResult {
    StateDistribution learned;
    StateDistribution target; ///< P* = p * P1 + (1-p) * P2
    double l1_error = 0.0;
    /// L1 distance to the target after each step (steps entries).
    std::vector<double> trace;
};

/// Trains a free probability vector toward the mixture of two discrete
/// Gaussians (means mean1/mean2, sigma = 4 bin widths, shared uniform grid
/// spanning [min-1, max+1]). With sampled_labels, each step applies
/// td_step toward P1 or P2 drawn with probabilities (p, 1-p); otherwise
/// every step sees the mixture itself, so learning rate 1 recovers it in
/// one step.
MixtureResult mixture_experiment(double p, double mean1, double mean2, int k_bins,
                                 const TdConfig& cfg, bool sampled_labels = true);

} // namespace omdp
