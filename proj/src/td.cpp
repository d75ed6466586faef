#include "omdp/td.hpp"

#include "omdp/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace omdp {

namespace {

void check_config(const TdConfig& cfg) {
    if (!(cfg.learning_rate > 0.0 && cfg.learning_rate <= 1.0))
        throw std::invalid_argument("td: learning_rate must be in (0, 1]");
}

bool same_grid(const StateDistribution& a, const StateDistribution& b) {
    if (a.grid == b.grid) return true;
    return a.grid && b.grid && *a.grid == *b.grid;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

// Re-applies the simplex normalization until the sum is exactly 1.0, so a
// vector used as a fixed target passes through later normalizations
// bit-for-bit. Converges in one or two rounds.
void normalize_to_fixpoint(std::vector<double>& probs) {
    for (int round = 0; round < 8; ++round) {
        normalize_simplex(probs);
        if (std::accumulate(probs.begin(), probs.end(), 0.0) == 1.0) return;
    }
}

} // namespace

StateDistribution td_step(const StateDistribution& dist, const StateDistribution& target,
                          const TdConfig& cfg) {
    check_config(cfg);
    if (!same_grid(dist, target)) throw std::invalid_argument("td_step: grids differ");
    if (dist.probs.size() != target.probs.size())
        throw std::invalid_argument("td_step: size mismatch");

    const double gamma = cfg.learning_rate;
    StateDistribution out;
    out.grid = dist.grid;
    out.probs.resize(dist.probs.size());

    if (cfg.loss == TdLoss::squared_difference) {
        // P + gamma * (target - P), written as a convex combination so a
        // full step reproduces the target bit-for-bit.
        for (std::size_t k = 0; k < out.probs.size(); ++k)
            out.probs[k] = (1.0 - gamma) * dist.probs[k] + gamma * target.probs[k];
    } else {
        // Negative gradient of KL(target || P) w.r.t. P is target/P.
        constexpr double kFloor = 1e-12;
        for (std::size_t k = 0; k < out.probs.size(); ++k) {
            const double grad =
                target.probs[k] == 0.0 ? 0.0 : target.probs[k] / std::max(dist.probs[k], kFloor);
            out.probs[k] = dist.probs[k] + gamma * grad;
        }
    }
    normalize_simplex(out.probs);
    return out;
}

MixtureResult mixture_experiment(double p, double mean1, double mean2, int k_bins,
                                 const TdConfig& cfg, bool sampled_labels) {
    check_config(cfg);
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixture_experiment: p must be in [0,1]");
    if (k_bins < 2) throw std::invalid_argument("mixture_experiment: k_bins must be >= 2");
    if (cfg.steps < 1) throw std::invalid_argument("mixture_experiment: steps must be >= 1");

    const double lo = std::min(mean1, mean2) - 1.0;
    const double hi = std::max(mean1, mean2) + 1.0;
    std::vector<double> centers(k_bins);
    const double step = (hi - lo) / (k_bins - 1);
    for (int i = 0; i < k_bins; ++i) centers[i] = lo + step * i;
    auto grid = std::make_shared<const GainGrid>(std::move(centers));
    const double sigma = 4.0 * step;

    auto gaussian = [&](double mean) {
        StateDistribution d;
        d.grid = grid;
        d.probs.resize(k_bins);
        for (int i = 0; i < k_bins; ++i) {
            const double z = (grid->centers()[i] - mean) / sigma;
            d.probs[i] = std::exp(-0.5 * z * z);
        }
        normalize_to_fixpoint(d.probs);
        return d;
    };
    const StateDistribution label1 = gaussian(mean1);
    const StateDistribution label2 = gaussian(mean2);

    MixtureResult res;
    res.target.grid = grid;
    res.target.probs.resize(k_bins);
    for (int i = 0; i < k_bins; ++i)
        res.target.probs[i] = p * label1.probs[i] + (1.0 - p) * label2.probs[i];
    normalize_to_fixpoint(res.target.probs);

    res.learned.grid = grid;
    res.learned.probs.assign(k_bins, 1.0 / k_bins);

    std::mt19937_64 gen(cfg.seed);
    res.trace.reserve(cfg.steps);
    for (long t = 0; t < cfg.steps; ++t) {
        const StateDistribution* label = &res.target;
        if (sampled_labels) label = uniform01(gen) < p ? &label1 : &label2;
        res.learned = td_step(res.learned, *label, cfg);
        res.trace.push_back(l1_distance(res.learned.probs, res.target.probs));
    }
    res.l1_error = res.trace.back();
    return res;
}

} // namespace omdp
