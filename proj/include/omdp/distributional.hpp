#pragma once

#include "omdp/expected_gain.hpp"
#include "omdp/mdp.hpp"

#include <memory>
#include <vector>

namespace omdp {

/// Uniformly or arbitrarily spaced gain bins. Bin k is delimited by the
/// midpoints of consecutive centers; the first and last bins extend to
/// -inf and +inf. A value equal to an edge belongs to the upper bin.
class GainGrid {
public:
    /// Requires at least two strictly increasing centers.
    explicit GainGrid(std::vector<double> centers);

    int size() const { return static_cast<int>(centers_.size()); }
    const std::vector<double>& centers() const { return centers_; }
    /// The size()-1 interior edges.
    const std::vector<double>& edges() const { return edges_; }

    /// Index of the bin containing g, clamped to [0, size()-1] for values
    /// beyond the outermost centers.
    int bin_of(double g) const;

    /// Largest spacing between consecutive centers (the bin width for
    /// uniform grids).
    double bin_width() const;

    bool operator==(const GainGrid& other) const { return centers_ == other.centers_; }

private:
    std::vector<double> centers_;
    std::vector<double> edges_;
};

using GridPtr = std::shared_ptr<const GainGrid>;

/// One gain grid per state, in declared order. Global-span mode shares a
/// single grid object across all states.
using GridSet = std::vector<GridPtr>;

/// Identical uniform grid for every state spanning the achievable gain
/// range [r_min, r_max] / (1 - lambda). A degenerate span (all rewards
/// equal) is widened by 0.5 on each side so the centers stay strictly
/// increasing.
GridSet make_global_grids(const MdpModel& model, int k_bins);

/// Per-state uniform grid of the same span length as the global one,
/// shifted so that center ceil(K/2) (1-based) equals values[s].
GridSet make_centered_grids(const MdpModel& model, int k_bins, const ValueTable& values);

/// Probability vector over the bins of one state's grid.
struct StateDistribution {
    GridPtr grid;
    std::vector<double> probs;
};

/// Clamps negative components to zero and rescales so the vector sums to
/// one. A vector that already sums to exactly 1.0 is left untouched; an
/// all-zero vector becomes uniform.
void normalize_simplex(std::vector<double>& probs);

/// Probability-weighted bin relocation table for one (state, action):
/// for each successor row, target[k] is the bin of the state's own grid
/// that receives p(succ|s,a) * P_succ[k], built from the propagated gain
/// r(s,succ) + lambda * centers_succ[k].
struct SuccessorMap {
    int successor = 0;
    double prob = 0.0;
    std::vector<int> target;
};

struct ActionBinning {
    int action = 0;
    std::vector<SuccessorMap> rows;
};

/// All binning tables needed by the propagation loops, indexed by state.
/// Policy scope keeps exactly one entry per state; all-actions scope keeps
/// one per allowed action, in declared order. Immutable once built.
class BinningRule {
public:
    const std::vector<ActionBinning>& entries(int s) const { return per_state_[s]; }
    const ActionBinning& entry(int s, int slot) const { return per_state_[s][slot]; }
    int num_states() const { return static_cast<int>(per_state_.size()); }

    friend BinningRule build_binning_rule(const MdpModel&, const GridSet&);
    friend BinningRule build_binning_rule(const MdpModel&, const GridSet&, const Policy&);

private:
    std::vector<std::vector<ActionBinning>> per_state_;
};

/// Binning rule covering every allowed action of every state.
BinningRule build_binning_rule(const MdpModel& model, const GridSet& grids);

/// Binning rule restricted to the policy's action in each state.
BinningRule build_binning_rule(const MdpModel& model, const GridSet& grids, const Policy& policy);

/// The fused propagate-and-bin step: P_bin for one (state, action-slot)
/// from the successors' current distributions. The result is not yet
/// normalized.
std::vector<double> propagate_binned(const BinningRule& rule, int s, int slot,
                                     const std::vector<StateDistribution>& dists);

enum class SweepMode {
    in_place, ///< states update in declared order, later states see earlier updates
    snapshot  ///< all states update from the previous sweep's snapshot
};

enum class InitMode { uniform, point_mass };

struct InitSpec {
    InitMode mode = InitMode::uniform;
    double value = 0.0; ///< point-mass location (ignored for uniform)
};

std::vector<StateDistribution> initial_distributions(const GridSet& grids, const InitSpec& init);

struct EvaluationResult {
    std::vector<StateDistribution> dists;
    bool converged = false;
    int sweeps = 0;
};

/// Iterates the fused propagate-and-bin step under a fixed policy until
/// the sup-norm change across all states is <= tol (or max_iter sweeps).
EvaluationResult evaluate_policy_distribution(const MdpModel& model, const Policy& policy,
                                              const GridSet& grids,
                                              const InitSpec& init = {}, double tol = 1e-9,
                                              int max_iter = 10000,
                                              SweepMode mode = SweepMode::in_place);

/// p(G > alpha) under the binned distribution: sum of probs whose bin
/// center strictly exceeds alpha.
double outage_value(const StateDistribution& dist, double alpha);

struct OutageSolution {
    std::vector<StateDistribution> dists;
    Policy policy;
    /// Q(s,a,alpha) per state, aligned with model.allowed(s), at the final sweep.
    std::vector<std::vector<double>> q;
    bool converged = false;
    /// Distributions cycling with period 2 (sweep n equals sweep n-2 within
    /// tol while still changing sweep to sweep); reported instead of
    /// spinning until max_iter.
    bool oscillating = false;
    int sweeps = 0;
};

/// Greedy outage-optimal solve: per state, computes P_bin for every
/// allowed action, scores each by p(G > alpha), keeps the argmax (lowest
/// declared index on ties). In-place sweeps by default; snapshot mode
/// updates every state from the previous sweep.
OutageSolution solve_outage(const MdpModel& model, const GridSet& grids, double alpha,
                            const InitSpec& init = {}, double tol = 1e-9, int max_iter = 10000,
                            SweepMode mode = SweepMode::in_place);

/// CCDF sampled at the (ascending) points xs; output is nonincreasing.
/// Throws std::invalid_argument when xs is not sorted.
std::vector<double> ccdf_from_distribution(const StateDistribution& dist,
                                           const std::vector<double>& xs);

} // namespace omdp
