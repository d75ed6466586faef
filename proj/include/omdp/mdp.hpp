#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace omdp {

/// One transition row: taking `action` in state `from` reaches `to` with
/// probability `prob` and pays `reward`. All indices refer to the declared
/// state/action order of the owning model.
struct Transition {
    int from = 0;
    int action = 0;
    int to = 0;
    double prob = 0.0;
    double reward = 0.0;

    bool operator==(const Transition&) const = default;
};

/// Finite discounted MDP. Transitions are sparse: pairs absent from the
/// list have probability zero. The model is immutable after construction
/// and may be shared freely across threads.
///
/// Construction never rejects bad data; validate_mdp reports violations so
/// that broken description files can be diagnosed rather than refused.
class MdpModel {
public:
    MdpModel(std::vector<std::string> states, std::vector<std::string> actions,
             std::vector<std::vector<int>> allowed, std::vector<Transition> transitions,
             double discount);

    int num_states() const { return static_cast<int>(states_.size()); }
    int num_actions() const { return static_cast<int>(actions_.size()); }
    double discount() const { return discount_; }

    const std::vector<std::string>& states() const { return states_; }
    const std::vector<std::string>& actions() const { return actions_; }
    const std::string& state_name(int s) const { return states_[s]; }
    const std::string& action_name(int a) const { return actions_[a]; }

    std::optional<int> state_index(const std::string& name) const;
    std::optional<int> action_index(const std::string& name) const;

    /// Allowed actions of state s, in declared order (A_s).
    const std::vector<int>& allowed(int s) const { return allowed_[s]; }
    const std::vector<std::vector<int>>& allowed() const { return allowed_; }

    const std::vector<Transition>& transitions() const { return transitions_; }

    /// Transition rows of (s,a), in declared order. Rows whose indices are
    /// out of range are excluded here but still visible to validate_mdp.
    const std::vector<Transition>& arcs(int s, int a) const { return arcs_[s][a]; }

    bool operator==(const MdpModel& other) const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> actions_;
    std::vector<std::vector<int>> allowed_;
    std::vector<Transition> transitions_;
    double discount_;
    std::vector<std::vector<std::vector<Transition>>> arcs_; // [s][a] -> rows
};

/// Deterministic policy: one action index per state.
struct Policy {
    std::vector<int> action_of;

    bool operator==(const Policy&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every model invariant; each violation names the offending
/// state/action/row. Violations are data, not failures.
ValidationReport validate_mdp(const MdpModel& model);

/// Throws std::invalid_argument listing the violations when the model is
/// not valid. Solvers call this on entry.
void require_valid(const MdpModel& model);

/// True when the policy assigns an allowed action to every state.
bool policy_valid(const MdpModel& model, const Policy& policy);

/// Throws std::invalid_argument when the policy is not valid for the model.
void require_valid_policy(const MdpModel& model, const Policy& policy);

/// The two-state battery robot: states {low, high}, actions
/// {search, wait, recharge}, beta = 0.8, rewards r_rescue = -1,
/// r_wait = 0.4, r_search = 0.9, discount 0.8.
MdpModel recycling_robot();

/// Seeded random model: dense normalized transition rows, rewards uniform
/// in [-1, 1], every action allowed everywhere. Deterministic function of
/// the seed, independent of platform.
MdpModel random_mdp(int n_states, int n_actions, double discount, std::uint64_t seed);

/// Smallest and largest transition reward (0,0 for a model with no rows).
std::pair<double, double> reward_bounds(const MdpModel& model);

double max_abs_reward(const MdpModel& model);

/// Range of achievable gains: [r_min, r_max] / (1 - discount).
std::pair<double, double> gain_bounds(const MdpModel& model);

} // namespace omdp
