#pragma once

#include "omdp/distributional.hpp"
#include "omdp/mdp.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace omdp {

/// Raised when a description file is missing, malformed, or references
/// unknown states/actions. The message names the offending field or entity.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// MDP description file: JSON object with exactly the fields `discount`,
/// `states`, `actions`, `allowed`, `transitions`. Unknown fields are
/// rejected. save_mdp() followed by load_mdp() reproduces the model
/// field-for-field.
MdpModel load_mdp(const std::string& path);
void save_mdp(const MdpModel& model, const std::string& path);

/// Policy file: JSON object mapping every state name to an action name.
Policy load_policy(const MdpModel& model, const std::string& path);
void save_policy(const MdpModel& model, const Policy& policy, const std::string& path);

/// Distribution dump: JSON object mapping each state name to an object
/// with equal-length arrays `centers` and `probs`.
std::vector<StateDistribution> load_distributions(const MdpModel& model, const std::string& path);
void save_distributions(const MdpModel& model, const std::vector<StateDistribution>& dists,
                        const std::string& path);

} // namespace omdp
