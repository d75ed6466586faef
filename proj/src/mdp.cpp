#include "omdp/mdp.hpp"

#include "omdp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace omdp {

MdpModel::MdpModel(std::vector<std::string> states, std::vector<std::string> actions,
                   std::vector<std::vector<int>> allowed, std::vector<Transition> transitions,
                   double discount)
    : states_(std::move(states)),
      actions_(std::move(actions)),
      allowed_(std::move(allowed)),
      transitions_(std::move(transitions)),
      discount_(discount) {
    allowed_.resize(states_.size());
    arcs_.assign(states_.size(), std::vector<std::vector<Transition>>(actions_.size()));
    for (const Transition& t : transitions_) {
        if (t.from < 0 || t.from >= num_states()) continue;
        if (t.action < 0 || t.action >= num_actions()) continue;
        if (t.to < 0 || t.to >= num_states()) continue;
        arcs_[t.from][t.action].push_back(t);
    }
}

std::optional<int> MdpModel::state_index(const std::string& name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) return std::nullopt;
    return static_cast<int>(it - states_.begin());
}

std::optional<int> MdpModel::action_index(const std::string& name) const {
    auto it = std::find(actions_.begin(), actions_.end(), name);
    if (it == actions_.end()) return std::nullopt;
    return static_cast<int>(it - actions_.begin());
}

bool MdpModel::operator==(const MdpModel& other) const {
    return states_ == other.states_ && actions_ == other.actions_ &&
           allowed_ == other.allowed_ && transitions_ == other.transitions_ &&
           discount_ == other.discount_;
}

namespace {

constexpr double kRowSumTol = 1e-9;

std::string row_name(const MdpModel& m, int s, int a) {
    return "(" + m.state_name(s) + ", " + m.action_name(a) + ")";
}

} // namespace

ValidationReport validate_mdp(const MdpModel& model) {
    ValidationReport report;
    auto add = [&report](const std::string& msg) { report.violations.push_back(msg); };

    if (model.num_states() == 0) add("model has no states");
    if (!(model.discount() >= 0.0)) add("discount must be >= 0");
    if (!(model.discount() < 1.0)) add("discount must be < 1");

    std::set<std::string> seen;
    for (const auto& s : model.states())
        if (!seen.insert(s).second) add("duplicate state name \"" + s + "\"");
    seen.clear();
    for (const auto& a : model.actions())
        if (!seen.insert(a).second) add("duplicate action name \"" + a + "\"");

    for (int s = 0; s < model.num_states(); ++s) {
        const auto& acts = model.allowed(s);
        if (acts.empty()) add("state " + model.state_name(s) + " has no allowed action");
        std::set<int> dedup;
        for (int a : acts) {
            if (a < 0 || a >= model.num_actions()) {
                add("state " + model.state_name(s) + " allows unknown action index " +
                    std::to_string(a));
            } else if (!dedup.insert(a).second) {
                add("state " + model.state_name(s) + " allows action " + model.action_name(a) +
                    " twice");
            }
        }
    }

    for (std::size_t i = 0; i < model.transitions().size(); ++i) {
        const Transition& t = model.transitions()[i];
        const std::string where = "transition #" + std::to_string(i);
        if (t.from < 0 || t.from >= model.num_states()) {
            add(where + " references unknown from-state index " + std::to_string(t.from));
            continue;
        }
        if (t.action < 0 || t.action >= model.num_actions()) {
            add(where + " from " + model.state_name(t.from) + " references unknown action index " +
                std::to_string(t.action));
            continue;
        }
        if (t.to < 0 || t.to >= model.num_states()) {
            add(where + " " + row_name(model, t.from, t.action) +
                " references unknown to-state index " + std::to_string(t.to));
            continue;
        }
        if (!(t.prob >= 0.0 && t.prob <= 1.0)) {
            std::ostringstream os;
            os << where << " " << row_name(model, t.from, t.action) << " -> "
               << model.state_name(t.to) << " has probability " << t.prob << " outside [0,1]";
            add(os.str());
        }
        const auto& acts = model.allowed(t.from);
        if (std::find(acts.begin(), acts.end(), t.action) == acts.end())
            add(where + " uses action " + model.action_name(t.action) + " not allowed in state " +
                model.state_name(t.from));
        if (!std::isfinite(t.reward))
            add(where + " " + row_name(model, t.from, t.action) + " has non-finite reward");
    }

    for (int s = 0; s < model.num_states(); ++s) {
        for (int a : model.allowed(s)) {
            if (a < 0 || a >= model.num_actions()) continue;
            double sum = 0.0;
            for (const Transition& t : model.arcs(s, a)) sum += t.prob;
            if (std::abs(sum - 1.0) > kRowSumTol) {
                std::ostringstream os;
                os << "row " << row_name(model, s, a) << " sums to " << sum;
                add(os.str());
            }
        }
    }
    return report;
}

void require_valid(const MdpModel& model) {
    ValidationReport report = validate_mdp(model);
    if (report.ok()) return;
    std::string msg = "invalid model:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
}

bool policy_valid(const MdpModel& model, const Policy& policy) {
    if (static_cast<int>(policy.action_of.size()) != model.num_states()) return false;
    for (int s = 0; s < model.num_states(); ++s) {
        const auto& acts = model.allowed(s);
        if (std::find(acts.begin(), acts.end(), policy.action_of[s]) == acts.end()) return false;
    }
    return true;
}

void require_valid_policy(const MdpModel& model, const Policy& policy) {
    if (!policy_valid(model, policy))
        throw std::invalid_argument("policy does not assign an allowed action to every state");
}

MdpModel recycling_robot() {
    const double beta = 0.8;
    const double r_rescue = -1.0;
    const double r_wait = 0.4;
    const double r_search = 0.9;
    // states: low=0, high=1; actions: search=0, wait=1, recharge=2
    std::vector<Transition> ts = {
        {0, 0, 0, beta, r_search},     // searching in low usually stays low
        {0, 0, 1, 1.0 - beta, r_rescue},
        {0, 1, 0, 1.0, r_wait},
        {0, 2, 1, 1.0, 0.0},
        {1, 0, 1, beta, r_search},
        {1, 0, 0, 1.0 - beta, r_search},
        {1, 1, 1, 1.0, r_wait},
        {1, 2, 1, 1.0, 0.0},
    };
    return MdpModel({"low", "high"}, {"search", "wait", "recharge"},
                    {{0, 1, 2}, {0, 1, 2}}, std::move(ts), 0.8);
}

MdpModel random_mdp(int n_states, int n_actions, double discount, std::uint64_t seed) {
    if (n_states < 1) throw std::invalid_argument("random_mdp: n_states must be >= 1");
    if (n_actions < 1) throw std::invalid_argument("random_mdp: n_actions must be >= 1");
    if (!(discount >= 0.0 && discount < 1.0))
        throw std::invalid_argument("random_mdp: discount must be in [0,1)");

    std::mt19937_64 gen(seed);
    std::vector<std::string> states, actions;
    for (int s = 0; s < n_states; ++s) states.push_back("s" + std::to_string(s));
    for (int a = 0; a < n_actions; ++a) actions.push_back("a" + std::to_string(a));

    std::vector<std::vector<int>> allowed(n_states);
    for (int s = 0; s < n_states; ++s)
        for (int a = 0; a < n_actions; ++a) allowed[s].push_back(a);

    std::vector<Transition> ts;
    ts.reserve(static_cast<std::size_t>(n_states) * n_actions * n_states);
    std::vector<double> row(n_states);
    for (int s = 0; s < n_states; ++s) {
        for (int a = 0; a < n_actions; ++a) {
            double sum = 0.0;
            for (int j = 0; j < n_states; ++j) {
                row[j] = uniform01(gen);
                sum += row[j];
            }
            if (sum <= 0.0) {
                std::fill(row.begin(), row.end(), 1.0 / n_states);
                sum = 1.0;
            }
            for (int j = 0; j < n_states; ++j)
                ts.push_back({s, a, j, row[j] / sum, 2.0 * uniform01(gen) - 1.0});
        }
    }
    return MdpModel(std::move(states), std::move(actions), std::move(allowed), std::move(ts),
                    discount);
}

std::pair<double, double> reward_bounds(const MdpModel& model) {
    if (model.transitions().empty()) return {0.0, 0.0};
    double lo = model.transitions().front().reward;
    double hi = lo;
    for (const Transition& t : model.transitions()) {
        lo = std::min(lo, t.reward);
        hi = std::max(hi, t.reward);
    }
    return {lo, hi};
}

double max_abs_reward(const MdpModel& model) {
    auto [lo, hi] = reward_bounds(model);
    return std::max(std::abs(lo), std::abs(hi));
}

std::pair<double, double> gain_bounds(const MdpModel& model) {
    auto [lo, hi] = reward_bounds(model);
    const double scale = 1.0 / (1.0 - model.discount());
    return {lo * scale, hi * scale};
}

} // namespace omdp
