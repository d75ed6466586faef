#include "omdp/mdp_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace omdp {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    out << j.dump(2) << '\n';
}

void reject_unknown_fields(const json& obj, const std::set<std::string>& known,
                           const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key)) throw ParseError(where + ": unknown field \"" + key + "\"");
}

const json& require_field(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

std::vector<std::string> string_array(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& v : arr) {
        if (!v.is_string()) throw ParseError(where + ": expected an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

int lookup_state(const MdpModel& model, const std::string& name, const std::string& where) {
    auto idx = model.state_index(name);
    if (!idx) throw ParseError(where + ": unknown state \"" + name + "\"");
    return *idx;
}

int lookup_action(const MdpModel& model, const std::string& name, const std::string& where) {
    auto idx = model.action_index(name);
    if (!idx) throw ParseError(where + ": unknown action \"" + name + "\"");
    return *idx;
}

} // namespace

MdpModel load_mdp(const std::string& path) {
    const json j = read_json(path);
    if (!j.is_object()) throw ParseError(path + ": top level must be an object");
    reject_unknown_fields(j, {"discount", "states", "actions", "allowed", "transitions"}, path);

    const json& jd = require_field(j, "discount", path);
    if (!jd.is_number()) throw ParseError(path + ": \"discount\" must be a number");
    const double discount = jd.get<double>();

    std::vector<std::string> states = string_array(require_field(j, "states", path), path + ": states");
    std::vector<std::string> actions =
        string_array(require_field(j, "actions", path), path + ": actions");

    // Name resolution below goes through a skeleton model so the lookups
    // and error messages are shared with the policy loader.
    MdpModel skeleton(states, actions, {}, {}, discount);

    const json& ja = require_field(j, "allowed", path);
    if (!ja.is_object()) throw ParseError(path + ": \"allowed\" must be a map state -> actions");
    std::vector<std::vector<int>> allowed(states.size());
    for (const auto& [state_name, acts] : ja.items()) {
        const int s = lookup_state(skeleton, state_name, path + ": allowed");
        for (const std::string& a : string_array(acts, path + ": allowed[" + state_name + "]"))
            allowed[s].push_back(lookup_action(skeleton, a, path + ": allowed[" + state_name + "]"));
    }

    const json& jt = require_field(j, "transitions", path);
    if (!jt.is_array()) throw ParseError(path + ": \"transitions\" must be an array");
    std::vector<Transition> transitions;
    int row = 0;
    for (const auto& entry : jt) {
        const std::string where = path + ": transitions[" + std::to_string(row++) + "]";
        if (!entry.is_object()) throw ParseError(where + ": expected an object");
        reject_unknown_fields(entry, {"from", "action", "to", "prob", "reward"}, where);
        Transition t;
        const json& jf = require_field(entry, "from", where);
        const json& jac = require_field(entry, "action", where);
        const json& jto = require_field(entry, "to", where);
        const json& jp = require_field(entry, "prob", where);
        const json& jr = require_field(entry, "reward", where);
        if (!jf.is_string() || !jac.is_string() || !jto.is_string())
            throw ParseError(where + ": \"from\"/\"action\"/\"to\" must be strings");
        if (!jp.is_number() || !jr.is_number())
            throw ParseError(where + ": \"prob\"/\"reward\" must be numbers");
        t.from = lookup_state(skeleton, jf.get<std::string>(), where);
        t.action = lookup_action(skeleton, jac.get<std::string>(), where);
        t.to = lookup_state(skeleton, jto.get<std::string>(), where);
        t.prob = jp.get<double>();
        t.reward = jr.get<double>();
        transitions.push_back(t);
    }

    return MdpModel(std::move(states), std::move(actions), std::move(allowed),
                    std::move(transitions), discount);
}

void save_mdp(const MdpModel& model, const std::string& path) {
    json j;
    j["discount"] = model.discount();
    j["states"] = model.states();
    j["actions"] = model.actions();
    json allowed = json::object();
    for (int s = 0; s < model.num_states(); ++s) {
        json acts = json::array();
        for (int a : model.allowed(s)) acts.push_back(model.action_name(a));
        allowed[model.state_name(s)] = std::move(acts);
    }
    j["allowed"] = std::move(allowed);
    json transitions = json::array();
    for (const Transition& t : model.transitions()) {
        transitions.push_back({{"from", model.state_name(t.from)},
                               {"action", model.action_name(t.action)},
                               {"to", model.state_name(t.to)},
                               {"prob", t.prob},
                               {"reward", t.reward}});
    }
    j["transitions"] = std::move(transitions);
    write_json(j, path);
}

Policy load_policy(const MdpModel& model, const std::string& path) {
    const json j = read_json(path);
    if (!j.is_object()) throw ParseError(path + ": policy file must map states to actions");
    Policy policy;
    policy.action_of.assign(model.num_states(), -1);
    for (const auto& [state_name, action_name] : j.items()) {
        const int s = lookup_state(model, state_name, path);
        if (!action_name.is_string()) throw ParseError(path + ": action for \"" + state_name +
                                                       "\" must be a string");
        policy.action_of[s] = lookup_action(model, action_name.get<std::string>(), path);
    }
    for (int s = 0; s < model.num_states(); ++s)
        if (policy.action_of[s] < 0)
            throw ParseError(path + ": no action for state \"" + model.state_name(s) + "\"");
    return policy;
}

void save_policy(const MdpModel& model, const Policy& policy, const std::string& path) {
    json j = json::object();
    for (int s = 0; s < model.num_states(); ++s)
        j[model.state_name(s)] = model.action_name(policy.action_of[s]);
    write_json(j, path);
}

std::vector<StateDistribution> load_distributions(const MdpModel& model, const std::string& path) {
    const json j = read_json(path);
    if (!j.is_object()) throw ParseError(path + ": distribution file must map states to objects");
    std::vector<StateDistribution> dists(model.num_states());
    for (const auto& [state_name, entry] : j.items()) {
        const int s = lookup_state(model, state_name, path);
        const std::string where = path + ": " + state_name;
        if (!entry.is_object()) throw ParseError(where + ": expected an object");
        reject_unknown_fields(entry, {"centers", "probs"}, where);
        const json& jc = require_field(entry, "centers", where);
        const json& jp = require_field(entry, "probs", where);
        if (!jc.is_array() || !jp.is_array() || jc.size() != jp.size())
            throw ParseError(where + ": \"centers\" and \"probs\" must be arrays of equal length");
        std::vector<double> centers, probs;
        for (const auto& v : jc) centers.push_back(v.get<double>());
        for (const auto& v : jp) probs.push_back(v.get<double>());
        try {
            dists[s].grid = std::make_shared<const GainGrid>(std::move(centers));
        } catch (const std::invalid_argument& e) {
            throw ParseError(where + ": " + e.what());
        }
        dists[s].probs = std::move(probs);
    }
    for (int s = 0; s < model.num_states(); ++s)
        if (!dists[s].grid)
            throw ParseError(path + ": no distribution for state \"" + model.state_name(s) + "\"");
    return dists;
}

void save_distributions(const MdpModel& model, const std::vector<StateDistribution>& dists,
                        const std::string& path) {
    json j = json::object();
    for (int s = 0; s < model.num_states(); ++s) {
        j[model.state_name(s)] = {{"centers", dists[s].grid->centers()},
                                  {"probs", dists[s].probs}};
    }
    write_json(j, path);
}

} // namespace omdp
