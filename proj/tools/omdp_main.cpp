// Command-line front end: validates MDP description files, solves for
// expected-gain and outage-optimal policies, and emits CSV curves for
// plotting. Exit codes: 0 success, 1 validation/convergence/data failure,
// 2 usage error.

#include "omdp/distributional.hpp"
#include "omdp/expected_gain.hpp"
#include "omdp/mdp.hpp"
#include "omdp/mdp_io.hpp"
#include "omdp/rollout.hpp"
#include "omdp/td.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kUsage;
}

int failure(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kFailure;
}

bool write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) return false;
    out << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return static_cast<bool>(out);
}

std::optional<omdp::MdpModel> open_model(const std::string& path, int& code) {
    if (!std::filesystem::exists(path)) {
        code = usage_error(path + ": no such file");
        return std::nullopt;
    }
    try {
        return omdp::load_mdp(path);
    } catch (const omdp::ParseError& e) {
        code = failure(e.what());
        return std::nullopt;
    }
}

struct GridOptions {
    int bins = 256;
    std::string mode = "global"; // global | centered
};

omdp::GridSet build_grids(const omdp::MdpModel& model, const GridOptions& opts) {
    if (opts.mode == "centered") {
        const auto vi = omdp::value_iteration(model);
        return omdp::make_centered_grids(model, opts.bins, vi.table);
    }
    return omdp::make_global_grids(model, opts.bins);
}

struct InitOptions {
    std::string mode = "uniform"; // uniform | point-mass
    double value = 0.0;
};

omdp::InitSpec to_init_spec(const InitOptions& opts) {
    omdp::InitSpec spec;
    spec.mode = opts.mode == "point-mass" ? omdp::InitMode::point_mass : omdp::InitMode::uniform;
    spec.value = opts.value;
    return spec;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& mdp_path) {
    std::cerr << "[omdp] validate " << mdp_path << "\n";
    int code = kOk;
    auto model = open_model(mdp_path, code);
    if (!model) return code;
    const omdp::ValidationReport report = omdp::validate_mdp(*model);
    if (report.ok()) {
        std::cout << "ok: " << model->num_states() << " states, " << model->num_actions()
                  << " actions, " << model->transitions().size() << " transitions\n";
        return kOk;
    }
    for (const auto& v : report.violations) std::cout << v << "\n";
    return kFailure;
}

// ---------------------------------------------------------- solve-expected

int cmd_solve_expected(const std::string& mdp_path, double tol, int max_iter,
                       const std::string& out, const std::string& policy_out) {
    std::cerr << "[omdp] solve-expected " << mdp_path << " tol=" << fmt(tol)
              << " max-iter=" << max_iter << " out=" << out << " policy-out=" << policy_out
              << "\n";
    if (tol <= 0) return usage_error("--tol must be > 0");
    if (max_iter < 1) return usage_error("--max-iter must be >= 1");
    int code = kOk;
    auto model = open_model(mdp_path, code);
    if (!model) return code;
    if (!omdp::validate_mdp(*model).ok()) return failure(mdp_path + ": model is not valid");

    const auto res = omdp::value_iteration(*model, tol, max_iter);
    const omdp::Policy policy = omdp::greedy_policy(*model, res.table);

    std::vector<std::vector<std::string>> rows;
    for (int s = 0; s < model->num_states(); ++s) {
        rows.push_back({model->state_name(s), fmt(res.table[s])});
        std::cout << model->state_name(s) << ": v=" << fmt(res.table[s])
                  << " action=" << model->action_name(policy.action_of[s]) << "\n";
    }
    if (!out.empty() && !write_csv(out, "state,value", rows)) return failure(out + ": write failed");
    if (!policy_out.empty()) omdp::save_policy(*model, policy, policy_out);
    if (!res.converged)
        return failure("value iteration did not converge in " + std::to_string(max_iter) +
                       " sweeps (last delta " + fmt(res.sweep_deltas.back()) + ")");
    return kOk;
}

// ------------------------------------------------------------ solve-outage

int cmd_solve_outage(const std::string& mdp_path, double alpha, const GridOptions& grid,
                     const std::string& sweep, const InitOptions& init, double tol, int max_iter,
                     const std::string& out, const std::string& policy_out) {
    std::cerr << "[omdp] solve-outage " << mdp_path << " alpha=" << fmt(alpha)
              << " bins=" << grid.bins << " grid=" << grid.mode << " sweep=" << sweep
              << " init=" << init.mode << " tol=" << fmt(tol) << " max-iter=" << max_iter << "\n";
    if (grid.bins < 2) return usage_error("--bins must be >= 2");
    if (tol <= 0) return usage_error("--tol must be > 0");
    if (max_iter < 1) return usage_error("--max-iter must be >= 1");
    int code = kOk;
    auto model = open_model(mdp_path, code);
    if (!model) return code;
    if (!omdp::validate_mdp(*model).ok()) return failure(mdp_path + ": model is not valid");

    const omdp::GridSet grids = build_grids(*model, grid);
    const auto mode = sweep == "snapshot" ? omdp::SweepMode::snapshot : omdp::SweepMode::in_place;
    const auto sol = omdp::solve_outage(*model, grids, alpha, to_init_spec(init), tol, max_iter, mode);

    for (int s = 0; s < model->num_states(); ++s) {
        const int a = sol.policy.action_of[s];
        std::cout << model->state_name(s) << ": action=" << model->action_name(a)
                  << " v(s,alpha)=" << fmt(omdp::outage_value(sol.dists[s], alpha)) << "\n";
    }
    if (!out.empty()) omdp::save_distributions(*model, sol.dists, out);
    if (!policy_out.empty()) omdp::save_policy(*model, sol.policy, policy_out);
    if (sol.oscillating) return failure("outage solve is oscillating with period 2; no fixed point");
    if (!sol.converged)
        return failure("outage solve did not converge in " + std::to_string(max_iter) + " sweeps");
    return kOk;
}

// -------------------------------------------------------------------- ccdf

std::vector<double> make_xs(double lo, double hi, int steps) {
    std::vector<double> xs(steps);
    const double step = steps > 1 ? (hi - lo) / (steps - 1) : 0.0;
    for (int i = 0; i < steps; ++i) xs[i] = lo + step * i;
    return xs;
}

int cmd_ccdf(const std::string& mdp_path, const std::string& policy_path,
             const std::string& dists_path, const std::string& state_name,
             const std::string& mode, long episodes, std::uint64_t seed, const GridOptions& grid,
             const InitOptions& init, double xs_min, double xs_max, int xs_steps, bool xs_auto,
             const std::string& out, const std::string& gains_out) {
    std::cerr << "[omdp] ccdf " << mdp_path << " state=" << state_name << " mode=" << mode
              << " episodes=" << episodes << " seed=" << seed << " bins=" << grid.bins
              << " xs-steps=" << xs_steps << " out=" << out << "\n";
    if (xs_steps < 1) return usage_error("--xs-steps must be >= 1");
    if (grid.bins < 2) return usage_error("--bins must be >= 2");
    if (episodes < 1) return usage_error("--episodes must be >= 1");
    if (policy_path.empty() == dists_path.empty())
        return usage_error("exactly one of --policy / --from-dists is required");
    int code = kOk;
    auto model = open_model(mdp_path, code);
    if (!model) return code;
    if (!omdp::validate_mdp(*model).ok()) return failure(mdp_path + ": model is not valid");
    const auto s = model->state_index(state_name);
    if (!s) return usage_error("unknown state \"" + state_name + "\"");

    auto [glo, ghi] = omdp::gain_bounds(*model);
    if (xs_auto) {
        xs_min = glo;
        xs_max = ghi;
    }
    if (xs_max < xs_min) return usage_error("--xs-max must be >= --xs-min");
    const std::vector<double> xs = make_xs(xs_min, xs_max, xs_steps);

    std::vector<double> curve;
    try {
        if (!dists_path.empty()) {
            if (!std::filesystem::exists(dists_path)) return usage_error(dists_path + ": no such file");
            const auto dists = omdp::load_distributions(*model, dists_path);
            curve = omdp::ccdf_from_distribution(dists[*s], xs);
        } else {
            if (!std::filesystem::exists(policy_path)) return usage_error(policy_path + ": no such file");
            const omdp::Policy policy = omdp::load_policy(*model, policy_path);
            if (mode == "analytic") {
                const omdp::GridSet grids = build_grids(*model, grid);
                const auto res =
                    omdp::evaluate_policy_distribution(*model, policy, grids, to_init_spec(init));
                if (!res.converged) return failure("distribution evaluation did not converge");
                curve = omdp::ccdf_from_distribution(res.dists[*s], xs);
            } else if (mode == "monte-carlo") {
                omdp::RolloutConfig cfg;
                cfg.episodes = episodes;
                cfg.seed = seed;
                const auto gains = omdp::simulate_gains(*model, policy, *s, cfg);
                if (!gains_out.empty()) {
                    std::vector<std::vector<std::string>> rows;
                    for (double g : gains) rows.push_back({fmt(g)});
                    if (!write_csv(gains_out, "gain", rows)) return failure(gains_out + ": write failed");
                }
                curve = omdp::empirical_ccdf(gains, xs);
            } else {
                return usage_error("--mode must be analytic or monte-carlo");
            }
        }
    } catch (const omdp::ParseError& e) {
        return failure(e.what());
    }

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({fmt(xs[i]), fmt(curve[i])});
    if (!write_csv(out, "x,ccdf", rows)) return failure(out + ": write failed");
    std::cout << "wrote " << out << " (" << xs.size() << " points)\n";
    return kOk;
}

// ----------------------------------------------------------------- compare

int cmd_compare(const std::string& mdp_path, double alpha, const GridOptions& grid, double tol,
                int max_iter) {
    std::cerr << "[omdp] compare " << mdp_path << " alpha=" << fmt(alpha) << " bins=" << grid.bins
              << " grid=" << grid.mode << " tol=" << fmt(tol) << " max-iter=" << max_iter << "\n";
    if (grid.bins < 2) return usage_error("--bins must be >= 2");
    int code = kOk;
    auto model = open_model(mdp_path, code);
    if (!model) return code;
    if (!omdp::validate_mdp(*model).ok()) return failure(mdp_path + ": model is not valid");

    const auto vi = omdp::value_iteration(*model, tol, max_iter);
    const omdp::Policy expected = omdp::greedy_policy(*model, vi.table);
    const omdp::GridSet grids = build_grids(*model, grid);
    const auto sol = omdp::solve_outage(*model, grids, alpha, {}, tol, max_iter);
    if (!vi.converged) return failure("value iteration did not converge");
    if (!sol.converged)
        return failure(sol.oscillating ? "outage solve is oscillating with period 2"
                                       : "outage solve did not converge");

    std::cout << "state,gain_action,outage_action,v,v_alpha\n";
    for (int s = 0; s < model->num_states(); ++s) {
        std::cout << model->state_name(s) << "," << model->action_name(expected.action_of[s]) << ","
                  << model->action_name(sol.policy.action_of[s]) << "," << fmt(vi.table[s]) << ","
                  << fmt(omdp::outage_value(sol.dists[s], alpha)) << "\n";
    }
    return kOk;
}

// ----------------------------------------------------------------- td-demo

int cmd_td_demo(double p, double mean1, double mean2, int bins, long steps, double lr,
                const std::string& loss, std::uint64_t seed, bool exact, const std::string& out) {
    std::cerr << "[omdp] td-demo p=" << fmt(p) << " mean1=" << fmt(mean1) << " mean2=" << fmt(mean2)
              << " bins=" << bins << " steps=" << steps << " lr=" << fmt(lr) << " loss=" << loss
              << " seed=" << seed << (exact ? " exact" : "") << " out=" << out << "\n";
    if (!(lr > 0.0 && lr <= 1.0)) return usage_error("--lr must be in (0, 1]");
    if (!(p >= 0.0 && p <= 1.0)) return usage_error("--p must be in [0, 1]");
    if (bins < 2) return usage_error("--bins must be >= 2");
    if (steps < 1) return usage_error("--steps must be >= 1");
    if (loss != "squared" && loss != "kl") return usage_error("--loss must be squared or kl");

    omdp::TdConfig cfg;
    cfg.learning_rate = lr;
    cfg.loss = loss == "kl" ? omdp::TdLoss::kl_divergence : omdp::TdLoss::squared_difference;
    cfg.steps = steps;
    cfg.seed = seed;
    const auto res = omdp::mixture_experiment(p, mean1, mean2, bins, cfg, !exact);

    if (!out.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < res.trace.size(); ++i)
            rows.push_back({std::to_string(i + 1), fmt(res.trace[i])});
        if (!write_csv(out, "step,l1_error", rows)) return failure(out + ": write failed");
    }
    std::cout << "l1_error=" << fmt(res.l1_error) << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discounted-MDP solver for expected-gain and outage objectives"};
    app.require_subcommand(1);

    std::string mdp_path, out, policy_out, policy_path, dists_path, state_name, gains_out;
    std::string sweep = "inplace", mode = "analytic", loss = "squared";
    GridOptions grid;
    InitOptions init;
    double tol = 1e-9, alpha = 0.0;
    int max_iter = 10000, xs_steps = 96;
    double xs_min = 0.0, xs_max = 0.0;
    long episodes = 100000, steps = 100000;
    std::uint64_t seed = 1;
    double p = 0.5, mean1 = -1.0, mean2 = 1.0, lr = 0.01;
    int bins = 64;
    bool exact = false;

    auto* validate = app.add_subcommand("validate", "Check an MDP description file");
    validate->add_option("mdp", mdp_path, "MDP description file")->required();

    auto* solve_expected =
        app.add_subcommand("solve-expected", "Value iteration + greedy policy");
    solve_expected->add_option("mdp", mdp_path)->required();
    solve_expected->add_option("--tol", tol, "stopping tolerance");
    solve_expected->add_option("--max-iter", max_iter, "sweep cap");
    solve_expected->add_option("--out", out, "values CSV (state,value)");
    solve_expected->add_option("--policy-out", policy_out, "policy JSON output");

    auto* solve_outage = app.add_subcommand("solve-outage", "Outage-optimal policy search");
    solve_outage->add_option("mdp", mdp_path)->required();
    solve_outage->add_option("--alpha", alpha, "gain threshold")->required();
    solve_outage->add_option("--bins", grid.bins, "number of gain bins");
    solve_outage->add_option("--grid", grid.mode)->check(CLI::IsMember({"global", "centered"}));
    solve_outage->add_option("--sweep", sweep)->check(CLI::IsMember({"inplace", "snapshot"}));
    solve_outage->add_option("--init", init.mode)->check(CLI::IsMember({"uniform", "point-mass"}));
    solve_outage->add_option("--init-value", init.value, "point-mass location");
    solve_outage->add_option("--tol", tol);
    solve_outage->add_option("--max-iter", max_iter);
    solve_outage->add_option("--out", out, "distribution dump JSON");
    solve_outage->add_option("--policy-out", policy_out, "policy JSON output");

    auto* ccdf = app.add_subcommand("ccdf", "Analytic or Monte Carlo CCDF curve");
    ccdf->add_option("mdp", mdp_path)->required();
    ccdf->add_option("--policy", policy_path, "policy JSON file");
    ccdf->add_option("--from-dists", dists_path, "distribution dump JSON");
    ccdf->add_option("--state", state_name, "start state")->required();
    ccdf->add_option("--mode", mode)->check(CLI::IsMember({"analytic", "monte-carlo"}));
    ccdf->add_option("--episodes", episodes);
    ccdf->add_option("--seed", seed);
    ccdf->add_option("--bins", grid.bins);
    ccdf->add_option("--grid", grid.mode)->check(CLI::IsMember({"global", "centered"}));
    ccdf->add_option("--init", init.mode)->check(CLI::IsMember({"uniform", "point-mass"}));
    ccdf->add_option("--init-value", init.value);
    auto* xmin_opt = ccdf->add_option("--xs-min", xs_min, "first x (default: gain lower bound)");
    auto* xmax_opt = ccdf->add_option("--xs-max", xs_max, "last x (default: gain upper bound)");
    ccdf->add_option("--xs-steps", xs_steps);
    ccdf->add_option("--out", out, "CCDF CSV (x,ccdf)")->required();
    ccdf->add_option("--gains-out", gains_out, "raw gains CSV (monte-carlo only)");

    auto* compare = app.add_subcommand("compare", "Expected-gain vs outage policies side by side");
    compare->add_option("mdp", mdp_path)->required();
    compare->add_option("--alpha", alpha)->required();
    compare->add_option("--bins", grid.bins);
    compare->add_option("--grid", grid.mode)->check(CLI::IsMember({"global", "centered"}));
    compare->add_option("--tol", tol);
    compare->add_option("--max-iter", max_iter);

    auto* td_demo = app.add_subcommand("td-demo", "Mixture-convergence experiment");
    td_demo->add_option("--p", p, "probability of the first label");
    td_demo->add_option("--mean1", mean1);
    td_demo->add_option("--mean2", mean2);
    td_demo->add_option("--bins", bins);
    td_demo->add_option("--steps", steps);
    td_demo->add_option("--lr", lr, "learning rate");
    td_demo->add_option("--loss", loss)->check(CLI::IsMember({"squared", "kl"}));
    td_demo->add_option("--seed", seed);
    td_demo->add_flag("--exact", exact, "use the mixture itself as the label (non-sampled)");
    td_demo->add_option("--out", out, "trace CSV (step,l1_error)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(mdp_path);
        if (solve_expected->parsed())
            return cmd_solve_expected(mdp_path, tol, max_iter, out, policy_out);
        if (solve_outage->parsed())
            return cmd_solve_outage(mdp_path, alpha, grid, sweep, init, tol, max_iter, out,
                                    policy_out);
        if (ccdf->parsed())
            return cmd_ccdf(mdp_path, policy_path, dists_path, state_name, mode, episodes, seed,
                            grid, init, xs_min, xs_max, xs_steps,
                            xmin_opt->count() == 0 && xmax_opt->count() == 0, out, gains_out);
        if (compare->parsed()) return cmd_compare(mdp_path, alpha, grid, tol, max_iter);
        if (td_demo->parsed())
            return cmd_td_demo(p, mean1, mean2, bins, steps, lr, loss, seed, exact, out);
    } catch (const omdp::ParseError& e) {
        return failure(e.what());
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        return failure(e.what());
    }
    return kUsage;
}
