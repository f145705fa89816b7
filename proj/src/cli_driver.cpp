#include "mixmarket/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mixmarket/config.hpp"
#include "mixmarket/csv.hpp"
#include "mixmarket/general_model.hpp"
#include "mixmarket/numeric.hpp"
#include "mixmarket/oracle.hpp"
#include "mixmarket/welfare.hpp"

namespace mixmarket::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRegularity = 3;
constexpr int kExitConvergence = 4;

struct Market {
    MarketConfig config;
    RegularDistribution dist;
    MarketParams params;
};

Market load_market(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    std::ostringstream text;
    text << in.rdbuf();
    MarketConfig config = parse_config(text.str());
    RegularDistribution dist = make_distribution(config);
    MarketParams params = make_params(config);
    validate_params(dist, params);
    return {std::move(config), std::move(dist), params};
}

void print_value(const char* name, double value) {
    std::printf("%s=%.6g\n", name, value);
}

bool baseline(const MarketParams& params) {
    return params.quality_ratio == 1.0 && params.public_price == 0.0;
}

// commands built on the baseline analysis refuse generalized parameters
// rather than silently ignoring them
void require_baseline(const Market& market, const char* command) {
    if (!baseline(market.params))
        throw ConfigError(std::string(command) +
                          " supports quality_ratio = 1 and public_price = 0 only; "
                          "use 'solve' for the generalized model");
}

void require_substitute(const Market& market, const char* command) {
    if (market.params.timing != MarketParams::Timing::substitute)
        throw ConfigError(std::string(command) + " requires timing = substitute");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // LF line endings everywhere
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

std::vector<double> capacity_grid(const MarketConfig& config) {
    return num::linspace(config.k_min, config.k_max, config.k_steps);
}

SweepResult complement_sweep(const RegularDistribution& dist, const std::vector<double>& grid) {
    // under complement timing the monopolist ignores the public option:
    // price is pinned at v^M and the rationing probability equals k
    SweepResult out;
    const double vm = dist.standard_monopoly_price();
    const double sold = 1.0 - dist.cdf(vm);
    for (double k : grid) {
        const ComplementOutcome comp = complement_outcome(dist, k);
        out.capacity.push_back(k);
        out.cutoff.push_back(vm);
        out.rationing_prob.push_back(k);
        out.price.push_back(comp.price);
        out.producer_surplus.push_back(comp.producer_surplus);
        out.consumer_surplus.push_back(comp.aggregate_consumer_surplus);
        out.total_surplus.push_back(comp.aggregate_consumer_surplus + comp.producer_surplus);
        out.cutoff_sensitivity.push_back(0.0);
        out.rationing_sensitivity.push_back(1.0);
        out.price_sensitivity.push_back(0.0);
        out.producer_surplus_sensitivity.push_back(-vm * sold);
        out.foc_residual.push_back(0.0);
    }
    return out;
}

int cmd_solve(const Market& market) {
    market.dist.require_regular();
    if (market.params.timing == MarketParams::Timing::complement) {
        const ComplementOutcome comp = complement_outcome(market.dist, market.config.capacity);
        print_value("price", comp.price);
        print_value("rationing_prob", market.config.capacity);
        print_value("producer_surplus", comp.producer_surplus);
        print_value("consumer_surplus", comp.aggregate_consumer_surplus);
        print_value("total_surplus", comp.aggregate_consumer_surplus + comp.producer_surplus);
        return kExitOk;
    }
    if (!baseline(market.params)) {
        const GeneralSolution sol = solve_general(market.dist, market.params);
        print_value("cutoff", sol.cutoff);
        print_value("price", sol.price);
        print_value("objective", sol.objective_value);
        std::printf("regime=%s\n", sol.regime == Regime::rationed ? "rationed" : "slack");
        std::printf("near_tie=%s\n", sol.near_tie ? "true" : "false");
        return kExitOk;
    }
    const MechanismSolution mech = solve_mechanism(market.dist, market.config.capacity);
    const double cs = aggregate_consumer_surplus(market.dist, mech);
    print_value("cutoff", mech.cutoff);
    print_value("price", mech.price);
    print_value("pi", mech.rationing_prob);
    print_value("induced_demand", mech.induced_demand);
    print_value("producer_surplus", mech.producer_surplus);
    print_value("consumer_surplus", cs);
    print_value("total_surplus", cs + mech.producer_surplus);
    print_value("foc_residual", mech.foc_residual);
    return kExitOk;
}

int cmd_sweep(const Market& market, const std::string& out_path) {
    market.dist.require_regular();
    require_baseline(market, "sweep");
    const std::vector<double> grid = capacity_grid(market.config);
    const SweepResult result = market.params.timing == MarketParams::Timing::complement
                                   ? complement_sweep(market.dist, grid)
                                   : sweep(market.dist, grid);
    auto out = open_output(out_path);
    csv::write_sweep(out, result);
    std::printf("rows=%d\n", static_cast<int>(result.size()));
    std::printf("out=%s\n", out_path.c_str());
    return kExitOk;
}

int cmd_condition(const Market& market, const std::string& out_path) {
    market.dist.require_regular();
    const ConditionReport report = check_condition(market.dist, 2001);
    std::printf("holds_everywhere=%s\n", report.holds_everywhere ? "true" : "false");
    for (const auto& [lo, hi] : report.failing_intervals)
        std::printf("failing_interval=%.6g %.6g\n", lo, hi);
    if (report.threshold_root) print_value("threshold_root", *report.threshold_root);
    const HazardRateCriterion cor = hazard_rate_criterion(market.dist);
    std::printf("hazard_criterion_applicable=%s\n", cor.applicable ? "true" : "false");
    if (cor.applicable)
        std::printf("hazard_criterion_price_decreasing=%s\n", cor.price_decreasing ? "true" : "false");
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        csv::write_condition(out, report);
        std::printf("out=%s\n", out_path.c_str());
    }
    return kExitOk;
}

int cmd_simulate(const Market& market, const std::string& out_path) {
    market.dist.require_regular();
    require_baseline(market, "simulate");
    require_substitute(market, "simulate");
    const MechanismSolution mech = solve_mechanism(market.dist, market.config.capacity);
    const SimulationResult sim =
        simulate_market(market.dist, market.config.capacity, mech.price, market.config.buyers,
                        market.config.seed);
    print_value("price", mech.price);
    print_value("realized_demand_share", sim.realized_demand_share);
    print_value("realized_rationing_prob", sim.realized_rationing_prob);
    print_value("realized_revenue", sim.realized_revenue);
    print_value("mean_cs", sim.mean_consumer_surplus);
    print_value("stderr_cs", sim.std_error_cs);
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        csv::write_simulation(out, {sim});
        std::printf("out=%s\n", out_path.c_str());
    }
    return kExitOk;
}

int cmd_verify(const Market& market) {
    market.dist.require_regular();
    require_baseline(market, "verify");
    require_substitute(market, "verify");
    const double k = market.config.capacity;
    const MechanismSolution mech = solve_mechanism(market.dist, k);

    const double grid_opt = grid_argmax_revenue(market.dist, k, 10001);
    const double grid_step = (market.dist.v_hi() - market.dist.quantile(k)) / 10001;
    print_value("cutoff", mech.cutoff);
    print_value("grid_argmax_gap", std::fabs(grid_opt - mech.cutoff));
    std::printf("grid_argmax_ok=%s\n",
                std::fabs(grid_opt - mech.cutoff) <= grid_step ? "true" : "false");

    const ICReport ic = verify_ic_ir(market.dist, k, mech, 501);
    print_value("ic_max_violation", ic.max_ic_violation);
    print_value("ir_max_violation", ic.max_ir_violation);

    const double excess = two_step_dominance_check(market.dist, k, 1000, market.config.seed);
    print_value("two_step_max_excess", excess);

    const PriceSearchResult prices = posted_price_best_response(market.dist, k, 1001);
    print_value("posted_price_best", prices.best_price);
    print_value("posted_price_gap", std::fabs(prices.best_price - mech.price));
    return kExitOk;
}

int cmd_figures(const Market& market, const std::string& which, const std::string& out_path) {
    market.dist.require_regular();
    require_baseline(market, "figures");
    const bool by_type = which == "1a" || which == "2a";
    const bool by_capacity = which == "1b" || which == "2b";
    if (!by_type && !by_capacity)
        throw ConfigError("--which must be one of 1a, 1b, 2a, 2b");

    auto out = open_output(out_path);
    if (by_type) {
        const double k = market.config.capacity;
        const std::vector<double> grid =
            num::linspace(market.dist.v_lo(), market.dist.v_hi(), market.config.type_grid);
        std::vector<double> mixed, monopoly_only, public_only;
        const MechanismSolution mech =
            market.params.timing == MarketParams::Timing::substitute
                ? solve_mechanism(market.dist, k)
                : MechanismSolution{};
        for (double v : grid) {
            mixed.push_back(market.params.timing == MarketParams::Timing::substitute
                                ? consumer_surplus(mech, v)
                                : complement_surplus(market.dist, k, v));
            monopoly_only.push_back(monopoly_only_surplus(market.dist, v));
            public_only.push_back(public_only_surplus(k, v));
        }
        csv::write_surplus_by_type(out, grid, mixed, monopoly_only, public_only);
    } else {
        const std::vector<double> grid = capacity_grid(market.config);
        const SweepResult result = market.params.timing == MarketParams::Timing::complement
                                       ? complement_sweep(market.dist, grid)
                                       : sweep(market.dist, grid);
        csv::write_sweep(out, result);
    }
    std::printf("out=%s\n", out_path.c_str());
    return kExitOk;
}

} // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"mixed-market monopoly / public-option solver", "mixmarket"};
    app.require_subcommand(1);

    std::string config_path, out_path, which;

    auto* solve = app.add_subcommand("solve", "solve the optimal mechanism");
    solve->add_option("--config", config_path, "market config file")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "equilibrium over a capacity grid (CSV)");
    sweep_cmd->add_option("--config", config_path)->required();
    sweep_cmd->add_option("--out", out_path, "output CSV path")->required();

    auto* condition = app.add_subcommand("condition", "price-monotonicity condition report");
    condition->add_option("--config", config_path)->required();
    condition->add_option("--out", out_path, "optional CSV of condition samples");

    auto* simulate = app.add_subcommand("simulate", "agent-based market simulation");
    simulate->add_option("--config", config_path)->required();
    simulate->add_option("--out", out_path, "optional CSV of simulation results");

    auto* verify = app.add_subcommand("verify", "brute-force verification of the solution");
    verify->add_option("--config", config_path)->required();

    auto* figures = app.add_subcommand("figures", "figure data (CSV)");
    figures->add_option("--config", config_path)->required();
    figures->add_option("--which", which, "panel: 1a, 1b, 2a or 2b")->required();
    figures->add_option("--out", out_path, "output CSV path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        const Market market = load_market(config_path);
        if (solve->parsed()) return cmd_solve(market);
        if (sweep_cmd->parsed()) return cmd_sweep(market, out_path);
        if (condition->parsed()) return cmd_condition(market, out_path);
        if (simulate->parsed()) return cmd_simulate(market, out_path);
        if (verify->parsed()) return cmd_verify(market);
        if (figures->parsed()) return cmd_figures(market, which, out_path);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const RegularityError& e) {
        std::cerr << "regularity error: " << e.what() << "\n";
        return kExitRegularity;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitConvergence;
    }
}

} // namespace mixmarket::cli
