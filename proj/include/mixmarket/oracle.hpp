#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mixmarket/solver.hpp"

namespace mixmarket {

/// Aggregates of one agent-based market run.
struct SimulationResult {
    std::uint64_t seed = 0;
    std::int64_t n_buyers = 0;
    double realized_demand_share = 0.0;   // fraction relying on the public option
    double realized_rationing_prob = 0.0; // min{1, k / demand share}
    double realized_revenue = 0.0;        // per-capita monopolist revenue
    double mean_consumer_surplus = 0.0;
    double std_error_cs = 0.0;
};

/// Worst incentive-compatibility and participation gaps over a type grid.
/// Zero (up to float noise) certifies the mechanism.
struct ICReport {
    double max_ic_violation = 0.0;
    double max_ir_violation = 0.0;
    std::pair<double, double> worst_pair{0.0, 0.0}; // (true type, report)
};

struct PriceSearchResult {
    double best_price = 0.0;
    std::vector<double> prices;
    std::vector<double> revenues;
};

/// Argmax of revenue_at_cutoff over a uniform grid on (F^{-1}(k), v_hi].
/// Independent check of solve_cutoff: the two agree to one grid step.
double grid_argmax_revenue(const RegularDistribution& dist, double capacity, int n_points);

/// Evaluates the reporting game U(report, type) on an n_types x n_types grid
/// and returns the largest IC and IR violations (positive gaps; 0 = clean).
ICReport verify_ic_ir(const RegularDistribution& dist, double capacity,
                      const MechanismSolution& mech, int n_types);

/// Sweeps candidate posted prices, solving the buyer-equilibrium cutoff
/// c(p) with c (1 - min{1, k/F(c)}) = p for each, and returns the revenue
/// curve and its argmax. Confirms the mechanism optimum is attainable by a
/// plain posted price.
PriceSearchResult posted_price_best_response(const RegularDistribution& dist, double capacity,
                                             int n_prices);

/// Revenue excess of the randomized two-cutoff mechanism mixing step rules
/// at v1 and v2 (weighted to match the induced demand F(cutoff)) over the
/// single-cutoff mechanism. Nonpositive for every regular distribution.
double two_step_excess(const RegularDistribution& dist, double capacity, double cutoff,
                       double v1, double v2);

/// Max of two_step_excess over n_trials random matched-demand pairs around
/// the solved optimal cutoff. Must not exceed float noise (~1e-12).
double two_step_dominance_check(const RegularDistribution& dist, double capacity, int n_trials,
                                std::uint64_t seed);

/// Agent-based run: n_buyers values sampled by inverse transform from a
/// counter-based stream keyed on (seed, index), buyer set solved as the
/// fixed point of best responses against the empirical rationing
/// probability, rationing lottery for everyone else. Bit-identical output
/// for a fixed seed regardless of n_threads.
SimulationResult simulate_market(const RegularDistribution& dist, double capacity, double price,
                                 std::int64_t n_buyers, std::uint64_t seed, int n_threads = 0);

} // namespace mixmarket
