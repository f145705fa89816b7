#pragma once

#include <vector>

#include "mixmarket/solver.hpp"

namespace mixmarket {

enum class Regime {
    rationed, // F(v*) > k: the public option is congested
    slack,    // F(v*) <= k: demand fits within capacity
};

/// Solution of the quality/price-generalized cutoff problem.
struct GeneralSolution {
    double cutoff = 0.0;        // v*
    double price = 0.0;         // posted price for types above v*
    Regime regime = Regime::rationed;
    double objective_value = 0.0;
    bool near_tie = false;      // a second local optimum within 1e-9 of the best
};

/// Seller objective at cutoff v:
/// (1 - F(v)) [ v (1 - theta * min{k/F(v), 1}) + rho * min{k/F(v), 1} ],
/// with min{k/F, 1} = 1 at F(v) = 0 (continuous extension: demand below
/// capacity is unrationed). Reduces to revenue_at_cutoff when theta = 1,
/// rho = 0 and F(v) > k.
double op_objective(const RegularDistribution& dist, const MarketParams& params, double v);

/// Global maximum of op_objective via a 10,001-point grid followed by
/// golden-section refinement of every bracketing cell holding a local
/// maximum. Near-ties (within 1e-9 in objective) set the flag and resolve
/// toward the smaller cutoff.
GeneralSolution solve_general(const RegularDistribution& dist, const MarketParams& params);

/// Large-capacity limit cutoff v* = min{v : (1-theta) phi(v) + rho >= 0},
/// where the mixed market approaches Bertrand competition against a rival
/// with marginal cost rho. Requires quality_ratio in (0,1) and
/// public_price > 0 (the expression degenerates at theta = 1, rho = 0).
double bertrand_limit_cutoff(const RegularDistribution& dist, double quality_ratio,
                             double public_price);

/// Reverse timing: buyers queue at the public option first and top up at the
/// monopolist, which therefore faces a standard screening problem.
struct ComplementOutcome {
    double price = 0.0;            // the standard monopoly price v^M
    double producer_surplus = 0.0; // (1-k) v^M (1 - F(v^M))
    double aggregate_consumer_surplus = 0.0;
    std::vector<double> type_grid;
    std::vector<double> surplus;
};

/// U(v, k) under complement timing: k v below v^M, v - (1-k) v^M above.
double complement_surplus(const RegularDistribution& dist, double capacity, double v);

ComplementOutcome complement_outcome(const RegularDistribution& dist, double capacity,
                                     int type_grid_size = 0);

} // namespace mixmarket
