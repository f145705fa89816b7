#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mixmarket/solver.hpp"

namespace mixmarket {

/// Per-capacity welfare snapshot: the equilibrium quantities, consumer
/// surplus sampled on a type grid, and the aggregates.
struct WelfareReport {
    double capacity = 0.0;
    double cutoff = 0.0;
    double price = 0.0;
    double rationing_prob = 0.0;
    std::vector<double> type_grid;
    std::vector<double> surplus; // U(v, k) per grid point
    double aggregate_consumer_surplus = 0.0;
    double producer_surplus = 0.0;
    double total_surplus = 0.0;
};

/// Outcome of testing the price-monotonicity condition
/// v f/(1-F) + v G'/G >= 2 on (v^M, v_hi).
struct ConditionReport {
    bool holds_everywhere = false;
    std::vector<double> sample_points;
    std::vector<double> lhs_values;
    std::vector<std::pair<double, double>> failing_intervals;
    /// Boundary where the LHS crosses 2; reported when v^M = v_lo and the
    /// sampled LHS changes sign exactly once.
    std::optional<double> threshold_root;
};

struct HazardRateCriterion {
    bool applicable = false;      // v^M = v_lo and increasing hazard rate
    bool price_decreasing = false; // f(v_lo) * v_lo >= 2
};

/// Equilibrium quantities and their capacity derivatives over a k grid.
/// Column order matches the sweep CSV schema.
struct SweepResult {
    std::vector<double> capacity;
    std::vector<double> cutoff;
    std::vector<double> rationing_prob;
    std::vector<double> price;
    std::vector<double> producer_surplus;
    std::vector<double> consumer_surplus;
    std::vector<double> total_surplus;
    std::vector<double> cutoff_sensitivity;           // theta'(k)
    std::vector<double> rationing_sensitivity;        // pi'(k)
    std::vector<double> price_sensitivity;            // p'(k)
    std::vector<double> producer_surplus_sensitivity; // P'(k)
    std::vector<double> foc_residual;

    std::size_t size() const { return capacity.size(); }
};

/// U(v, k): rationing_prob * v below the cutoff, v - price above.
double consumer_surplus(const RegularDistribution& dist, double capacity, double v);
double consumer_surplus(const MechanismSolution& mech, double v);

/// Aggregate consumer surplus C(k) by adaptive quadrature, split at the
/// cutoff so each piece is smooth.
double aggregate_consumer_surplus(const RegularDistribution& dist, double capacity);
double aggregate_consumer_surplus(const RegularDistribution& dist, const MechanismSolution& mech);

/// theta'(k) > 0 via the implicit function theorem on r(theta(k), k) = 0.
double cutoff_sensitivity(const RegularDistribution& dist, double capacity);
double cutoff_sensitivity(const RegularDistribution& dist, double capacity,
                          const MechanismSolution& mech);

/// pi'(k) > 0.
double rationing_sensitivity(const RegularDistribution& dist, double capacity);
double rationing_sensitivity(const RegularDistribution& dist, double capacity,
                             const MechanismSolution& mech);

/// p'(k) = theta'(1 - pi) - theta * pi'. Nonpositive exactly when the
/// condition LHS at the cutoff is >= 2.
double price_sensitivity(const RegularDistribution& dist, double capacity);
double price_sensitivity(const RegularDistribution& dist, double capacity,
                         const MechanismSolution& mech);

/// P'(k) = -cutoff (1 - F(cutoff)) / F(cutoff) < 0 (envelope theorem).
double producer_surplus_sensitivity(const RegularDistribution& dist, double capacity);
double producer_surplus_sensitivity(const RegularDistribution& dist, double capacity,
                                    const MechanismSolution& mech);

/// LHS of the price-monotonicity condition at v in (v^M, v_hi).
double condition_lhs(const RegularDistribution& dist, double v);

/// Samples the condition over (v^M, v_hi) on grid_size >= 1001 points and
/// bisects each sign change of (LHS - 2) to 1e-9 to bound failing intervals.
ConditionReport check_condition(const RegularDistribution& dist, int grid_size);

HazardRateCriterion hazard_rate_criterion(const RegularDistribution& dist, int grid_size = 2001);

/// U(v, k) - k v: the gain of type v from adding the monopolist to a market
/// served only by the public option. Nonnegative; strictly positive for v > 0.
double entry_gain(const RegularDistribution& dist, double capacity, double v);

WelfareReport make_welfare_report(const RegularDistribution& dist, double capacity,
                                  int type_grid_size = 201);

/// Evaluates the full equilibrium at every capacity in k_grid (strictly
/// increasing, all in (0,1)). Points are independent and computed
/// concurrently; output order is by k regardless of scheduling.
/// n_threads <= 0 selects the hardware default (capped by MIXMARKET_THREADS).
SweepResult sweep(const RegularDistribution& dist, const std::vector<double>& k_grid,
                  int n_threads = 0);

} // namespace mixmarket
