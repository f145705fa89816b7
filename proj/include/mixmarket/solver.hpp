#pragma once

#include "mixmarket/distribution.hpp"

namespace mixmarket {

/// Market environment: public-option capacity plus the generalized-model
/// knobs (quality ratio and subsidized public price; both inert in the
/// baseline), and the timing regime.
struct MarketParams {
    enum class Timing { substitute, complement };

    double capacity = 0.0;
    double quality_ratio = 1.0;
    double public_price = 0.0;
    Timing timing = Timing::substitute;

    bool operator==(const MarketParams&) const = default;
};

/// Throws std::invalid_argument unless 0 < capacity < 1.
void require_capacity(double capacity);
/// Validates all MarketParams constraints against the distribution support,
/// including the standing assumption public_price <= quality_ratio * v_lo.
void validate_params(const RegularDistribution& dist, const MarketParams& params);

/// The revenue-optimal cutoff mechanism: types above `cutoff` buy at `price`,
/// everyone else relies on the rationed public option.
struct MechanismSolution {
    double cutoff = 0.0;           // indifference type
    double price = 0.0;            // cutoff * (1 - rationing_prob)
    double rationing_prob = 0.0;   // capacity / F(cutoff)
    double induced_demand = 0.0;   // F(cutoff), mass relying on the public option
    double producer_surplus = 0.0; // price * (1 - F(cutoff))
    double foc_residual = 0.0;     // first-order-condition residual at the cutoff
};

/// r(v, k) = (k / F(v)) G(v) - phi(v) F(v). Strictly decreasing in v on
/// (max{v^M, F^{-1}(k)}, v_hi]; its unique zero there is the optimal cutoff.
double foc_residual(const RegularDistribution& dist, double capacity, double v);

/// Unique root of the first-order condition, bracketed on
/// [max{v^M, F^{-1}(k)}, v_hi] and bisected to width 1e-12 * range.
double solve_cutoff(const RegularDistribution& dist, double capacity);

MechanismSolution solve_mechanism(const RegularDistribution& dist, double capacity);

/// Revenue from selling to all types above v:
/// (1 - k/F(v)) * v * (1 - F(v)), via the closed-form tail integral.
/// Defined for v with F(v) > k.
double revenue_at_cutoff(const RegularDistribution& dist, double capacity, double v);

/// Revenue lost to public-option competition at cutoff v:
/// (k / F(v)) * v * (1 - F(v)). Satisfies
/// revenue_at_cutoff = v (1 - F(v)) - effective_cost identically.
double effective_cost(const RegularDistribution& dist, double capacity, double v);

/// k -> 0 limit: the standard monopoly outcome (posted price v^M).
struct MonopolyOnlyOutcome {
    double price = 0.0;
    double producer_surplus = 0.0;
};
MonopolyOnlyOutcome monopoly_only_outcome(const RegularDistribution& dist);
/// Surplus of type v in a monopoly-only market: max{v - v^M, 0}.
double monopoly_only_surplus(const RegularDistribution& dist, double v);
/// Surplus of type v when only the public option serves the market: k * v.
double public_only_surplus(double capacity, double v);

} // namespace mixmarket
