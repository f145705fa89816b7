#include "mixmarket/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixmarket/numeric.hpp"

namespace mixmarket {

void require_capacity(double capacity) {
    if (!(capacity > 0.0) || !(capacity < 1.0))
        throw std::invalid_argument("capacity must lie in the open interval (0, 1)");
}

void validate_params(const RegularDistribution& dist, const MarketParams& params) {
    require_capacity(params.capacity);
    if (!(params.quality_ratio > 0.0) || !(params.quality_ratio <= 1.0))
        throw std::invalid_argument("quality_ratio must lie in (0, 1]");
    if (!(params.public_price >= 0.0))
        throw std::invalid_argument("public_price must be nonnegative");
    if (params.public_price > params.quality_ratio * dist.v_lo())
        throw std::invalid_argument(
            "public_price must not exceed quality_ratio * v_lo; a larger subsidized price "
            "excludes low types and is equivalent to truncating the support");
}

double foc_residual(const RegularDistribution& dist, double capacity, double v) {
    require_capacity(capacity);
    if (!(v > dist.v_lo()) || !(v <= dist.v_hi()))
        throw std::domain_error("foc_residual requires v in (v_lo, v_hi]");
    const double F = dist.cdf(v);
    if (F <= 0.0) throw std::domain_error("foc_residual undefined where F(v) = 0");
    return (capacity / F) * dist.g_function(v) - dist.virtual_value(v) * F;
}

double solve_cutoff(const RegularDistribution& dist, double capacity) {
    require_capacity(capacity);
    dist.require_regular();

    const double hi = dist.v_hi();
    double lo = std::max(dist.standard_monopoly_price(), dist.quantile(capacity));

    auto residual = [&](double v) { return foc_residual(dist, capacity, v); };

    // r > 0 analytically at the left endpoint; nudge right if float round-off
    // lands it at or below zero there.
    const double base_lo = std::max(lo, dist.v_lo() + 1e-13 * dist.range());
    lo = base_lo;
    double r_lo = residual(lo);
    for (double eps = 1e-13; r_lo <= 0.0 && eps <= 1e-6; eps *= 10.0) {
        lo = base_lo + eps * dist.range();
        r_lo = residual(lo);
    }
    if (r_lo <= 0.0)
        throw ConvergenceError("solve_cutoff: residual not positive at the left bracket "
                               "endpoint; distribution functions are inconsistent");
    const double r_hi = residual(hi); // = -phi(v_hi) (1 - k) < 0
    if (!(r_hi < 0.0))
        throw ConvergenceError("solve_cutoff: residual not negative at v_hi");

    // r is strictly decreasing on the bracket, so plain bisection converges.
    double a = lo, b = hi;
    const double width_tol = 1e-12 * dist.range();
    while (b - a > width_tol) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        (residual(mid) > 0.0 ? a : b) = mid;
    }
    return 0.5 * (a + b);
}

MechanismSolution solve_mechanism(const RegularDistribution& dist, double capacity) {
    MechanismSolution sol;
    sol.cutoff = solve_cutoff(dist, capacity);
    sol.induced_demand = dist.cdf(sol.cutoff);
    sol.rationing_prob = capacity / sol.induced_demand;
    sol.price = sol.cutoff * (1.0 - sol.rationing_prob);
    sol.producer_surplus = sol.price * (1.0 - sol.induced_demand);
    sol.foc_residual = foc_residual(dist, capacity, sol.cutoff);
    return sol;
}

double revenue_at_cutoff(const RegularDistribution& dist, double capacity, double v) {
    require_capacity(capacity);
    if (!(v >= dist.v_lo()) || !(v <= dist.v_hi()))
        throw std::domain_error("value outside the distribution support");
    const double F = dist.cdf(v);
    if (F <= capacity)
        throw std::domain_error("revenue_at_cutoff requires F(v) > capacity");
    return (1.0 - capacity / F) * v * (1.0 - F);
}

double effective_cost(const RegularDistribution& dist, double capacity, double v) {
    require_capacity(capacity);
    if (!(v >= dist.v_lo()) || !(v <= dist.v_hi()))
        throw std::domain_error("value outside the distribution support");
    const double F = dist.cdf(v);
    if (F <= capacity)
        throw std::domain_error("effective_cost requires F(v) > capacity");
    return (capacity / F) * v * (1.0 - F);
}

MonopolyOnlyOutcome monopoly_only_outcome(const RegularDistribution& dist) {
    const double price = dist.standard_monopoly_price();
    return {price, price * (1.0 - dist.cdf(price))};
}

double monopoly_only_surplus(const RegularDistribution& dist, double v) {
    if (!(v >= dist.v_lo()) || !(v <= dist.v_hi()))
        throw std::domain_error("value outside the distribution support");
    return std::max(v - dist.standard_monopoly_price(), 0.0);
}

double public_only_surplus(double capacity, double v) {
    if (!(capacity >= 0.0) || !(capacity <= 1.0))
        throw std::invalid_argument("capacity must lie in [0, 1]");
    return capacity * v;
}

} // namespace mixmarket
