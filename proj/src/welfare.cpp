#include "mixmarket/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mixmarket/numeric.hpp"
#include "mixmarket/threads.hpp"

namespace mixmarket {

namespace {
constexpr double kQuadTol = 0.5e-9; // per quadrature piece
}

double consumer_surplus(const MechanismSolution& mech, double v) {
    return v < mech.cutoff ? mech.rationing_prob * v : v - mech.price;
}

double consumer_surplus(const RegularDistribution& dist, double capacity, double v) {
    if (!(v >= dist.v_lo()) || !(v <= dist.v_hi()))
        throw std::domain_error("value outside the distribution support");
    return consumer_surplus(solve_mechanism(dist, capacity), v);
}

double aggregate_consumer_surplus(const RegularDistribution& dist,
                                  const MechanismSolution& mech) {
    const double low = num::adaptive_simpson(
        [&](double v) { return v * dist.pdf(v); }, dist.v_lo(), mech.cutoff, kQuadTol);
    const double high = num::adaptive_simpson(
        [&](double v) { return (v - mech.price) * dist.pdf(v); }, mech.cutoff, dist.v_hi(),
        kQuadTol);
    return mech.rationing_prob * low + high;
}

double aggregate_consumer_surplus(const RegularDistribution& dist, double capacity) {
    return aggregate_consumer_surplus(dist, solve_mechanism(dist, capacity));
}

double cutoff_sensitivity(const RegularDistribution& dist, double capacity,
                          const MechanismSolution& mech) {
    const double v = mech.cutoff;
    const double F = dist.cdf(v);
    const double f = dist.pdf(v);
    const double G = dist.g_function(v);
    const double Gp = dist.g_slope(v);
    const double phi = dist.virtual_value(v);
    const double phip = dist.virtual_value_slope(v);
    // d r / d v at the solution; strictly negative on the bracket
    const double drdv = capacity * (Gp * F - G * f) / (F * F) - phip * F - phi * f;
    if (std::fabs(drdv) < 1e-14)
        throw ConvergenceError("cutoff_sensitivity: degenerate first-order-condition slope");
    return -(G / F) / drdv;
}

double cutoff_sensitivity(const RegularDistribution& dist, double capacity) {
    return cutoff_sensitivity(dist, capacity, solve_mechanism(dist, capacity));
}

double rationing_sensitivity(const RegularDistribution& dist, double capacity,
                             const MechanismSolution& mech) {
    const double v = mech.cutoff;
    const double theta_prime = cutoff_sensitivity(dist, capacity, mech);
    const double G = dist.g_function(v);
    return theta_prime / G *
           (dist.virtual_value(v) * dist.pdf(v) + dist.g_slope(v) * (1.0 - mech.rationing_prob));
}

double rationing_sensitivity(const RegularDistribution& dist, double capacity) {
    return rationing_sensitivity(dist, capacity, solve_mechanism(dist, capacity));
}

double price_sensitivity(const RegularDistribution& dist, double capacity,
                         const MechanismSolution& mech) {
    const double theta_prime = cutoff_sensitivity(dist, capacity, mech);
    const double pi_prime = rationing_sensitivity(dist, capacity, mech);
    return theta_prime * (1.0 - mech.rationing_prob) - mech.cutoff * pi_prime;
}

double price_sensitivity(const RegularDistribution& dist, double capacity) {
    return price_sensitivity(dist, capacity, solve_mechanism(dist, capacity));
}

double producer_surplus_sensitivity(const RegularDistribution&, double capacity,
                                    const MechanismSolution& mech) {
    require_capacity(capacity);
    const double F = mech.induced_demand;
    return -mech.cutoff * (1.0 - F) / F;
}

double producer_surplus_sensitivity(const RegularDistribution& dist, double capacity) {
    return producer_surplus_sensitivity(dist, capacity, solve_mechanism(dist, capacity));
}

double condition_lhs(const RegularDistribution& dist, double v) {
    const double vm = dist.standard_monopoly_price();
    if (!(v > vm) || !(v < dist.v_hi()))
        throw std::domain_error("condition_lhs requires v in (v^M, v_hi)");
    const double F = dist.cdf(v);
    return v * dist.pdf(v) / (1.0 - F) + v * dist.g_slope(v) / dist.g_function(v);
}

ConditionReport check_condition(const RegularDistribution& dist, int grid_size) {
    if (grid_size < 1001) throw std::invalid_argument("condition grid must have >= 1001 points");
    const double vm = dist.standard_monopoly_price();
    const double hi = dist.v_hi();
    const double step = (hi - vm) / (grid_size + 1);

    ConditionReport report;
    report.sample_points.reserve(static_cast<std::size_t>(grid_size));
    report.lhs_values.reserve(static_cast<std::size_t>(grid_size));

    auto excess = [&](double v) { return condition_lhs(dist, v) - 2.0; };

    int sign_changes = 0;
    bool open_interval = false;
    double interval_start = vm;
    double prev_v = 0.0;
    double prev_excess = 0.0;

    for (int i = 1; i <= grid_size; ++i) {
        const double v = vm + i * step;
        const double e = excess(v);
        report.sample_points.push_back(v);
        report.lhs_values.push_back(e + 2.0);

        if (i == 1) {
            if (e < 0.0) {
                open_interval = true;
                interval_start = vm; // condition already failing at the open left edge
            }
        } else if ((e < 0.0) != (prev_excess < 0.0)) {
            ++sign_changes;
            const double boundary = num::bisect_root(excess, prev_v, v, 1e-9);
            if (open_interval) {
                report.failing_intervals.emplace_back(interval_start, boundary);
                open_interval = false;
            } else {
                open_interval = true;
                interval_start = boundary;
            }
        }
        prev_v = v;
        prev_excess = e;
    }
    if (open_interval) report.failing_intervals.emplace_back(interval_start, hi);

    report.holds_everywhere = report.failing_intervals.empty();
    if (std::fabs(vm - dist.v_lo()) <= 1e-10 && sign_changes == 1 &&
        report.failing_intervals.size() == 1)
        report.threshold_root = report.failing_intervals.front().second;
    return report;
}

HazardRateCriterion hazard_rate_criterion(const RegularDistribution& dist, int grid_size) {
    HazardRateCriterion result;
    const double vm = dist.standard_monopoly_price();
    if (std::fabs(vm - dist.v_lo()) > 1e-10) return result;

    // increasing hazard rate f/(1-F) on the grid (v_hi excluded: hazard -> inf)
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i) {
        const double v = dist.v_lo() + dist.range() * i / grid_size;
        const double hazard = dist.pdf(v) / (1.0 - dist.cdf(v));
        if (hazard < prev - 1e-10 * std::max(1.0, std::fabs(prev))) return result;
        prev = hazard;
    }
    result.applicable = true;
    result.price_decreasing = dist.pdf(dist.v_lo()) * dist.v_lo() >= 2.0;
    return result;
}

double entry_gain(const RegularDistribution& dist, double capacity, double v) {
    return consumer_surplus(dist, capacity, v) - public_only_surplus(capacity, v);
}

WelfareReport make_welfare_report(const RegularDistribution& dist, double capacity,
                                  int type_grid_size) {
    if (type_grid_size < 2) throw std::invalid_argument("type grid must have >= 2 points");
    const MechanismSolution mech = solve_mechanism(dist, capacity);
    WelfareReport report;
    report.capacity = capacity;
    report.cutoff = mech.cutoff;
    report.price = mech.price;
    report.rationing_prob = mech.rationing_prob;
    report.type_grid = num::linspace(dist.v_lo(), dist.v_hi(), type_grid_size);
    report.surplus.reserve(report.type_grid.size());
    for (double v : report.type_grid) report.surplus.push_back(consumer_surplus(mech, v));
    report.aggregate_consumer_surplus = aggregate_consumer_surplus(dist, mech);
    report.producer_surplus = mech.producer_surplus;
    report.total_surplus = report.aggregate_consumer_surplus + report.producer_surplus;
    return report;
}

SweepResult sweep(const RegularDistribution& dist, const std::vector<double>& k_grid,
                  int n_threads) {
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        require_capacity(k_grid[i]);
        if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
            throw std::invalid_argument("capacity grid must be strictly increasing");
    }
    dist.require_regular();

    const std::size_t n = k_grid.size();
    SweepResult out;
    out.capacity = k_grid;
    out.cutoff.resize(n);
    out.rationing_prob.resize(n);
    out.price.resize(n);
    out.producer_surplus.resize(n);
    out.consumer_surplus.resize(n);
    out.total_surplus.resize(n);
    out.cutoff_sensitivity.resize(n);
    out.rationing_sensitivity.resize(n);
    out.price_sensitivity.resize(n);
    out.producer_surplus_sensitivity.resize(n);
    out.foc_residual.resize(n);

    std::vector<std::string> failures(n);
    parallel_chunks(n, std::min<std::size_t>(n, 64), [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                const double k = k_grid[i];
                const MechanismSolution mech = solve_mechanism(dist, k);
                out.cutoff[i] = mech.cutoff;
                out.rationing_prob[i] = mech.rationing_prob;
                out.price[i] = mech.price;
                out.producer_surplus[i] = mech.producer_surplus;
                out.consumer_surplus[i] = aggregate_consumer_surplus(dist, mech);
                out.total_surplus[i] = out.consumer_surplus[i] + mech.producer_surplus;
                out.cutoff_sensitivity[i] = cutoff_sensitivity(dist, k, mech);
                out.rationing_sensitivity[i] = rationing_sensitivity(dist, k, mech);
                out.price_sensitivity[i] = price_sensitivity(dist, k, mech);
                out.producer_surplus_sensitivity[i] = producer_surplus_sensitivity(dist, k, mech);
                out.foc_residual[i] = mech.foc_residual;
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    }, n_threads);
    for (std::size_t i = 0; i < n; ++i)
        if (!failures[i].empty())
            throw ConvergenceError("sweep failed at k = " + std::to_string(k_grid[i]) + ": " +
                                   failures[i]);
    return out;
}

} // namespace mixmarket
