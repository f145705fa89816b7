#include "mixmarket/general_model.hpp"

#include <algorithm>
#include <cmath>

#include "mixmarket/numeric.hpp"

namespace mixmarket {

namespace {

double rationing_share(const RegularDistribution& dist, double capacity, double v) {
    const double F = dist.cdf(v);
    if (F <= 0.0) return 1.0; // continuous extension at the bottom of the support
    return std::min(capacity / F, 1.0);
}

double general_price(const RegularDistribution& dist, const MarketParams& params, double v) {
    const double s = rationing_share(dist, params.capacity, v);
    return v * (1.0 - params.quality_ratio * s) + params.public_price * s;
}

} // namespace

double op_objective(const RegularDistribution& dist, const MarketParams& params, double v) {
    validate_params(dist, params);
    if (!(v >= dist.v_lo()) || !(v <= dist.v_hi()))
        throw std::domain_error("value outside the distribution support");
    return (1.0 - dist.cdf(v)) * general_price(dist, params, v);
}

GeneralSolution solve_general(const RegularDistribution& dist, const MarketParams& params) {
    validate_params(dist, params);
    dist.require_regular();

    constexpr int kGridSize = 10001;
    const double lo = dist.v_lo();
    const double hi = dist.v_hi();
    auto objective = [&](double v) {
        return (1.0 - dist.cdf(v)) * general_price(dist, params, v);
    };

    std::vector<double> grid = num::linspace(lo, hi, kGridSize);
    std::vector<double> value(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) value[i] = objective(grid[i]);

    // cells worth refining: strict local maxima, the best grid point, and the
    // far edge of a flat best-value plateau (degenerate parameter sets)
    std::vector<std::size_t> candidates;
    std::size_t best_idx = 0;
    std::size_t best_last = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (value[i] > value[best_idx]) {
            best_idx = i;
            best_last = i;
        } else if (value[i] == value[best_idx]) {
            best_last = i;
        }
        const bool left_ok = i == 0 || value[i] > value[i - 1];
        const bool right_ok = i + 1 == grid.size() || value[i] > value[i + 1];
        if (left_ok && right_ok) candidates.push_back(i);
    }
    for (std::size_t extra : {best_idx, best_last})
        if (std::find(candidates.begin(), candidates.end(), extra) == candidates.end())
            candidates.push_back(extra);

    struct Optimum {
        double x;
        double f;
    };
    std::vector<Optimum> refined;
    refined.reserve(candidates.size());
    const double x_tol = 1e-12 * dist.range();
    for (std::size_t i : candidates) {
        const double a = grid[i == 0 ? 0 : i - 1];
        const double b = grid[std::min(i + 1, grid.size() - 1)];
        const auto [x, f] = num::golden_section_max(objective, a, b, x_tol);
        refined.push_back({x, f});
    }

    double best_f = refined.front().f;
    for (const auto& opt : refined) best_f = std::max(best_f, opt.f);

    // keep every optimum within the tie window, resolve toward the smaller cutoff
    GeneralSolution sol;
    sol.cutoff = hi;
    int tied = 0;
    for (const auto& opt : refined) {
        if (opt.f >= best_f - 1e-9) {
            ++tied;
            if (opt.x < sol.cutoff) {
                sol.cutoff = opt.x;
                sol.objective_value = opt.f;
            }
        }
    }
    sol.near_tie = tied > 1;
    sol.regime = dist.cdf(sol.cutoff) > params.capacity ? Regime::rationed : Regime::slack;
    sol.price = general_price(dist, params, sol.cutoff);
    return sol;
}

double bertrand_limit_cutoff(const RegularDistribution& dist, double quality_ratio,
                             double public_price) {
    if (quality_ratio == 1.0 && public_price == 0.0)
        throw std::invalid_argument(
            "bertrand_limit_cutoff is degenerate at quality_ratio = 1, public_price = 0");
    if (!(quality_ratio > 0.0) || !(quality_ratio < 1.0))
        throw std::invalid_argument("bertrand_limit_cutoff requires quality_ratio in (0, 1)");
    if (!(public_price > 0.0))
        throw std::invalid_argument("bertrand_limit_cutoff requires public_price > 0");
    dist.require_regular();

    auto expression = [&](double v) {
        return (1.0 - quality_ratio) * dist.virtual_value(v) + public_price;
    };
    if (expression(dist.v_lo()) >= 0.0) return dist.v_lo();
    // strictly increasing by regularity, positive at v_hi
    return num::bisect_root(expression, dist.v_lo(), dist.v_hi(), 1e-12 * dist.range());
}

double complement_surplus(const RegularDistribution& dist, double capacity, double v) {
    require_capacity(capacity);
    if (!(v >= dist.v_lo()) || !(v <= dist.v_hi()))
        throw std::domain_error("value outside the distribution support");
    const double vm = dist.standard_monopoly_price();
    return v < vm ? capacity * v : v - (1.0 - capacity) * vm;
}

ComplementOutcome complement_outcome(const RegularDistribution& dist, double capacity,
                                     int type_grid_size) {
    require_capacity(capacity);
    const double vm = dist.standard_monopoly_price();

    ComplementOutcome out;
    out.price = vm;
    out.producer_surplus = (1.0 - capacity) * vm * (1.0 - dist.cdf(vm));

    const double low = num::adaptive_simpson([&](double v) { return v * dist.pdf(v); },
                                             dist.v_lo(), vm, 0.5e-9);
    const double high = num::adaptive_simpson(
        [&](double v) { return (v - (1.0 - capacity) * vm) * dist.pdf(v); }, vm, dist.v_hi(),
        0.5e-9);
    out.aggregate_consumer_surplus = capacity * low + high;

    if (type_grid_size > 0) {
        out.type_grid = num::linspace(dist.v_lo(), dist.v_hi(), type_grid_size);
        out.surplus.reserve(out.type_grid.size());
        for (double v : out.type_grid)
            out.surplus.push_back(complement_surplus(dist, capacity, v));
    }
    return out;
}

} // namespace mixmarket
