// Randomized property suite: seeded generators draw distributions and
// capacities, and every spec invariant that must hold for any regular
// market is asserted on each draw.

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "mixmarket/numeric.hpp"
#include "mixmarket/oracle.hpp"
#include "mixmarket/rng.hpp"
#include "mixmarket/welfare.hpp"
#include "test_helpers.hpp"

using namespace mixmarket;
using mixtest::rel_close;

namespace {

struct Draw {
    std::string label;
    RegularDistribution dist;
    double capacity;
};

// 40 seeded market draws across all five families and a wide capacity range
std::vector<Draw> random_markets() {
    const CounterRng rng{81726354};
    std::vector<Draw> draws;
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto u = [&](std::uint64_t stream) { return rng.uniform(i, stream); };
        const double k = 0.02 + 0.96 * u(0);
        const int family = static_cast<int>(u(1) * 5.0);
        switch (family) {
            case 0: {
                const double lo = 2.0 * u(2);
                draws.push_back({"uniform#" + std::to_string(i),
                                 RegularDistribution::uniform(lo, lo + 0.5 + 2.0 * u(3)), k});
                break;
            }
            case 1: {
                // alpha + beta v on [0, 1]; normalization pins alpha = 1 - beta/2
                const double beta = -0.9 + 2.8 * u(2);
                const double alpha = 1.0 - 0.5 * beta;
                draws.push_back({"linear#" + std::to_string(i),
                                 RegularDistribution::linear_density(0.0, 1.0, alpha, beta), k});
                break;
            }
            case 2: {
                const double c = 1.0 + 9.0 * u(2);
                draws.push_back(
                    {"power#" + std::to_string(i), RegularDistribution::power(c), k});
                break;
            }
            case 3: {
                const double lo = u(2);
                const double hi = lo + 0.5 + 2.0 * u(3);
                const double rate = 0.2 + 5.0 * u(4);
                draws.push_back({"texp#" + std::to_string(i),
                                 RegularDistribution::truncated_exponential(lo, hi, rate), k});
                break;
            }
            default: {
                const double lo = u(2);
                const double hi = lo + 0.5 + 1.5 * u(3);
                const double mean = lo + (hi - lo) * u(4);
                const double sigma = 0.08 * (hi - lo) + 0.5 * (hi - lo) * u(5);
                draws.push_back({"tnorm#" + std::to_string(i),
                                 RegularDistribution::truncated_normal(lo, hi, mean, sigma), k});
                break;
            }
        }
    }
    return draws;
}

} // namespace

TEST_CASE("random markets satisfy the mechanism invariants") {
    for (const auto& [label, dist, k] : random_markets()) {
        INFO(label, " k=", k);
        REQUIRE(dist.is_regular());
        const MechanismSolution mech = solve_mechanism(dist, k);

        // cutoff bounds and feasibility
        CHECK(mech.cutoff > dist.standard_monopoly_price() - 1e-12);
        CHECK(mech.cutoff > dist.quantile(k) - 1e-12);
        CHECK(mech.cutoff < dist.v_hi());
        CHECK(mech.induced_demand > k);
        CHECK(mech.rationing_prob > 0.0);
        CHECK(mech.rationing_prob < 1.0);
        CHECK(mech.price == mech.cutoff * (1.0 - mech.rationing_prob));
        CHECK(std::fabs(mech.foc_residual) <= 1e-9 * dist.v_hi());

        // indifference of the cutoff type
        CHECK(std::fabs(mech.cutoff * (1.0 - mech.rationing_prob) - mech.price) <= 1e-12);

        // the solved point maximizes revenue on a coarse grid
        const double oracle = grid_argmax_revenue(dist, k, 2001);
        CHECK(std::fabs(oracle - mech.cutoff) <= (dist.v_hi() - dist.quantile(k)) / 2001 + 1e-12);

        // incentive constraints hold exactly
        const ICReport ic = verify_ic_ir(dist, k, mech, 101);
        CHECK(ic.max_ic_violation <= 1e-12);
        CHECK(ic.max_ir_violation <= 1e-12);
    }
}

TEST_CASE("random markets satisfy the revenue decomposition and tail identity") {
    const CounterRng rng{5150};
    for (const auto& [label, dist, k] : random_markets()) {
        INFO(label, " k=", k);
        for (std::uint64_t j = 0; j < 5; ++j) {
            const double q = dist.quantile(k);
            const double v = q + (dist.v_hi() - q) * rng.uniform(j);
            if (dist.cdf(v) <= k || v <= dist.v_lo()) continue;
            const double standalone = v * (1.0 - dist.cdf(v));
            CHECK(std::fabs(revenue_at_cutoff(dist, k, v) + effective_cost(dist, k, v) -
                            standalone) <= 1e-12 * std::max(1.0, standalone));

            const double r = foc_residual(dist, k, v);
            const double direct =
                (k / dist.cdf(v)) * dist.g_function(v) - dist.virtual_value(v) * dist.cdf(v);
            CHECK(r == direct);
        }
    }
}

TEST_CASE("random markets: sensitivities match finite differences") {
    int checked = 0;
    for (const auto& [label, dist, k] : random_markets()) {
        if (++checked > 12) break; // derivative checks are the expensive part
        INFO(label, " k=", k);
        const MechanismSolution mech = solve_mechanism(dist, k);
        const double h = 1e-5;
        const double theta_fd =
            num::central_difference([&](double kk) { return solve_cutoff(dist, kk); }, k, h);
        CHECK(rel_close(cutoff_sensitivity(dist, k, mech), theta_fd, 1e-4));
        const double p_fd = num::central_difference(
            [&](double kk) { return solve_mechanism(dist, kk).price; }, k, h);
        CHECK(rel_close(price_sensitivity(dist, k, mech), p_fd, 1e-4));
    }
}

TEST_CASE("extreme capacities stay solvable") {
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        for (double k : {1e-7, 1e-4, 1.0 - 1e-4, 1.0 - 1e-7}) {
            const MechanismSolution mech = solve_mechanism(dist, k);
            CHECK(mech.induced_demand > k);
            CHECK(mech.price >= 0.0);
            CHECK(mech.producer_surplus >= 0.0);
            CHECK(std::isfinite(aggregate_consumer_surplus(dist, mech)));
        }
    }
}

TEST_CASE("sharply shaped families stay regular and solvable") {
    const auto spiky = RegularDistribution::power(20.0);
    CHECK(spiky.is_regular());
    const MechanismSolution m1 = solve_mechanism(spiky, 0.5);
    CHECK(m1.cutoff > spiky.standard_monopoly_price());

    const auto steep = RegularDistribution::truncated_exponential(0.0, 1.0, 20.0);
    CHECK(steep.is_regular());
    const MechanismSolution m2 = solve_mechanism(steep, 0.3);
    CHECK(m2.induced_demand > 0.3);

    const auto narrow = RegularDistribution::truncated_normal(0.0, 1.0, 0.5, 0.08);
    CHECK(narrow.is_regular());
    const MechanismSolution m3 = solve_mechanism(narrow, 0.7);
    const ICReport ic = verify_ic_ir(narrow, 0.7, m3, 101);
    CHECK(ic.max_ic_violation <= 1e-12);
}
