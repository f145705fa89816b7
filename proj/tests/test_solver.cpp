#include <doctest.h>

#include <cmath>

#include "mixmarket/numeric.hpp"
#include "mixmarket/oracle.hpp"
#include "mixmarket/solver.hpp"
#include "test_helpers.hpp"

using namespace mixmarket;
using mixtest::close;
using mixtest::rel_close;

TEST_CASE("foc residual closed forms on uniform[0,1]") {
    const auto u01 = RegularDistribution::uniform(0.0, 1.0);
    CHECK(close(foc_residual(u01, 0.5, 0.75), 0.0, 1e-15));
    CHECK(close(foc_residual(u01, 0.5, 1.0), -0.5, 1e-15)); // -phi(v_hi)(1-k)

    // at v = F^{-1}(k) the residual equals the tail integral v (1 - F(v))
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        for (double k : {0.2, 0.5, 0.8}) {
            const double q = dist.quantile(k);
            if (q <= dist.v_lo()) continue;
            CHECK(close(foc_residual(dist, k, q), q * (1.0 - dist.cdf(q)), 1e-9));
        }
    }

    CHECK_THROWS_AS((void)foc_residual(u01, 0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)foc_residual(u01, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("solve_cutoff closed forms") {
    const auto u01 = RegularDistribution::uniform(0.0, 1.0);
    for (double k = 0.1; k < 0.95; k += 0.1)
        CHECK(close(solve_cutoff(u01, k), 0.5 * (1.0 + k), 1e-10));

    const auto u12 = RegularDistribution::uniform(1.0, 2.0);
    // root of k (v^2 - 2v + 2) = 2 (v - 1)^3 at k = 1/2
    CHECK(close(solve_cutoff(u12, 0.5), 1.7252700850720346, 1e-9));

    // power c=2: theta^2 = ((1+k) + sqrt((1+k)^2 + 12k)) / 6
    const auto pow2 = RegularDistribution::power(2.0);
    CHECK(close(solve_cutoff(pow2, 0.5), 0.85364720691757028, 1e-9));
}

TEST_CASE("solve_cutoff agrees with the grid argmax oracle") {
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        for (double k : {0.1, 0.5, 0.9}) {
            const double cutoff = solve_cutoff(dist, k);
            const double oracle = grid_argmax_revenue(dist, k, 10001);
            const double step = (dist.v_hi() - dist.quantile(k)) / 10001;
            CHECK(std::fabs(cutoff - oracle) <= step);
        }
    }
}

TEST_CASE("residual is strictly decreasing on the bracket") {
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        for (double k : {0.25, 0.6}) {
            const double lo = std::max(dist.standard_monopoly_price(), dist.quantile(k)) +
                              1e-9 * dist.range();
            double prev = foc_residual(dist, k, lo);
            int sign_changes = 0;
            bool was_positive = prev > 0.0;
            for (int i = 1; i <= 500; ++i) {
                const double v = lo + (dist.v_hi() - lo) * i / 500.0;
                const double r = foc_residual(dist, k, v);
                CHECK(r < prev);
                if ((r > 0.0) != was_positive) {
                    ++sign_changes;
                    was_positive = r > 0.0;
                }
                prev = r;
            }
            CHECK(sign_changes == 1);
        }
    }
}

TEST_CASE("mechanism solution invariants") {
    const auto u01 = RegularDistribution::uniform(0.0, 1.0);
    const MechanismSolution mech = solve_mechanism(u01, 0.5);
    CHECK(close(mech.cutoff, 0.75, 1e-10));
    CHECK(close(mech.rationing_prob, 2.0 / 3.0, 1e-10));
    CHECK(close(mech.price, 0.25, 1e-10));
    CHECK(close(mech.producer_surplus, 0.0625, 1e-10));
    CHECK(mech.price == mech.cutoff * (1.0 - mech.rationing_prob));
    CHECK(std::fabs(mech.foc_residual) < 1e-11);

    // cutoff bounds from the optimal-mechanism characterization
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        for (double k : {0.05, 0.3, 0.7, 0.95}) {
            const MechanismSolution m = solve_mechanism(dist, k);
            CHECK(m.cutoff > dist.standard_monopoly_price() - 1e-12);
            CHECK(m.induced_demand > k + 1e-12);
            CHECK(m.rationing_prob > 0.0);
            CHECK(m.rationing_prob < 1.0);
            CHECK(m.cutoff < dist.v_hi());
        }
    }
}

TEST_CASE("k -> 0 limit recovers the standard monopoly price") {
    const auto u01 = RegularDistribution::uniform(0.0, 1.0);
    const MechanismSolution mech = solve_mechanism(u01, 1e-6);
    CHECK(close(mech.price, 0.5, 1e-2));
}

TEST_CASE("small public option raises the price on uniform[1,2]") {
    const auto u12 = RegularDistribution::uniform(1.0, 2.0);
    const MechanismSolution mech = solve_mechanism(u12, 0.01);
    CHECK(mech.price > 1.0);
    CHECK(close(mech.cutoff, 1.1726806114212557, 1e-8));
    CHECK(close(mech.price, 1.1047702304138309, 1e-8));
}

TEST_CASE("revenue and effective cost decomposition") {
    const auto u01 = RegularDistribution::uniform(0.0, 1.0);
    CHECK(close(revenue_at_cutoff(u01, 0.5, 0.75), 0.0625, 1e-15));
    CHECK(close(revenue_at_cutoff(u01, 0.5, 0.9), 0.04, 1e-15));
    CHECK(revenue_at_cutoff(u01, 0.5, 1.0) == 0.0);
    CHECK(close(effective_cost(u01, 0.5, 0.75), 0.125, 1e-15));
    CHECK(effective_cost(u01, 0.5, 1.0) == 0.0);

    CHECK_THROWS_AS((void)revenue_at_cutoff(u01, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)effective_cost(u01, 0.5, 0.3), std::domain_error);

    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        for (double k : {0.2, 0.6}) {
            const double q = dist.quantile(k);
            for (double t : {0.15, 0.5, 0.85}) {
                const double v = q + t * (dist.v_hi() - q);
                if (dist.cdf(v) <= k) continue;
                const double standalone = v * (1.0 - dist.cdf(v));
                CHECK(close(revenue_at_cutoff(dist, k, v),
                            standalone - effective_cost(dist, k, v), 1e-12));
            }
        }
    }
}

TEST_CASE("effective cost derivative is proportional to -G") {
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        const double k = 0.4;
        const double q = dist.quantile(k);
        const double h = 1e-6 * dist.range();
        for (double t : {0.3, 0.6, 0.9}) {
            const double v = q + t * (dist.v_hi() - q) - h;
            const double F = dist.cdf(v);
            if (F <= k) continue;
            const double analytic = -(k / (F * F)) * dist.g_function(v) * dist.pdf(v);
            const double fd = mixmarket::num::central_difference(
                [&](double x) { return effective_cost(dist, k, x); }, v, h);
            CHECK(rel_close(analytic, fd, 1e-4));
        }
    }
}

TEST_CASE("solver rejects bad inputs") {
    const auto u01 = RegularDistribution::uniform(0.0, 1.0);
    for (double k : {0.0, 1.0, -0.2, 1.3})
        CHECK_THROWS_AS((void)solve_cutoff(u01, k), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_cutoff(mixtest::bimodal_spline(), 0.5),
                    mixmarket::RegularityError);
}

TEST_CASE("limit helpers") {
    const auto u01 = RegularDistribution::uniform(0.0, 1.0);
    const auto mono = monopoly_only_outcome(u01);
    CHECK(close(mono.price, 0.5, 1e-12));
    CHECK(close(mono.producer_surplus, 0.25, 1e-12));
    CHECK(monopoly_only_surplus(u01, 0.3) == 0.0);
    CHECK(close(monopoly_only_surplus(u01, 0.8), 0.3, 1e-12));
    CHECK(public_only_surplus(0.5, 0.6) == 0.3);
}
