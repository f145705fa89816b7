#include <doctest.h>

#include <cmath>

#include "mixmarket/numeric.hpp"
#include "mixmarket/welfare.hpp"
#include "test_helpers.hpp"

using namespace mixmarket;
using mixtest::close;
using mixtest::rel_close;

namespace {
const RegularDistribution& u01() {
    static const auto d = RegularDistribution::uniform(0.0, 1.0);
    return d;
}
const RegularDistribution& u12() {
    static const auto d = RegularDistribution::uniform(1.0, 2.0);
    return d;
}
} // namespace

TEST_CASE("consumer surplus branches") {
    CHECK(close(consumer_surplus(u01(), 0.5, 0.5), 1.0 / 3.0, 1e-10)); // pi * v
    CHECK(close(consumer_surplus(u01(), 0.5, 1.0), 0.75, 1e-10));     // v - p

    // continuity at the cutoff: both branches agree there
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        const MechanismSolution mech = solve_mechanism(dist, 0.4);
        CHECK(std::fabs(mech.cutoff * (1.0 - mech.rationing_prob) - mech.price) <= 1e-12);
        const double below = mech.rationing_prob * mech.cutoff;
        const double above = mech.cutoff - mech.price;
        CHECK(close(below, above, 1e-12));
    }
    CHECK_THROWS_AS((void)consumer_surplus(u01(), 0.5, 1.5), std::domain_error);
}

TEST_CASE("aggregate consumer surplus closed forms") {
    CHECK(close(aggregate_consumer_surplus(u01(), 0.5), 0.34375, 1e-9));
    CHECK(close(aggregate_consumer_surplus(u01(), 1e-6), 0.125, 1e-3));
    const double c12 = aggregate_consumer_surplus(u12(), 0.01);
    CHECK(close(c12, 0.40927566330947222, 1e-6));
    CHECK(c12 < 0.5);
}

TEST_CASE("aggregate consumer surplus equals unsplit quadrature of U dF") {
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        const double k = 0.35;
        const MechanismSolution mech = solve_mechanism(dist, k);
        const double split = aggregate_consumer_surplus(dist, mech);
        const double direct = num::adaptive_simpson(
            [&](double v) { return consumer_surplus(mech, v) * dist.pdf(v); }, dist.v_lo(),
            dist.v_hi(), 1e-10);
        CHECK(close(split, direct, 1e-8));
    }
}

TEST_CASE("cutoff sensitivity") {
    for (double k : {0.2, 0.5, 0.8})
        CHECK(close(cutoff_sensitivity(u01(), k), 0.5, 1e-10)); // theta = (1+k)/2
    CHECK(close(cutoff_sensitivity(u12(), 0.5), 0.62777596050999693, 1e-9));

    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        const double h = 1e-5;
        for (double k : {0.3, 0.5}) {
            const double analytic = cutoff_sensitivity(dist, k);
            CHECK(analytic > 0.0);
            const double fd = num::central_difference(
                [&](double kk) { return solve_cutoff(dist, kk); }, k, h);
            CHECK(rel_close(analytic, fd, 1e-4));
        }
    }
}

TEST_CASE("rationing sensitivity") {
    CHECK(close(rationing_sensitivity(u01(), 0.5), 8.0 / 9.0, 1e-10)); // 2/(1+k)^2
    CHECK(close(rationing_sensitivity(u01(), 0.2), 2.0 / 1.44, 1e-10));

    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        const double k = 0.7;
        const double analytic = rationing_sensitivity(dist, k);
        CHECK(analytic > 0.0);
        const double fd = num::central_difference(
            [&](double kk) { return kk / dist.cdf(solve_cutoff(dist, kk)); }, k, 1e-5);
        CHECK(rel_close(analytic, fd, 1e-4));
    }
}

TEST_CASE("price sensitivity and its sign") {
    CHECK(close(price_sensitivity(u01(), 0.5), -0.5, 1e-10)); // p = (1-k)/2
    CHECK(price_sensitivity(u12(), 0.001) > 0.0);             // condition fails near v^M
    CHECK(price_sensitivity(u12(), 0.9) < 0.0);               // cutoff beyond the boundary

    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        const double k = 0.45;
        const double fd = num::central_difference(
            [&](double kk) {
                const MechanismSolution m = solve_mechanism(dist, kk);
                return m.price;
            },
            k, 1e-5);
        CHECK(rel_close(price_sensitivity(dist, k), fd, 1e-4));
    }
}

TEST_CASE("producer surplus sensitivity") {
    CHECK(close(producer_surplus_sensitivity(u01(), 0.5), -0.25, 1e-10)); // -(1-k)/2
    CHECK(close(producer_surplus_sensitivity(u01(), 0.2), -0.4, 1e-10));

    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        const double k = 0.6;
        const double analytic = producer_surplus_sensitivity(dist, k);
        CHECK(analytic < 0.0);
        const double fd = num::central_difference(
            [&](double kk) { return solve_mechanism(dist, kk).producer_surplus; }, k, 1e-5);
        CHECK(rel_close(analytic, fd, 1e-4));
    }
}

TEST_CASE("condition LHS closed forms") {
    CHECK(close(condition_lhs(u01(), 0.75), 5.0, 1e-12)); // v/(1-v) + 2
    // v/(2-v) + 2v(v-1)/(v^2-2v+2)
    CHECK(close(condition_lhs(u12(), 1.5), 4.2, 1e-12));
    CHECK(close(condition_lhs(u12(), 1.2067834945278156), 2.0, 1e-9));

    CHECK_THROWS_AS((void)condition_lhs(u01(), 0.5), std::domain_error);
    CHECK_THROWS_AS((void)condition_lhs(u01(), 1.0), std::domain_error);
}

TEST_CASE("condition report") {
    const ConditionReport ok = check_condition(u01(), 1001);
    CHECK(ok.holds_everywhere);
    CHECK(ok.failing_intervals.empty());
    CHECK_FALSE(ok.threshold_root.has_value());

    const ConditionReport fail = check_condition(u12(), 2001);
    CHECK_FALSE(fail.holds_everywhere);
    REQUIRE(fail.failing_intervals.size() == 1);
    CHECK(fail.failing_intervals[0].first == 1.0);
    CHECK(close(fail.failing_intervals[0].second, 1.2067834945278156, 1e-7));
    REQUIRE(fail.threshold_root.has_value());
    CHECK(close(*fail.threshold_root, 1.2067834945278156, 1e-7));

    const ConditionReport u23 = check_condition(RegularDistribution::uniform(2.0, 3.0), 1001);
    CHECK(u23.holds_everywhere);

    CHECK_THROWS_AS((void)check_condition(u01(), 1000), std::invalid_argument);
}

TEST_CASE("hazard-rate criterion for monotone prices") {
    const auto r12 = hazard_rate_criterion(u12());
    CHECK(r12.applicable);
    CHECK_FALSE(r12.price_decreasing); // f(v_lo) v_lo = 1 < 2

    const auto r23 = hazard_rate_criterion(RegularDistribution::uniform(2.0, 3.0));
    CHECK(r23.applicable);
    CHECK(r23.price_decreasing); // f(v_lo) v_lo = 2

    const auto r01 = hazard_rate_criterion(u01());
    CHECK_FALSE(r01.applicable); // v^M = 0.5 > v_lo
}

TEST_CASE("entry gain") {
    CHECK(close(entry_gain(u01(), 0.5, 0.5), 1.0 / 12.0, 1e-10));
    CHECK(close(entry_gain(u01(), 0.5, 1.0), 0.25, 1e-10));
    CHECK(close(entry_gain(u01(), 0.5, 0.0), 0.0, 1e-15));

    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        for (double k : {0.15, 0.55, 0.9}) {
            const MechanismSolution mech = solve_mechanism(dist, k);
            for (int i = 0; i <= 20; ++i) {
                const double v = dist.v_lo() + dist.range() * i / 20.0;
                const double gain = consumer_surplus(mech, v) - public_only_surplus(k, v);
                CHECK(gain >= -1e-12);
                if (v > 0.0) CHECK(gain > 0.0);
            }
        }
    }
}

TEST_CASE("welfare report") {
    const WelfareReport report = make_welfare_report(u01(), 0.5, 101);
    CHECK(close(report.cutoff, 0.75, 1e-10));
    CHECK(close(report.aggregate_consumer_surplus, 0.34375, 1e-9));
    CHECK(close(report.producer_surplus, 0.0625, 1e-10));
    CHECK(close(report.total_surplus, 0.40625, 1e-9));
    REQUIRE(report.type_grid.size() == 101);
    CHECK(close(report.surplus[50], 1.0 / 3.0, 1e-10)); // v = 0.5
}

TEST_CASE("sweep columns and monotonicity") {
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
    const SweepResult s = sweep(u01(), grid);
    REQUIRE(s.size() == 9);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(close(s.cutoff[i], 0.5 * (1.0 + grid[i]), 1e-10));
        CHECK(close(s.price[i], 0.5 * (1.0 - grid[i]), 1e-10));
    }
    for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s.consumer_surplus[i] > s.consumer_surplus[i - 1]);
        CHECK(s.cutoff[i] > s.cutoff[i - 1] - 1e-10);
        CHECK(s.rationing_prob[i] > s.rationing_prob[i - 1] - 1e-10);
        CHECK(s.producer_surplus[i] < s.producer_surplus[i - 1] + 1e-10);
    }

    CHECK_THROWS_AS((void)sweep(u01(), std::vector<double>{0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS((void)sweep(u01(), std::vector<double>{0.5, 1.2}), std::invalid_argument);
}

TEST_CASE("uniform[1,2] aggregate surplus dips then recovers") {
    std::vector<double> grid{0.005, 0.01, 0.05, 0.2, 0.5, 0.8, 0.9999};
    const SweepResult s = sweep(u12(), grid);
    double min_cs = 1e9;
    for (double c : s.consumer_surplus) min_cs = std::min(min_cs, c);
    CHECK(min_cs < 0.5);                            // dips below the monopoly-only level
    CHECK(s.consumer_surplus.back() > 1.49);        // recovers toward full-coverage surplus
    CHECK(close(s.consumer_surplus.back(), 1.5, 1e-2));
}

TEST_CASE("cutoff limits in k") {
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        CHECK(close(solve_cutoff(dist, 1e-6), dist.standard_monopoly_price(), 1e-2));
        CHECK(close(solve_cutoff(dist, 1.0 - 1e-6), dist.v_hi(), 1e-2));
    }
}

TEST_CASE("price sign agrees with the condition test at the cutoff") {
    for (const auto& [name, dist] : mixtest::family_suite()) {
        INFO(name);
        for (double k = 0.05; k < 0.96; k += 0.05) {
            const MechanismSolution mech = solve_mechanism(dist, k);
            const double p_prime = price_sensitivity(dist, k, mech);
            const double lhs = condition_lhs(dist, mech.cutoff);
            if (p_prime > 1e-10) CHECK(lhs < 2.0 + 1e-8);
            if (p_prime < -1e-10) CHECK(lhs > 2.0 - 1e-8);
        }
    }
}
