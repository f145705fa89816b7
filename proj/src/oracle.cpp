#include "mixmarket/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixmarket/numeric.hpp"
#include "mixmarket/rng.hpp"
#include "mixmarket/threads.hpp"

namespace mixmarket {

double grid_argmax_revenue(const RegularDistribution& dist, double capacity, int n_points) {
    require_capacity(capacity);
    if (n_points < 1001) throw std::invalid_argument("grid_argmax_revenue needs >= 1001 points");
    const double lo = dist.quantile(capacity);
    const double hi = dist.v_hi();
    double best_v = hi;
    double best_r = 0.0; // revenue vanishes at both ends of the bracket
    for (int i = 1; i <= n_points; ++i) {
        const double v = lo + (hi - lo) * i / n_points;
        const double F = dist.cdf(v);
        if (F <= capacity) continue; // float round-off at the left edge
        const double r = (1.0 - capacity / F) * v * (1.0 - F);
        if (r > best_r) {
            best_r = r;
            best_v = v;
        }
    }
    return best_v;
}

ICReport verify_ic_ir(const RegularDistribution& dist, double capacity,
                      const MechanismSolution& mech, int n_types) {
    require_capacity(capacity);
    if (n_types < 101) throw std::invalid_argument("verify_ic_ir needs >= 101 types");

    const double outside_prob = std::min(1.0, capacity / mech.induced_demand);
    const std::vector<double> grid = num::linspace(dist.v_lo(), dist.v_hi(), n_types);

    // the mechanism offers two menu items: buy (x=1, pay price) or rely on
    // the public option (x=0, pay 0)
    auto payoff = [&](double report, double type) {
        const bool buys = report >= mech.cutoff;
        const double alloc = buys ? 1.0 : outside_prob;
        const double transfer = buys ? mech.price : 0.0;
        return alloc * type - transfer;
    };

    ICReport report;
    for (double type : grid) {
        const double truthful = payoff(type, type);
        for (double deviation : grid) {
            const double gap = payoff(deviation, type) - truthful;
            if (gap > report.max_ic_violation) {
                report.max_ic_violation = gap;
                report.worst_pair = {type, deviation};
            }
        }
        const double ir_gap = outside_prob * type - truthful;
        report.max_ir_violation = std::max(report.max_ir_violation, ir_gap);
    }
    return report;
}

PriceSearchResult posted_price_best_response(const RegularDistribution& dist, double capacity,
                                             int n_prices) {
    require_capacity(capacity);
    if (n_prices < 1001)
        throw std::invalid_argument("posted_price_best_response needs >= 1001 prices");

    const double hi = dist.v_hi();
    const double q_k = dist.quantile(capacity);
    const double max_supportable = hi * (1.0 - capacity); // price the top type pays at worst

    // buyer-equilibrium cutoff: marginal buyer indifferent between paying p
    // and queueing at the rationed public option
    auto equilibrium_cutoff = [&](double p) {
        if (p <= 0.0) return dist.v_lo(); // free good: everyone (weakly) buys
        if (p >= max_supportable) return hi; // nobody buys even at worst rationing
        auto gap = [&](double c) {
            return c * (1.0 - std::min(1.0, capacity / dist.cdf(c))) - p;
        };
        return num::bisect_root(gap, q_k, hi, 1e-12 * dist.range());
    };

    PriceSearchResult result;
    result.prices = num::linspace(0.0, hi, n_prices);
    result.revenues.resize(result.prices.size());
    double best_revenue = -1.0;
    for (std::size_t i = 0; i < result.prices.size(); ++i) {
        const double p = result.prices[i];
        const double c = equilibrium_cutoff(p);
        const double revenue = p * (1.0 - dist.cdf(c));
        result.revenues[i] = revenue;
        if (revenue > best_revenue) {
            best_revenue = revenue;
            result.best_price = p;
        }
    }
    return result;
}

double two_step_excess(const RegularDistribution& dist, double capacity, double cutoff,
                       double v1, double v2) {
    require_capacity(capacity);
    if (v1 > v2) std::swap(v1, v2);
    if (!(v1 >= dist.v_lo()) || !(v2 <= dist.v_hi()))
        throw std::domain_error("two_step_excess cutoffs outside the support");

    const double Q = dist.cdf(cutoff);
    if (Q <= capacity) throw std::domain_error("two_step_excess requires F(cutoff) > capacity");
    const double F1 = dist.cdf(v1);
    const double F2 = dist.cdf(v2);
    if (F1 > Q || F2 < Q)
        throw std::domain_error("two_step_excess requires F(v1) <= F(cutoff) <= F(v2)");

    if (F2 == F1) return 0.0; // degenerate: both cutoffs coincide with the step rule

    // mixing weight matching the induced demand: alpha F(v1) + (1-alpha) F(v2) = Q
    const double alpha = (F2 - Q) / (F2 - F1);
    auto tail = [&](double v) { return v * (1.0 - dist.cdf(v)); };
    const double margin = 1.0 - capacity / Q;
    const double mixed = margin * (alpha * tail(v1) + (1.0 - alpha) * tail(v2));
    const double step = margin * tail(cutoff);
    return mixed - step;
}

double two_step_dominance_check(const RegularDistribution& dist, double capacity, int n_trials,
                                std::uint64_t seed) {
    if (n_trials < 100) throw std::invalid_argument("two_step_dominance_check needs >= 100 trials");
    const double cutoff = solve_cutoff(dist, capacity);
    const CounterRng rng{seed};
    double max_excess = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < n_trials; ++t) {
        const double v1 =
            dist.v_lo() + rng.uniform(static_cast<std::uint64_t>(t), 0) * (cutoff - dist.v_lo());
        const double v2 =
            cutoff + rng.uniform(static_cast<std::uint64_t>(t), 1) * (dist.v_hi() - cutoff);
        max_excess = std::max(max_excess, two_step_excess(dist, capacity, cutoff, v1, v2));
    }
    return max_excess;
}

namespace {

constexpr std::size_t kSimChunks = 512; // fixed decomposition keeps sums thread-count invariant

struct BuyerCount {
    // number of buyers purchasing from the monopolist when m are already
    // assumed to do so (the best-response count map; nonincreasing in m)
    const std::vector<double>& sorted_values;
    double capacity;
    double price;

    double rationing(std::int64_t m) const {
        const std::int64_t n = static_cast<std::int64_t>(sorted_values.size());
        if (m >= n) return 1.0;
        const double share = static_cast<double>(n - m) / static_cast<double>(n);
        return std::min(1.0, capacity / share);
    }

    std::int64_t operator()(std::int64_t m) const {
        const std::int64_t n = static_cast<std::int64_t>(sorted_values.size());
        const double keep = 1.0 - rationing(m);
        if (keep <= 0.0) return price <= 0.0 ? n : 0;
        const double threshold = price / keep;
        const auto it =
            std::lower_bound(sorted_values.begin(), sorted_values.end(), threshold);
        return static_cast<std::int64_t>(sorted_values.end() - it);
    }
};

} // namespace

SimulationResult simulate_market(const RegularDistribution& dist, double capacity, double price,
                                 std::int64_t n_buyers, std::uint64_t seed, int n_threads) {
    require_capacity(capacity);
    if (n_buyers < 1000) throw std::invalid_argument("simulate_market needs >= 1000 buyers");
    if (!(price >= 0.0)) throw std::invalid_argument("price must be nonnegative");

    const std::size_t n = static_cast<std::size_t>(n_buyers);
    const CounterRng rng{seed};

    std::vector<double> values(n);
    parallel_chunks(n, kSimChunks, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            values[i] = dist.quantile(rng.uniform(static_cast<std::uint64_t>(i), 0));
    }, n_threads);

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    // Fixed point of iterated best responses. Buying decisions are strategic
    // substitutes (more buyers -> less congestion -> buying less attractive),
    // so the count map h is nonincreasing and h(m) - m crosses zero exactly
    // once; the crossing is the stable buyer count the iteration settles on.
    const BuyerCount h{sorted, capacity, price};
    std::int64_t lo_m = 0;
    std::int64_t hi_m = n_buyers;
    // binary search for the largest m with h(m) >= m
    while (lo_m < hi_m) {
        const std::int64_t mid = lo_m + (hi_m - lo_m + 1) / 2;
        if (h(mid) >= mid)
            lo_m = mid;
        else
            hi_m = mid - 1;
    }
    const std::int64_t m_star = lo_m;

    const double keep = 1.0 - h.rationing(m_star);
    const bool all_buy = keep <= 0.0 && price <= 0.0;
    const double threshold =
        all_buy ? -std::numeric_limits<double>::infinity()
                : (keep <= 0.0 || m_star == 0) ? std::numeric_limits<double>::infinity()
                                               : sorted[n - static_cast<std::size_t>(m_star)];

    // per-chunk tallies, combined serially in chunk order
    std::vector<std::int64_t> chunk_buyers(kSimChunks, 0);
    std::vector<double> chunk_surplus(kSimChunks, 0.0);

    // the lottery probability depends on the realized buyer count, so count first
    parallel_chunks(n, kSimChunks, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        std::int64_t buyers = 0;
        for (std::size_t i = lo; i < hi; ++i)
            if (values[i] >= threshold) ++buyers;
        chunk_buyers[c] = buyers;
    }, n_threads);

    std::int64_t total_buyers = 0;
    for (std::size_t c = 0; c < kSimChunks; ++c) total_buyers += chunk_buyers[c];
    const double pi_market = h.rationing(total_buyers);

    parallel_chunks(n, kSimChunks, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        num::KahanSum surplus;
        for (std::size_t i = lo; i < hi; ++i) {
            if (values[i] >= threshold) {
                surplus.add(values[i] - price);
            } else if (rng.uniform(static_cast<std::uint64_t>(i), 1) < pi_market) {
                surplus.add(values[i]);
            }
        }
        chunk_surplus[c] = surplus.value();
    }, n_threads);

    num::KahanSum surplus_total;
    for (std::size_t c = 0; c < kSimChunks; ++c) surplus_total.add(chunk_surplus[c]);
    const double mean_cs = surplus_total.value() / static_cast<double>(n_buyers);

    // second pass for the standard error, deterministic for the same reason
    std::vector<double> chunk_sq(kSimChunks, 0.0);
    parallel_chunks(n, kSimChunks, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        num::KahanSum sq;
        for (std::size_t i = lo; i < hi; ++i) {
            double s = 0.0;
            if (values[i] >= threshold) {
                s = values[i] - price;
            } else if (rng.uniform(static_cast<std::uint64_t>(i), 1) < pi_market) {
                s = values[i];
            }
            const double d = s - mean_cs;
            sq.add(d * d);
        }
        chunk_sq[c] = sq.value();
    }, n_threads);
    num::KahanSum sq_total;
    for (std::size_t c = 0; c < kSimChunks; ++c) sq_total.add(chunk_sq[c]);

    SimulationResult result;
    result.seed = seed;
    result.n_buyers = n_buyers;
    result.realized_demand_share =
        static_cast<double>(n_buyers - total_buyers) / static_cast<double>(n_buyers);
    result.realized_rationing_prob = pi_market;
    result.realized_revenue =
        price * static_cast<double>(total_buyers) / static_cast<double>(n_buyers);
    result.mean_consumer_surplus = mean_cs;
    result.std_error_cs = std::sqrt(sq_total.value() / static_cast<double>(n_buyers - 1) /
                                    static_cast<double>(n_buyers));
    return result;
}

} // namespace mixmarket
