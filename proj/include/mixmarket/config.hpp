#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixmarket/distribution.hpp"
#include "mixmarket/solver.hpp"

namespace mixmarket {

/// Parsed market configuration. Grammar: one `key = value` per line,
/// `#` starts a comment, unknown or duplicate keys are rejected.
///
/// Keys: distribution, support (two reals), params (family-specific reals),
/// capacity, quality_ratio, public_price, timing, k_min, k_max, k_steps,
/// type_grid, seed, buyers, out_dir.
struct MarketConfig {
    Family family = Family::uniform;
    double support_lo = 0.0;
    double support_hi = 1.0;
    std::vector<double> dist_params;

    double capacity = 0.0;
    double quality_ratio = 1.0;
    double public_price = 0.0;
    MarketParams::Timing timing = MarketParams::Timing::substitute;

    double k_min = 1e-6;
    double k_max = 0.9999;
    int k_steps = 99;
    int type_grid = 201;
    std::uint64_t seed = 1;
    std::int64_t buyers = 100000;
    std::string out_dir = ".";

    bool operator==(const MarketConfig&) const = default;
};

/// Parses and validates; throws ConfigError naming the line and key.
MarketConfig parse_config(const std::string& text);

/// Emits the config in the same grammar; parse(serialize(c)) == c.
std::string serialize_config(const MarketConfig& config);

RegularDistribution make_distribution(const MarketConfig& config);
MarketParams make_params(const MarketConfig& config);

} // namespace mixmarket
