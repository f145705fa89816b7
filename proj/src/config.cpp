#include "mixmarket/config.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "mixmarket/csv.hpp"

namespace mixmarket {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<double> parse_reals(const std::string& value, int line, const std::string& key) {
    std::vector<double> out;
    std::istringstream in(value);
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            const double x = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(x);
        } catch (...) {
            throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                                  "': not a real number: '" + token + "'",
                              line, key);
        }
    }
    if (out.empty())
        throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': empty value",
                          line, key);
    return out;
}

double parse_one_real(const std::string& value, int line, const std::string& key) {
    const auto reals = parse_reals(value, line, key);
    if (reals.size() != 1)
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                              "': expected a single real",
                          line, key);
    return reals[0];
}

long long parse_integer(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(trim(value), &used);
        if (used != trim(value).size()) throw std::invalid_argument(value);
        return x;
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                              "': not an integer: '" + value + "'",
                          line, key);
    }
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& message) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': " + message, line,
                      key);
}

std::size_t family_param_count(Family family) {
    switch (family) {
        case Family::uniform: return 0;
        case Family::linear_density: return 2;
        case Family::power: return 1;
        case Family::truncated_exponential: return 1;
        case Family::truncated_normal: return 2;
        case Family::custom: break;
    }
    throw ConfigError("custom distributions cannot be specified in a config file");
}

} // namespace

MarketConfig parse_config(const std::string& text) {
    MarketConfig config;
    std::map<std::string, int> seen; // key -> line, for diagnostics

    bool have_distribution = false;
    bool have_support = false;
    bool have_capacity = false;
    bool have_params = false;
    int params_line = 0;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'",
                              line_no, line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, key, "missing key");
        if (value.empty()) fail(line_no, key, "missing value");
        if (auto [it, inserted] = seen.emplace(key, line_no); !inserted)
            fail(line_no, key, "duplicate key (first on line " + std::to_string(it->second) + ")");

        if (key == "distribution") {
            try {
                config.family = family_from_name(value);
            } catch (const std::invalid_argument& e) {
                fail(line_no, key, e.what());
            }
            have_distribution = true;
        } else if (key == "support") {
            const auto reals = parse_reals(value, line_no, key);
            if (reals.size() != 2) fail(line_no, key, "expected two reals (lo hi)");
            config.support_lo = reals[0];
            config.support_hi = reals[1];
            have_support = true;
        } else if (key == "params") {
            config.dist_params = parse_reals(value, line_no, key);
            have_params = true;
            params_line = line_no;
        } else if (key == "capacity") {
            config.capacity = parse_one_real(value, line_no, key);
            have_capacity = true;
        } else if (key == "quality_ratio") {
            config.quality_ratio = parse_one_real(value, line_no, key);
        } else if (key == "public_price") {
            config.public_price = parse_one_real(value, line_no, key);
        } else if (key == "timing") {
            if (value == "substitute")
                config.timing = MarketParams::Timing::substitute;
            else if (value == "complement")
                config.timing = MarketParams::Timing::complement;
            else
                fail(line_no, key, "expected 'substitute' or 'complement'");
        } else if (key == "k_min") {
            config.k_min = parse_one_real(value, line_no, key);
        } else if (key == "k_max") {
            config.k_max = parse_one_real(value, line_no, key);
        } else if (key == "k_steps") {
            config.k_steps = static_cast<int>(parse_integer(value, line_no, key));
        } else if (key == "type_grid") {
            config.type_grid = static_cast<int>(parse_integer(value, line_no, key));
        } else if (key == "seed") {
            const long long s = parse_integer(value, line_no, key);
            if (s < 0) fail(line_no, key, "seed must be nonnegative");
            config.seed = static_cast<std::uint64_t>(s);
        } else if (key == "buyers") {
            config.buyers = parse_integer(value, line_no, key);
        } else if (key == "out_dir") {
            config.out_dir = value;
        } else {
            fail(line_no, key, "unknown key");
        }
    }

    if (!have_distribution) throw ConfigError("missing required key 'distribution'");
    if (!have_support) throw ConfigError("missing required key 'support'");
    if (!have_capacity) throw ConfigError("missing required key 'capacity'");

    // semantic validation
    auto line_of = [&](const std::string& key) {
        const auto it = seen.find(key);
        return it == seen.end() ? 0 : it->second;
    };
    if (!(config.support_lo >= 0.0) || !(config.support_hi > config.support_lo))
        fail(line_of("support"), "support", "need 0 <= lo < hi");
    const std::size_t want = family_param_count(config.family);
    if (want == 0 && have_params)
        fail(params_line, "params", "family '" + family_name(config.family) + "' takes no params");
    if (want > 0 && config.dist_params.size() != want)
        fail(have_params ? params_line : line_of("distribution"), "params",
             "family '" + family_name(config.family) + "' needs " + std::to_string(want) +
                 " params");
    if (config.family == Family::power &&
        (config.support_lo != 0.0 || config.support_hi != 1.0))
        fail(line_of("support"), "support", "power family is defined on support = 0 1");
    if (!(config.capacity > 0.0) || !(config.capacity < 1.0))
        fail(line_of("capacity"), "capacity", "capacity must lie in (0, 1)");
    if (!(config.quality_ratio > 0.0) || !(config.quality_ratio <= 1.0))
        fail(line_of("quality_ratio"), "quality_ratio", "must lie in (0, 1]");
    if (!(config.public_price >= 0.0))
        fail(line_of("public_price"), "public_price", "must be nonnegative");
    if (config.public_price > config.quality_ratio * config.support_lo)
        fail(line_of("public_price"), "public_price",
             "must satisfy public_price <= quality_ratio * v_lo (larger subsidized prices "
             "exclude low types and amount to truncating the support)");
    if (!(config.k_min > 0.0) || !(config.k_max < 1.0) || !(config.k_min < config.k_max))
        fail(line_of("k_min"), "k_min", "need 0 < k_min < k_max < 1");
    if (config.k_steps < 2) fail(line_of("k_steps"), "k_steps", "need k_steps >= 2");
    if (config.type_grid < 2) fail(line_of("type_grid"), "type_grid", "need type_grid >= 2");
    if (config.buyers < 1000) fail(line_of("buyers"), "buyers", "need buyers >= 1000");

    return config;
}

std::string serialize_config(const MarketConfig& config) {
    std::string out;
    out += "distribution = " + family_name(config.family) + "\n";
    out += "support = " + csv::format_real(config.support_lo) + " " +
           csv::format_real(config.support_hi) + "\n";
    if (!config.dist_params.empty()) {
        out += "params =";
        for (double p : config.dist_params) out += " " + csv::format_real(p);
        out += "\n";
    }
    out += "capacity = " + csv::format_real(config.capacity) + "\n";
    out += "quality_ratio = " + csv::format_real(config.quality_ratio) + "\n";
    out += "public_price = " + csv::format_real(config.public_price) + "\n";
    out += std::string("timing = ") +
           (config.timing == MarketParams::Timing::substitute ? "substitute" : "complement") +
           "\n";
    out += "k_min = " + csv::format_real(config.k_min) + "\n";
    out += "k_max = " + csv::format_real(config.k_max) + "\n";
    out += "k_steps = " + std::to_string(config.k_steps) + "\n";
    out += "type_grid = " + std::to_string(config.type_grid) + "\n";
    out += "seed = " + std::to_string(config.seed) + "\n";
    out += "buyers = " + std::to_string(config.buyers) + "\n";
    out += "out_dir = " + config.out_dir + "\n";
    return out;
}

RegularDistribution make_distribution(const MarketConfig& config) {
    switch (config.family) {
        case Family::uniform:
            return RegularDistribution::uniform(config.support_lo, config.support_hi);
        case Family::linear_density:
            return RegularDistribution::linear_density(config.support_lo, config.support_hi,
                                                       config.dist_params[0],
                                                       config.dist_params[1]);
        case Family::power:
            return RegularDistribution::power(config.dist_params[0]);
        case Family::truncated_exponential:
            return RegularDistribution::truncated_exponential(
                config.support_lo, config.support_hi, config.dist_params[0]);
        case Family::truncated_normal:
            return RegularDistribution::truncated_normal(config.support_lo, config.support_hi,
                                                         config.dist_params[0],
                                                         config.dist_params[1]);
        case Family::custom: break;
    }
    throw ConfigError("custom distributions cannot be specified in a config file");
}

MarketParams make_params(const MarketConfig& config) {
    MarketParams params;
    params.capacity = config.capacity;
    params.quality_ratio = config.quality_ratio;
    params.public_price = config.public_price;
    params.timing = config.timing;
    return params;
}

} // namespace mixmarket
