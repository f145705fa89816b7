#include "mixmarket/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mixmarket/numeric.hpp"

namespace mixmarket {

namespace {

double standard_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double standard_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::uniform: return "uniform";
        case Family::linear_density: return "linear_density";
        case Family::power: return "power";
        case Family::truncated_exponential: return "truncated_exponential";
        case Family::truncated_normal: return "truncated_normal";
        case Family::custom: return "custom";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    if (name == "uniform") return Family::uniform;
    if (name == "linear_density") return Family::linear_density;
    if (name == "power") return Family::power;
    if (name == "truncated_exponential") return Family::truncated_exponential;
    if (name == "truncated_normal") return Family::truncated_normal;
    throw std::invalid_argument("unknown distribution family: " + name);
}

RegularDistribution RegularDistribution::uniform(double lo, double hi) {
    RegularDistribution d;
    d.family_ = Family::uniform;
    d.v_lo_ = lo;
    d.v_hi_ = hi;
    d.finalize();
    return d;
}

RegularDistribution RegularDistribution::linear_density(double lo, double hi, double alpha,
                                                        double beta) {
    RegularDistribution d;
    d.family_ = Family::linear_density;
    d.v_lo_ = lo;
    d.v_hi_ = hi;
    d.params_ = {alpha, beta};
    if (!(std::isfinite(alpha) && std::isfinite(beta)))
        throw std::invalid_argument("linear_density: parameters must be finite");
    const double f_lo = alpha + beta * lo;
    const double f_hi = alpha + beta * hi;
    if (!(f_lo > 0.0) || !(f_hi > 0.0))
        throw std::invalid_argument("linear_density: density must be positive on the support");
    const double mass = alpha * (hi - lo) + 0.5 * beta * (hi * hi - lo * lo);
    if (std::fabs(mass - 1.0) > 1e-9)
        throw std::invalid_argument("linear_density: density must integrate to 1");
    d.finalize();
    return d;
}

RegularDistribution RegularDistribution::power(double c) {
    RegularDistribution d;
    d.family_ = Family::power;
    d.v_lo_ = 0.0;
    d.v_hi_ = 1.0;
    d.params_ = {c};
    if (!(c >= 1.0) || !std::isfinite(c))
        throw std::invalid_argument("power: exponent parameter must satisfy c >= 1");
    d.finalize();
    return d;
}

RegularDistribution RegularDistribution::truncated_exponential(double lo, double hi,
                                                               double rate) {
    RegularDistribution d;
    d.family_ = Family::truncated_exponential;
    d.v_lo_ = lo;
    d.v_hi_ = hi;
    d.params_ = {rate};
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("truncated_exponential: rate must be positive");
    d.aux0_ = std::exp(-rate * lo);
    d.aux1_ = std::exp(-rate * hi);
    d.aux2_ = d.aux0_ - d.aux1_; // normalization
    if (!(d.aux2_ > 0.0))
        throw std::invalid_argument("truncated_exponential: degenerate truncation window");
    d.finalize();
    return d;
}

RegularDistribution RegularDistribution::truncated_normal(double lo, double hi, double mean,
                                                          double sigma) {
    RegularDistribution d;
    d.family_ = Family::truncated_normal;
    d.v_lo_ = lo;
    d.v_hi_ = hi;
    d.params_ = {mean, sigma};
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mean))
        throw std::invalid_argument("truncated_normal: sigma must be positive and finite");
    d.aux0_ = standard_normal_cdf((lo - mean) / sigma);
    d.aux1_ = standard_normal_cdf((hi - mean) / sigma);
    d.aux2_ = d.aux1_ - d.aux0_;
    if (!(d.aux2_ > 0.0))
        throw std::invalid_argument("truncated_normal: truncation window has no mass");
    d.finalize();
    return d;
}

RegularDistribution RegularDistribution::custom(double lo, double hi, RealFn cdf, RealFn pdf,
                                                RealFn pdf_derivative, RealFn quantile) {
    RegularDistribution d;
    d.family_ = Family::custom;
    d.v_lo_ = lo;
    d.v_hi_ = hi;
    d.cdf_fn_ = std::move(cdf);
    d.pdf_fn_ = std::move(pdf);
    d.dpdf_fn_ = std::move(pdf_derivative);
    d.quantile_fn_ = std::move(quantile);
    if (!d.cdf_fn_ || !d.pdf_fn_ || !d.dpdf_fn_ || !d.quantile_fn_)
        throw std::invalid_argument("custom distribution: all four callables are required");
    if (std::fabs(d.cdf_fn_(lo)) > 1e-9 || std::fabs(d.cdf_fn_(hi) - 1.0) > 1e-9)
        throw std::invalid_argument("custom distribution: cdf must run from 0 to 1 over the support");
    d.finalize();
    return d;
}

void RegularDistribution::finalize() {
    if (!(v_lo_ >= 0.0) || !(v_hi_ > v_lo_) || !std::isfinite(v_lo_) || !std::isfinite(v_hi_))
        throw std::invalid_argument("support must satisfy 0 <= v_lo < v_hi");

    // positive density on the interior (families like power may vanish at an endpoint)
    for (int i = 1; i < 1000; ++i) {
        const double v = v_lo_ + range() * i / 1000.0;
        const double f = pdf(v);
        if (!(f > 0.0) || !std::isfinite(f))
            throw std::invalid_argument("density must be positive on the interior of the support");
    }

    regularity_ = check_regularity(kConstructionGridSize);

    if (virtual_value(v_lo_) >= 0.0) {
        monopoly_price_ = v_lo_;
    } else {
        monopoly_price_ = num::bisect_root([this](double v) { return virtual_value(v); },
                                           v_lo_, v_hi_, 1e-12);
    }
}

void RegularDistribution::check_support(double v) const {
    if (!(v >= v_lo_) || !(v <= v_hi_))
        throw std::domain_error("value outside the distribution support");
}

double RegularDistribution::cdf(double v) const {
    check_support(v);
    if (v == v_lo_) return 0.0;
    if (v == v_hi_) return 1.0;
    double u = 0.0;
    switch (family_) {
        case Family::uniform:
            u = (v - v_lo_) / range();
            break;
        case Family::linear_density:
            u = params_[0] * (v - v_lo_) + 0.5 * params_[1] * (v * v - v_lo_ * v_lo_);
            break;
        case Family::power:
            u = std::pow(v, params_[0]);
            break;
        case Family::truncated_exponential:
            u = (aux0_ - std::exp(-params_[0] * v)) / aux2_;
            break;
        case Family::truncated_normal:
            u = (standard_normal_cdf((v - params_[0]) / params_[1]) - aux0_) / aux2_;
            break;
        case Family::custom:
            u = cdf_fn_(v);
            break;
    }
    return std::clamp(u, 0.0, 1.0);
}

double RegularDistribution::pdf(double v) const {
    check_support(v);
    switch (family_) {
        case Family::uniform: return 1.0 / range();
        case Family::linear_density: return params_[0] + params_[1] * v;
        case Family::power: return params_[0] * std::pow(v, params_[0] - 1.0);
        case Family::truncated_exponential: return params_[0] * std::exp(-params_[0] * v) / aux2_;
        case Family::truncated_normal:
            return standard_normal_pdf((v - params_[0]) / params_[1]) / (params_[1] * aux2_);
        case Family::custom: return pdf_fn_(v);
    }
    return 0.0;
}

double RegularDistribution::pdf_derivative(double v) const {
    check_support(v);
    switch (family_) {
        case Family::uniform: return 0.0;
        case Family::linear_density: return params_[1];
        case Family::power: {
            const double c = params_[0];
            if (c == 1.0) return 0.0;
            return c * (c - 1.0) * std::pow(v, c - 2.0);
        }
        case Family::truncated_exponential:
            return -params_[0] * params_[0] * std::exp(-params_[0] * v) / aux2_;
        case Family::truncated_normal:
            return -(v - params_[0]) / (params_[1] * params_[1]) * pdf(v);
        case Family::custom: return dpdf_fn_(v);
    }
    return 0.0;
}

double RegularDistribution::quantile(double u) const {
    if (!(u >= 0.0) || !(u <= 1.0)) throw std::domain_error("quantile argument outside [0, 1]");
    if (u == 0.0) return v_lo_;
    if (u == 1.0) return v_hi_;
    switch (family_) {
        case Family::uniform:
            return v_lo_ + u * range();
        case Family::linear_density: {
            const double alpha = params_[0];
            const double beta = params_[1];
            if (beta == 0.0) return v_lo_ + u * range();
            const double f_lo = alpha + beta * v_lo_;
            const double v = (-alpha + std::sqrt(f_lo * f_lo + 2.0 * beta * u)) / beta;
            return std::clamp(v, v_lo_, v_hi_);
        }
        case Family::power:
            return std::pow(u, 1.0 / params_[0]);
        case Family::truncated_exponential:
            return std::clamp(-std::log(aux0_ - u * aux2_) / params_[0], v_lo_, v_hi_);
        case Family::truncated_normal: {
            // invert the cdf by bisection; smooth and strictly increasing
            double lo = v_lo_, hi = v_hi_;
            while (true) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                (cdf(mid) < u ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        case Family::custom:
            return std::clamp(quantile_fn_(u), v_lo_, v_hi_);
    }
    return v_lo_;
}

double RegularDistribution::virtual_value(double v) const {
    check_support(v);
    if (v == v_hi_) return v_hi_; // 1 - F = 0 exactly
    return v - (1.0 - cdf(v)) / pdf(v);
}

double RegularDistribution::virtual_value_slope(double v) const {
    check_support(v);
    const double f = pdf(v);
    return 2.0 + (1.0 - cdf(v)) * pdf_derivative(v) / (f * f);
}

double RegularDistribution::g_function(double v) const {
    check_support(v);
    if (v == v_lo_) return v_lo_; // phi * F -> 0 as v -> v_lo
    if (v == v_hi_) return v_hi_;
    const double F = cdf(v);
    return virtual_value(v) * F + v * (1.0 - F);
}

double RegularDistribution::g_slope(double v) const {
    check_support(v);
    if (v == v_lo_) return 0.0; // F(v_lo) = 0
    return virtual_value_slope(v) * cdf(v);
}

RegularityReport RegularDistribution::check_regularity(int grid_size) const {
    if (grid_size < 101) throw std::invalid_argument("regularity grid must have >= 101 points");
    RegularityReport report;
    report.grid_size = grid_size;
    double min_slope = std::numeric_limits<double>::infinity();
    bool any_finite = false;
    for (int i = 0; i < grid_size; ++i) {
        const double v = i == grid_size - 1
                             ? v_hi_
                             : v_lo_ + range() * i / (grid_size - 1);
        const double slope = virtual_value_slope(v);
        if (std::isnan(slope)) continue; // removable endpoint form (vanishing density)
        any_finite = true;
        min_slope = std::min(min_slope, slope);
        if (slope <= 0.0) report.failing_points.push_back(v);
    }
    report.min_phi_slope = min_slope;
    report.is_regular = any_finite && report.failing_points.empty() && min_slope > 0.0;
    return report;
}

void RegularDistribution::require_regular() const {
    if (!is_regular())
        throw RegularityError("distribution is not regular: virtual value is not strictly "
                              "increasing (min slope " +
                              std::to_string(regularity_.min_phi_slope) + ")");
}

} // namespace mixmarket
