#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mixmarket/errors.hpp"

namespace mixmarket {

enum class Family {
    uniform,
    linear_density,
    power,
    truncated_exponential,
    truncated_normal,
    custom, // test hook for hand-built densities; not reachable from configs
};

std::string family_name(Family family);
Family family_from_name(const std::string& name);

/// Outcome of the numerical regularity check: the minimum virtual-value
/// slope seen on the grid and every grid point where the slope is <= 0.
struct RegularityReport {
    bool is_regular = false;
    double min_phi_slope = 0.0;
    std::vector<double> failing_points;
    int grid_size = 0;
};

/// A value distribution with positive differentiable density on a compact
/// support [v_lo, v_hi], v_lo >= 0. Exposes the screening-theoretic
/// functions derived from it: the virtual value phi(v) = v - (1-F(v))/f(v),
/// its slope, the induced G(v) = phi(v) F(v) + v (1 - F(v)), and the
/// standard monopoly price v^M = min{v : phi(v) >= 0}.
///
/// Regularity (phi strictly increasing) is checked numerically on
/// construction; non-regular instances can be built and inspected, but every
/// solver entry point rejects them.
class RegularDistribution {
public:
    using RealFn = std::function<double(double)>;

    static constexpr int kConstructionGridSize = 10001;

    static RegularDistribution uniform(double lo, double hi);
    /// Density alpha + beta*v on [lo, hi]; must be positive and integrate to 1.
    static RegularDistribution linear_density(double lo, double hi, double alpha, double beta);
    /// Density c * v^(c-1) on [0, 1], c >= 1.
    static RegularDistribution power(double c);
    static RegularDistribution truncated_exponential(double lo, double hi, double rate);
    static RegularDistribution truncated_normal(double lo, double hi, double mean, double sigma);
    /// Arbitrary density from callables. Used by tests to build stress cases
    /// (e.g. non-regular spline densities); callers must supply a consistent
    /// (cdf, pdf, pdf', quantile) tuple.
    static RegularDistribution custom(double lo, double hi, RealFn cdf, RealFn pdf,
                                      RealFn pdf_derivative, RealFn quantile);

    double v_lo() const { return v_lo_; }
    double v_hi() const { return v_hi_; }
    double range() const { return v_hi_ - v_lo_; }
    Family family() const { return family_; }
    const std::vector<double>& params() const { return params_; }

    /// F(v). Exactly 0 at v_lo and 1 at v_hi.
    double cdf(double v) const;
    double pdf(double v) const;
    double pdf_derivative(double v) const;
    /// F^{-1}(u) for u in [0, 1].
    double quantile(double u) const;

    /// phi(v) = v - (1 - F(v)) / f(v). Exactly v_hi at the top of the support.
    double virtual_value(double v) const;
    /// phi'(v) = 2 + (1 - F(v)) f'(v) / f(v)^2.
    double virtual_value_slope(double v) const;
    /// G(v) = phi(v) F(v) + v (1 - F(v)), using the closed-form tail
    /// integral. Equals v_lo at v_lo and v_hi at v_hi.
    double g_function(double v) const;
    /// G'(v) = phi'(v) F(v); zero at v_lo.
    double g_slope(double v) const;

    /// v^M = min{v : phi(v) >= 0}: v_lo if phi(v_lo) >= 0, otherwise the
    /// root of phi located by bisection to 1e-12 absolute tolerance.
    double standard_monopoly_price() const { return monopoly_price_; }

    /// Evaluates phi' on a uniform grid of grid_size >= 101 points and
    /// reports the minimum slope plus every point with phi' <= 0.
    RegularityReport check_regularity(int grid_size) const;

    /// Report cached at construction (grid of kConstructionGridSize points).
    const RegularityReport& regularity() const { return regularity_; }
    bool is_regular() const { return regularity_.is_regular; }
    /// Throws RegularityError unless the cached check passed.
    void require_regular() const;

private:
    RegularDistribution() = default;
    void finalize();
    void check_support(double v) const;

    Family family_ = Family::uniform;
    double v_lo_ = 0.0;
    double v_hi_ = 1.0;
    std::vector<double> params_;

    // cached family constants (meaning depends on family)
    double aux0_ = 0.0;
    double aux1_ = 0.0;
    double aux2_ = 0.0;

    RealFn cdf_fn_, pdf_fn_, dpdf_fn_, quantile_fn_;

    RegularityReport regularity_;
    double monopoly_price_ = 0.0;
};

} // namespace mixmarket
