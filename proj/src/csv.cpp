#include "mixmarket/csv.hpp"

#include <cstdio>

namespace mixmarket::csv {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_sweep(std::ostream& out, const SweepResult& result) {
    out << "k,cutoff,rationing_prob,price,producer_surplus,consumer_surplus,total_surplus,"
           "theta_prime,pi_prime,p_prime,P_prime,foc_residual\n";
    for (std::size_t i = 0; i < result.size(); ++i) {
        out << format_real(result.capacity[i]) << ',' << format_real(result.cutoff[i]) << ','
            << format_real(result.rationing_prob[i]) << ',' << format_real(result.price[i])
            << ',' << format_real(result.producer_surplus[i]) << ','
            << format_real(result.consumer_surplus[i]) << ','
            << format_real(result.total_surplus[i]) << ','
            << format_real(result.cutoff_sensitivity[i]) << ','
            << format_real(result.rationing_sensitivity[i]) << ','
            << format_real(result.price_sensitivity[i]) << ','
            << format_real(result.producer_surplus_sensitivity[i]) << ','
            << format_real(result.foc_residual[i]) << '\n';
    }
}

void write_surplus_by_type(std::ostream& out, const std::vector<double>& type_grid,
                           const std::vector<double>& mixed,
                           const std::vector<double>& monopoly_only,
                           const std::vector<double>& public_only) {
    out << "v,surplus_mixed,surplus_monopoly_only,surplus_public_only\n";
    for (std::size_t i = 0; i < type_grid.size(); ++i) {
        out << format_real(type_grid[i]) << ',' << format_real(mixed[i]) << ','
            << format_real(monopoly_only[i]) << ',' << format_real(public_only[i]) << '\n';
    }
}

void write_simulation(std::ostream& out, const std::vector<SimulationResult>& results) {
    out << "seed,n_buyers,realized_demand_share,realized_rationing_prob,realized_revenue,"
           "mean_cs,stderr_cs\n";
    for (const auto& r : results) {
        out << r.seed << ',' << r.n_buyers << ',' << format_real(r.realized_demand_share) << ','
            << format_real(r.realized_rationing_prob) << ',' << format_real(r.realized_revenue)
            << ',' << format_real(r.mean_consumer_surplus) << ',' << format_real(r.std_error_cs)
            << '\n';
    }
}

void write_condition(std::ostream& out, const ConditionReport& report) {
    out << "v,condition_lhs\n";
    for (std::size_t i = 0; i < report.sample_points.size(); ++i)
        out << format_real(report.sample_points[i]) << ',' << format_real(report.lhs_values[i])
            << '\n';
}

} // namespace mixmarket::csv
