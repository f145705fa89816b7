#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mixmarket/oracle.hpp"
#include "mixmarket/welfare.hpp"

namespace mixmarket::csv {

/// 17 significant digits: enough to round-trip any double, identical bytes
/// on every platform with a C99-conforming printf.
std::string format_real(double x);

/// Header: k,cutoff,rationing_prob,price,producer_surplus,consumer_surplus,
/// total_surplus,theta_prime,pi_prime,p_prime,P_prime,foc_residual
void write_sweep(std::ostream& out, const SweepResult& result);

/// Header: v,surplus_mixed,surplus_monopoly_only,surplus_public_only
void write_surplus_by_type(std::ostream& out, const std::vector<double>& type_grid,
                           const std::vector<double>& mixed,
                           const std::vector<double>& monopoly_only,
                           const std::vector<double>& public_only);

/// Header: seed,n_buyers,realized_demand_share,realized_rationing_prob,
/// realized_revenue,mean_cs,stderr_cs
void write_simulation(std::ostream& out, const std::vector<SimulationResult>& results);

/// Header: v,condition_lhs
void write_condition(std::ostream& out, const ConditionReport& report);

} // namespace mixmarket::csv
