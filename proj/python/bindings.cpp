#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mixmarket/config.hpp"
#include "mixmarket/general_model.hpp"
#include "mixmarket/oracle.hpp"
#include "mixmarket/welfare.hpp"

namespace py = pybind11;
using namespace mixmarket;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Revenue-optimal monopoly pricing against a rationed public option";

    py::register_exception<RegularityError>(m, "RegularityError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Family>(m, "Family")
        .value("uniform", Family::uniform)
        .value("linear_density", Family::linear_density)
        .value("power", Family::power)
        .value("truncated_exponential", Family::truncated_exponential)
        .value("truncated_normal", Family::truncated_normal)
        .value("custom", Family::custom);

    py::class_<RegularityReport>(m, "RegularityReport")
        .def_readonly("is_regular", &RegularityReport::is_regular)
        .def_readonly("min_phi_slope", &RegularityReport::min_phi_slope)
        .def_readonly("failing_points", &RegularityReport::failing_points)
        .def_readonly("grid_size", &RegularityReport::grid_size);

    py::class_<RegularDistribution>(m, "Distribution")
        .def_static("uniform", &RegularDistribution::uniform, py::arg("lo"), py::arg("hi"))
        .def_static("linear_density", &RegularDistribution::linear_density, py::arg("lo"),
                    py::arg("hi"), py::arg("alpha"), py::arg("beta"))
        .def_static("power", &RegularDistribution::power, py::arg("c"))
        .def_static("truncated_exponential", &RegularDistribution::truncated_exponential,
                    py::arg("lo"), py::arg("hi"), py::arg("rate"))
        .def_static("truncated_normal", &RegularDistribution::truncated_normal, py::arg("lo"),
                    py::arg("hi"), py::arg("mean"), py::arg("sigma"))
        .def_static("custom", &RegularDistribution::custom, py::arg("lo"), py::arg("hi"),
                    py::arg("cdf"), py::arg("pdf"), py::arg("pdf_derivative"),
                    py::arg("quantile"))
        .def_property_readonly("v_lo", &RegularDistribution::v_lo)
        .def_property_readonly("v_hi", &RegularDistribution::v_hi)
        .def_property_readonly("family", &RegularDistribution::family)
        .def_property_readonly("params", &RegularDistribution::params)
        .def("cdf", &RegularDistribution::cdf, py::arg("v"))
        .def("pdf", &RegularDistribution::pdf, py::arg("v"))
        .def("pdf_derivative", &RegularDistribution::pdf_derivative, py::arg("v"))
        .def("quantile", &RegularDistribution::quantile, py::arg("u"))
        .def("virtual_value", &RegularDistribution::virtual_value, py::arg("v"))
        .def("virtual_value_slope", &RegularDistribution::virtual_value_slope, py::arg("v"))
        .def("g_function", &RegularDistribution::g_function, py::arg("v"))
        .def("g_slope", &RegularDistribution::g_slope, py::arg("v"))
        .def_property_readonly("standard_monopoly_price",
                               &RegularDistribution::standard_monopoly_price)
        .def("check_regularity", &RegularDistribution::check_regularity, py::arg("grid_size"))
        .def_property_readonly("is_regular", &RegularDistribution::is_regular);

    py::class_<MechanismSolution>(m, "MechanismSolution")
        .def_readonly("cutoff", &MechanismSolution::cutoff)
        .def_readonly("price", &MechanismSolution::price)
        .def_readonly("rationing_prob", &MechanismSolution::rationing_prob)
        .def_readonly("induced_demand", &MechanismSolution::induced_demand)
        .def_readonly("producer_surplus", &MechanismSolution::producer_surplus)
        .def_readonly("foc_residual", &MechanismSolution::foc_residual)
        .def("__repr__", [](const MechanismSolution& s) {
            return "MechanismSolution(cutoff=" + std::to_string(s.cutoff) +
                   ", price=" + std::to_string(s.price) +
                   ", rationing_prob=" + std::to_string(s.rationing_prob) + ")";
        });

    m.def("foc_residual", &foc_residual, py::arg("dist"), py::arg("capacity"), py::arg("v"));
    m.def("solve_cutoff", &solve_cutoff, py::arg("dist"), py::arg("capacity"));
    m.def("solve_mechanism", &solve_mechanism, py::arg("dist"), py::arg("capacity"));
    m.def("revenue_at_cutoff", &revenue_at_cutoff, py::arg("dist"), py::arg("capacity"),
          py::arg("v"));
    m.def("effective_cost", &effective_cost, py::arg("dist"), py::arg("capacity"), py::arg("v"));
    m.def("monopoly_only_surplus", &monopoly_only_surplus, py::arg("dist"), py::arg("v"));
    m.def("public_only_surplus", &public_only_surplus, py::arg("capacity"), py::arg("v"));

    py::class_<WelfareReport>(m, "WelfareReport")
        .def_readonly("capacity", &WelfareReport::capacity)
        .def_readonly("cutoff", &WelfareReport::cutoff)
        .def_readonly("price", &WelfareReport::price)
        .def_readonly("rationing_prob", &WelfareReport::rationing_prob)
        .def_readonly("type_grid", &WelfareReport::type_grid)
        .def_readonly("surplus", &WelfareReport::surplus)
        .def_readonly("aggregate_consumer_surplus", &WelfareReport::aggregate_consumer_surplus)
        .def_readonly("producer_surplus", &WelfareReport::producer_surplus)
        .def_readonly("total_surplus", &WelfareReport::total_surplus);

    py::class_<ConditionReport>(m, "ConditionReport")
        .def_readonly("holds_everywhere", &ConditionReport::holds_everywhere)
        .def_readonly("sample_points", &ConditionReport::sample_points)
        .def_readonly("lhs_values", &ConditionReport::lhs_values)
        .def_readonly("failing_intervals", &ConditionReport::failing_intervals)
        .def_readonly("threshold_root", &ConditionReport::threshold_root);

    py::class_<HazardRateCriterion>(m, "HazardRateCriterion")
        .def_readonly("applicable", &HazardRateCriterion::applicable)
        .def_readonly("price_decreasing", &HazardRateCriterion::price_decreasing);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("capacity", &SweepResult::capacity)
        .def_readonly("cutoff", &SweepResult::cutoff)
        .def_readonly("rationing_prob", &SweepResult::rationing_prob)
        .def_readonly("price", &SweepResult::price)
        .def_readonly("producer_surplus", &SweepResult::producer_surplus)
        .def_readonly("consumer_surplus", &SweepResult::consumer_surplus)
        .def_readonly("total_surplus", &SweepResult::total_surplus)
        .def_readonly("cutoff_sensitivity", &SweepResult::cutoff_sensitivity)
        .def_readonly("rationing_sensitivity", &SweepResult::rationing_sensitivity)
        .def_readonly("price_sensitivity", &SweepResult::price_sensitivity)
        .def_readonly("producer_surplus_sensitivity",
                      &SweepResult::producer_surplus_sensitivity)
        .def_readonly("foc_residual", &SweepResult::foc_residual)
        .def("__len__", &SweepResult::size);

    m.def("consumer_surplus",
          py::overload_cast<const RegularDistribution&, double, double>(&consumer_surplus),
          py::arg("dist"), py::arg("capacity"), py::arg("v"));
    m.def("aggregate_consumer_surplus",
          py::overload_cast<const RegularDistribution&, double>(&aggregate_consumer_surplus),
          py::arg("dist"), py::arg("capacity"));
    m.def("cutoff_sensitivity",
          py::overload_cast<const RegularDistribution&, double>(&cutoff_sensitivity),
          py::arg("dist"), py::arg("capacity"));
    m.def("rationing_sensitivity",
          py::overload_cast<const RegularDistribution&, double>(&rationing_sensitivity),
          py::arg("dist"), py::arg("capacity"));
    m.def("price_sensitivity",
          py::overload_cast<const RegularDistribution&, double>(&price_sensitivity),
          py::arg("dist"), py::arg("capacity"));
    m.def("producer_surplus_sensitivity",
          py::overload_cast<const RegularDistribution&, double>(&producer_surplus_sensitivity),
          py::arg("dist"), py::arg("capacity"));
    m.def("condition_lhs", &condition_lhs, py::arg("dist"), py::arg("v"));
    m.def("check_condition", &check_condition, py::arg("dist"), py::arg("grid_size") = 2001);
    m.def("hazard_rate_criterion", &hazard_rate_criterion, py::arg("dist"), py::arg("grid_size") = 2001);
    m.def("entry_gain", &entry_gain, py::arg("dist"), py::arg("capacity"), py::arg("v"));
    m.def("welfare_report", &make_welfare_report, py::arg("dist"), py::arg("capacity"),
          py::arg("type_grid_size") = 201);
    // custom distributions wrap python callables: keep the GIL and stay serial
    m.def("sweep",
          [](const RegularDistribution& dist, const std::vector<double>& k_grid) {
              if (dist.family() == Family::custom) return sweep(dist, k_grid, 1);
              py::gil_scoped_release release;
              return sweep(dist, k_grid);
          },
          py::arg("dist"), py::arg("k_grid"));

    py::class_<MarketParams> params(m, "MarketParams");
    py::enum_<MarketParams::Timing>(params, "Timing")
        .value("substitute", MarketParams::Timing::substitute)
        .value("complement", MarketParams::Timing::complement);
    params
        .def(py::init([](double capacity, double quality_ratio, double public_price,
                         MarketParams::Timing timing) {
                 MarketParams p;
                 p.capacity = capacity;
                 p.quality_ratio = quality_ratio;
                 p.public_price = public_price;
                 p.timing = timing;
                 return p;
             }),
             py::arg("capacity"), py::arg("quality_ratio") = 1.0, py::arg("public_price") = 0.0,
             py::arg("timing") = MarketParams::Timing::substitute)
        .def_readwrite("capacity", &MarketParams::capacity)
        .def_readwrite("quality_ratio", &MarketParams::quality_ratio)
        .def_readwrite("public_price", &MarketParams::public_price)
        .def_readwrite("timing", &MarketParams::timing);

    py::enum_<Regime>(m, "Regime")
        .value("rationed", Regime::rationed)
        .value("slack", Regime::slack);

    py::class_<GeneralSolution>(m, "GeneralSolution")
        .def_readonly("cutoff", &GeneralSolution::cutoff)
        .def_readonly("price", &GeneralSolution::price)
        .def_readonly("regime", &GeneralSolution::regime)
        .def_readonly("objective_value", &GeneralSolution::objective_value)
        .def_readonly("near_tie", &GeneralSolution::near_tie);

    m.def("op_objective", &op_objective, py::arg("dist"), py::arg("params"), py::arg("v"));
    m.def("solve_general", &solve_general, py::arg("dist"), py::arg("params"));
    m.def("bertrand_limit_cutoff", &bertrand_limit_cutoff, py::arg("dist"),
          py::arg("quality_ratio"), py::arg("public_price"));

    py::class_<ComplementOutcome>(m, "ComplementOutcome")
        .def_readonly("price", &ComplementOutcome::price)
        .def_readonly("producer_surplus", &ComplementOutcome::producer_surplus)
        .def_readonly("aggregate_consumer_surplus",
                      &ComplementOutcome::aggregate_consumer_surplus)
        .def_readonly("type_grid", &ComplementOutcome::type_grid)
        .def_readonly("surplus", &ComplementOutcome::surplus);

    m.def("complement_surplus", &complement_surplus, py::arg("dist"), py::arg("capacity"),
          py::arg("v"));
    m.def("complement_outcome", &complement_outcome, py::arg("dist"), py::arg("capacity"),
          py::arg("type_grid_size") = 0);

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("seed", &SimulationResult::seed)
        .def_readonly("n_buyers", &SimulationResult::n_buyers)
        .def_readonly("realized_demand_share", &SimulationResult::realized_demand_share)
        .def_readonly("realized_rationing_prob", &SimulationResult::realized_rationing_prob)
        .def_readonly("realized_revenue", &SimulationResult::realized_revenue)
        .def_readonly("mean_consumer_surplus", &SimulationResult::mean_consumer_surplus)
        .def_readonly("std_error_cs", &SimulationResult::std_error_cs);

    py::class_<ICReport>(m, "ICReport")
        .def_readonly("max_ic_violation", &ICReport::max_ic_violation)
        .def_readonly("max_ir_violation", &ICReport::max_ir_violation)
        .def_readonly("worst_pair", &ICReport::worst_pair);

    py::class_<PriceSearchResult>(m, "PriceSearchResult")
        .def_readonly("best_price", &PriceSearchResult::best_price)
        .def_readonly("prices", &PriceSearchResult::prices)
        .def_readonly("revenues", &PriceSearchResult::revenues);

    m.def("grid_argmax_revenue", &grid_argmax_revenue, py::arg("dist"), py::arg("capacity"),
          py::arg("n_points") = 10001);
    m.def("verify_ic_ir", &verify_ic_ir, py::arg("dist"), py::arg("capacity"), py::arg("mech"),
          py::arg("n_types") = 501);
    m.def("posted_price_best_response", &posted_price_best_response, py::arg("dist"),
          py::arg("capacity"), py::arg("n_prices") = 1001);
    m.def("two_step_dominance_check", &two_step_dominance_check, py::arg("dist"),
          py::arg("capacity"), py::arg("n_trials") = 1000, py::arg("seed") = 0);
    m.def("simulate_market",
          [](const RegularDistribution& dist, double capacity, double price,
             std::int64_t n_buyers, std::uint64_t seed, int n_threads) {
              if (dist.family() == Family::custom)
                  return simulate_market(dist, capacity, price, n_buyers, seed, 1);
              py::gil_scoped_release release;
              return simulate_market(dist, capacity, price, n_buyers, seed, n_threads);
          },
          py::arg("dist"), py::arg("capacity"), py::arg("price"), py::arg("n_buyers"),
          py::arg("seed"), py::arg("n_threads") = 0);
}
