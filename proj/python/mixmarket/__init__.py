"""Revenue-optimal monopoly pricing against a capacity-constrained,
randomly rationed public option: mechanism solver, welfare and
comparative statics, and brute-force/Monte Carlo verification oracles."""

from ._core import (
    ComplementOutcome,
    ConditionReport,
    ConfigError,
    ConvergenceError,
    HazardRateCriterion,
    Distribution,
    Family,
    GeneralSolution,
    ICReport,
    MarketParams,
    MechanismSolution,
    PriceSearchResult,
    Regime,
    RegularityError,
    RegularityReport,
    SimulationResult,
    SweepResult,
    WelfareReport,
    aggregate_consumer_surplus,
    bertrand_limit_cutoff,
    check_condition,
    complement_outcome,
    complement_surplus,
    condition_lhs,
    consumer_surplus,
    hazard_rate_criterion,
    cutoff_sensitivity,
    effective_cost,
    entry_gain,
    foc_residual,
    grid_argmax_revenue,
    monopoly_only_surplus,
    op_objective,
    posted_price_best_response,
    price_sensitivity,
    producer_surplus_sensitivity,
    public_only_surplus,
    rationing_sensitivity,
    revenue_at_cutoff,
    simulate_market,
    solve_cutoff,
    solve_general,
    solve_mechanism,
    sweep,
    two_step_dominance_check,
    verify_ic_ir,
    welfare_report,
)

__all__ = [
    "ComplementOutcome",
    "ConditionReport",
    "ConfigError",
    "ConvergenceError",
    "HazardRateCriterion",
    "Distribution",
    "Family",
    "GeneralSolution",
    "ICReport",
    "MarketParams",
    "MechanismSolution",
    "PriceSearchResult",
    "Regime",
    "RegularityError",
    "RegularityReport",
    "SimulationResult",
    "SweepResult",
    "WelfareReport",
    "aggregate_consumer_surplus",
    "bertrand_limit_cutoff",
    "check_condition",
    "complement_outcome",
    "complement_surplus",
    "condition_lhs",
    "consumer_surplus",
    "hazard_rate_criterion",
    "cutoff_sensitivity",
    "effective_cost",
    "entry_gain",
    "foc_residual",
    "grid_argmax_revenue",
    "monopoly_only_surplus",
    "op_objective",
    "posted_price_best_response",
    "price_sensitivity",
    "producer_surplus_sensitivity",
    "public_only_surplus",
    "rationing_sensitivity",
    "revenue_at_cutoff",
    "simulate_market",
    "solve_cutoff",
    "solve_general",
    "solve_mechanism",
    "sweep",
    "two_step_dominance_check",
    "verify_ic_ir",
    "welfare_report",
]

__version__ = "0.1.0"
