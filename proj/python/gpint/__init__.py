"""Gaussian-process pathwise integration toolkit.

Simulation of Gaussian processes in a Holder covariance class, fractional
calculus and pathwise (generalized Lebesgue-Stieltjes / forward) integrals,
the replication constructions, and a Monte Carlo verification harness.
"""

from ._core import (
    BlockRecord,
    ClassReport,
    ConditionalArctanEvaluator,
    CovarianceModel,
    CrossingReport,
    EstimateWithCI,
    HolderParams,
    LemmaParams,
    PartitionSchedule,
    ReplicationOutcome,
    SmallballConditionReport,
    SmallballSweepReport,
    TargetSpec,
    TimeGrid,
    ZeroIntegralReport,
    besov_norm_w2,
    build_diverging_integrand,
    check_class_membership,
    check_smallball_conditions,
    crossing_check,
    default_beta,
    default_holder_params,
    default_lemma_params,
    derive_seed,
    follmer_integral,
    gls_bound,
    gls_integral,
    ito_residual_indicator,
    ks_test,
    partition_schedule,
    replicate_distribution,
    replicate_holder,
    replicate_rv,
    rl_derivative_left,
    rl_derivative_right,
    sample_paths,
    smallball_estimate,
    smallball_sweep,
    zero_integral_demo,
)

__all__ = [name for name in dir() if not name.startswith("_")]
