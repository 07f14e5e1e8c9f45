"""Plateau-discretized black-box benchmarking: problems, optimizers, metrics and the experiment harness."""

from ._core import (
    SOLVED_DELTA,
    DiscretizedProblem,
    ExperimentConfig,
    ProblemInstance,
    RhobenchError,
    RunRecord,
    cma_run,
    default_margin,
    default_targets,
    ecdf,
    ert,
    es_run,
    evaluate_raw,
    ga_run,
    hitting_time,
    intea_run,
    landscape,
    load_config,
    load_results,
    log_budgets,
    make_instance,
    max_entropy_sample,
    optimum,
    parse_config,
    run_experiment,
    snap_to_plateau,
    success_rate,
    summarize,
)

__all__ = [
    "SOLVED_DELTA",
    "DiscretizedProblem",
    "ExperimentConfig",
    "ProblemInstance",
    "RhobenchError",
    "RunRecord",
    "cma_run",
    "default_margin",
    "default_targets",
    "ecdf",
    "ert",
    "es_run",
    "evaluate_raw",
    "ga_run",
    "hitting_time",
    "intea_run",
    "landscape",
    "load_config",
    "load_results",
    "log_budgets",
    "make_instance",
    "max_entropy_sample",
    "optimum",
    "parse_config",
    "run_experiment",
    "snap_to_plateau",
    "success_rate",
    "summarize",
]
