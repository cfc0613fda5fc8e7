"""
Experiment Harness

Seeded multi-attempt sweeps over instance families, with results and summary CSVs.
"""

from .experiment import (
    RESULT_COLUMNS,
    SOURCES,
    SUMMARY_COLUMNS,
    ExperimentConfig,
    ResultRow,
    SummaryRow,
    attempt_seed,
    derive_seed,
    instance_sources,
    load_experiment_config,
    run_experiment,
    summarize,
    write_experiment,
    write_results,
    write_summary,
)

__all__ = [
    "RESULT_COLUMNS",
    "SOURCES",
    "SUMMARY_COLUMNS",
    "ExperimentConfig",
    "ResultRow",
    "SummaryRow",
    "attempt_seed",
    "derive_seed",
    "instance_sources",
    "load_experiment_config",
    "run_experiment",
    "summarize",
    "write_experiment",
    "write_results",
    "write_summary",
]
