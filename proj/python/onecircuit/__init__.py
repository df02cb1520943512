"""Single-circuit parameter-shift gradients for variational quantum circuits."""

from ._core import (
    AnsatzConfig,
    BranchOracleReport,
    Dataset,
    EncodedInput,
    GradientReport,
    ImprovedRun,
    ResourceReport,
    ShiftRule,
    ShotPlan,
    amplitude_encode,
    branch_oracle_check,
    classical_control_gradients,
    classical_control_run,
    conventional_gradients,
    cost_from_distribution,
    exact_gradients,
    generate_random_dataset,
    improved_gradients,
    improved_run,
    load_idx_images,
    load_report,
    model_resources,
    persist_report,
)

__all__ = [
    "AnsatzConfig",
    "BranchOracleReport",
    "Dataset",
    "EncodedInput",
    "GradientReport",
    "ImprovedRun",
    "ResourceReport",
    "ShiftRule",
    "ShotPlan",
    "amplitude_encode",
    "branch_oracle_check",
    "classical_control_gradients",
    "classical_control_run",
    "conventional_gradients",
    "cost_from_distribution",
    "exact_gradients",
    "generate_random_dataset",
    "improved_gradients",
    "improved_run",
    "load_idx_images",
    "load_report",
    "model_resources",
    "persist_report",
]
