"""mirrorkit: mirror-descent kernel SGD trainers and a benchmark harness."""

from .bench import (
    CSV_HEADER,
    ExperimentConfig,
    OracleGapReport,
    RunResult,
    emit_csv,
    evaluate_accuracy,
    load_experiment_config,
    oracle_gap_report,
    run_experiment,
)
from .datasets import (
    Dataset,
    DatasetStats,
    LabeledSample,
    ParseError,
    SparseVector,
    dataset_stats,
    dot,
    dump_libsvm,
    load_libsvm,
    normalize_unit,
    parse_libsvm,
    squared_distance,
    to_csr,
)
from .kernels import (
    KernelDomainError,
    KernelSpec,
    PsdReport,
    gram_matrix,
    kernel_eval,
    kernel_matrix,
    psd_check,
)
from .losses import LossSpec, loss_grad, loss_value, sigmoid_transfer, zero_one_error
from .optimizer import (
    EUCLIDEAN,
    DualModel,
    MirrorMap,
    RegretTrace,
    StepSchedule,
    TrainerConfig,
    draw_indices,
    mirror_step,
    regret_of,
    step_size,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "Dataset",
    "DatasetStats",
    "DualModel",
    "EUCLIDEAN",
    "ExperimentConfig",
    "KernelDomainError",
    "KernelSpec",
    "LabeledSample",
    "LossSpec",
    "MirrorMap",
    "OracleGapReport",
    "ParseError",
    "PsdReport",
    "RegretTrace",
    "RunResult",
    "SparseVector",
    "StepSchedule",
    "TrainerConfig",
    "dataset_stats",
    "dot",
    "draw_indices",
    "dump_libsvm",
    "emit_csv",
    "evaluate_accuracy",
    "gram_matrix",
    "kernel_eval",
    "kernel_matrix",
    "load_experiment_config",
    "load_libsvm",
    "loss_grad",
    "loss_value",
    "mirror_step",
    "normalize_unit",
    "oracle_gap_report",
    "parse_libsvm",
    "psd_check",
    "regret_of",
    "run_experiment",
    "sigmoid_transfer",
    "squared_distance",
    "step_size",
    "to_csr",
    "train",
    "zero_one_error",
]
