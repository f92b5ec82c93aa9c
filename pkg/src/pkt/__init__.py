"""Probabilistic knowledge transfer between feature representations.

A fixed teacher representation induces, through a kernel, a conditional
probability of each sample given each other sample in a batch.  A small
trainable student is fit so that its own conditionals match the
teacher's under a KL objective, optionally blended with label-derived
targets.  Companion tools measure quadratic mutual information
potentials and retrieval quality of the learned embedding.
"""

from __future__ import annotations

from .affinity import (
    conditional_probabilities,
    joint_density,
    kernel_and_conditionals,
    sample_batch,
)
from .divergence import (
    LossReport,
    kl_loss,
    pkt_loss_and_grad,
    quadratic_loss,
    supervised_targets,
)
from .featio import read_features, read_labels, write_features, write_labels
from .gradcheck import check_instance, finite_difference, max_relative_error, run_battery
from .kernels import (
    COSINE,
    GAUSSIAN,
    KernelSpec,
    cosine_kernel,
    gaussian_kernel,
    kernel_eval,
    kernel_matrix,
)
from .qmi import EqualityReport, PotentialSet, information_potentials, potential_equality_check
from .retrieval import (
    RetrievalIndex,
    RetrievalResult,
    average_precision_11pt,
    evaluate,
    rank,
    top_k_precision,
)
from .student import (
    AdamState,
    StudentModel,
    adam_step,
    init_adam,
    init_student,
    load_model,
    save_model,
)
from .trainer import TraceEntry, TrainConfig, train

__version__ = "0.1.0"

__all__ = [
    "AdamState",
    "COSINE",
    "EqualityReport",
    "GAUSSIAN",
    "KernelSpec",
    "LossReport",
    "PotentialSet",
    "RetrievalIndex",
    "RetrievalResult",
    "StudentModel",
    "TraceEntry",
    "TrainConfig",
    "adam_step",
    "average_precision_11pt",
    "check_instance",
    "finite_difference",
    "conditional_probabilities",
    "cosine_kernel",
    "evaluate",
    "gaussian_kernel",
    "information_potentials",
    "init_adam",
    "init_student",
    "joint_density",
    "kernel_and_conditionals",
    "kernel_eval",
    "kernel_matrix",
    "kl_loss",
    "load_model",
    "max_relative_error",
    "pkt_loss_and_grad",
    "potential_equality_check",
    "quadratic_loss",
    "rank",
    "read_features",
    "read_labels",
    "run_battery",
    "sample_batch",
    "save_model",
    "supervised_targets",
    "top_k_precision",
    "train",
    "write_features",
    "write_labels",
]
