"""The transfer training loop: per-epoch shuffling, per-batch teacher
and student conditional matrices, analytic gradient, backprop, Adam.

Teacher conditionals are rebuilt from the stored teacher features for
every batch rather than precomputed globally, keeping memory at O(B^2)
and matching the batch-wise estimation of the full similarity
structure.  Class labels are only touched when ``sup_weight > 0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .affinity import conditional_probabilities, sample_batch
from .divergence import pkt_loss_and_grad, supervised_targets
from .kernels import KernelSpec, cosine_kernel
from .student import StudentModel, adam_step, init_adam

log = logging.getLogger(__name__)


@dataclass
class TrainConfig:
    epochs: int = 1
    batch_size: int = 128
    lr: float = 1e-4
    teacher_spec: KernelSpec = field(default_factory=cosine_kernel)
    student_spec: KernelSpec = field(default_factory=cosine_kernel)
    sup_weight: float = 0.0
    seed: int = 0
    log_every: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be at least 1")
        if self.batch_size < 2:
            raise ValueError("batch_size must be at least 2")
        if self.lr <= 0:
            raise ValueError("lr must be positive")
        if self.sup_weight < 0:
            raise ValueError("sup_weight must be nonnegative")


@dataclass
class TraceEntry:
    epoch: int
    batch: int
    loss: float


def train(
    model: StudentModel,
    raw_inputs: np.ndarray,
    teacher_feats: np.ndarray,
    labels=None,
    cfg: TrainConfig | None = None,
) -> tuple[StudentModel, list[TraceEntry]]:
    """Fit the student to the teacher's conditional structure; returns the per-batch loss trace."""
    cfg = cfg if cfg is not None else TrainConfig()
    raw_inputs = np.asarray(raw_inputs, dtype=float)
    teacher_feats = np.asarray(teacher_feats, dtype=float)
    n = raw_inputs.shape[0]
    if teacher_feats.shape[0] != n:
        raise ValueError("raw inputs and teacher features must have equal row counts")
    if cfg.sup_weight > 0:
        if labels is None:
            raise ValueError("sup_weight > 0 requires labels")
        labels = np.asarray(labels)
        if labels.shape[0] != n:
            raise ValueError("label count does not match the inputs")

    state = init_adam(model.parameters(), lr=cfg.lr)
    trace: list[TraceEntry] = []
    for epoch in range(cfg.epochs):
        chunks = sample_batch(n, cfg.batch_size, cfg.seed, epoch)
        for b, idx in enumerate(chunks):
            p = conditional_probabilities(teacher_feats[idx], cfg.teacher_spec)
            x = raw_inputs[idx]
            y = model.forward(x)
            sup = None
            if cfg.sup_weight > 0:
                targets, _ = supervised_targets(labels[idx])
                sup = (targets, cfg.sup_weight)
            report = pkt_loss_and_grad(y, p, cfg.student_spec, sup)
            grads = model.backward(x, report.grad_y)
            adam_step(state, model.parameters(), grads)
            trace.append(TraceEntry(epoch=epoch, batch=b, loss=report.value))
            if cfg.log_every > 0 and len(trace) % cfg.log_every == 0:
                log.info("%d %d %.17g", epoch, b, report.value)
    return model, trace
