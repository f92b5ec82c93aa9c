"""Quadratic mutual information between a representation and a labeling,
decomposed into information potentials.

Unlike the conditional-probability machinery, the potential sums run
over **all** pairs, self-pairs included; the two conventions differ and
both are deliberate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import KernelSpec, kernel_matrix


@dataclass(frozen=True)
class PotentialSet:
    """In-class, all-pairs, and class-against-all interaction potentials."""

    v_in: float
    v_all: float
    v_btw: float
    qmi: float


@dataclass(frozen=True)
class EqualityReport:
    """Worst pairwise kernel disagreement between two embeddings of the same samples."""

    max_deviation: float
    within_tol: bool
    tol: float


def information_potentials(feats: np.ndarray, labels, spec: KernelSpec) -> PotentialSet:
    """Compute V_in, V_all, V_btw and their combination ``v_in + v_all - 2 v_btw``.

    With class sizes J_p and N samples:

        v_in  = (1/N^2) sum_p sum_{k,l in p} K(x_k, x_l)
        v_all = (1/N^2) (sum_p (J_p/N)^2) sum_{k,l} K(x_k, x_l)
        v_btw = (1/N^2) sum_p (J_p/N) sum_{j in p} sum_k K(x_j, x_k)
    """
    feats = np.asarray(feats, dtype=float)
    labels = np.asarray(labels)
    if feats.ndim != 2 or feats.shape[0] < 2:
        raise ValueError("expected an N x D feature matrix with N >= 2")
    if labels.ndim != 1 or labels.shape[0] != feats.shape[0]:
        raise ValueError("label list length does not match the feature matrix")

    n = feats.shape[0]
    k = kernel_matrix(feats, spec)
    total = k.sum()

    v_in = 0.0
    v_btw = 0.0
    prior_sq = 0.0
    for lab in np.unique(labels):
        idx = np.where(labels == lab)[0]
        prior = idx.size / n
        v_in += k[np.ix_(idx, idx)].sum()
        v_btw += prior * k[idx, :].sum()
        prior_sq += prior * prior

    v_in /= n * n
    v_btw /= n * n
    v_all = prior_sq * total / (n * n)
    return PotentialSet(v_in=v_in, v_all=v_all, v_btw=v_btw, qmi=v_in + v_all - 2.0 * v_btw)


def potential_equality_check(
    teacher: np.ndarray,
    student: np.ndarray,
    spec_t: KernelSpec,
    spec_s: KernelSpec,
    tol: float,
) -> EqualityReport:
    """Max over all pairs of ``|K_t(x_i, x_j) - K_s(y_i, y_j)|``.

    When the deviation stays within ``tol``, every information potential
    of the two embeddings agrees within ``tol`` as well for any labeling
    (each potential is a 1/N^2-scaled sum of N^2 kernel terms with
    weights at most 1).
    """
    teacher = np.asarray(teacher, dtype=float)
    student = np.asarray(student, dtype=float)
    if teacher.shape[0] != student.shape[0]:
        raise ValueError("teacher and student must embed the same samples")
    dev = np.abs(kernel_matrix(teacher, spec_t) - kernel_matrix(student, spec_s))
    max_dev = float(dev.max())
    return EqualityReport(max_deviation=max_dev, within_tol=max_dev <= tol, tol=tol)
