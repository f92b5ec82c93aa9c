"""Pairwise affinity kernels.

Two families are supported: a cosine-similarity affinity remapped to
[0, 1], and a Gaussian (squared-exponential) kernel.  Both are symmetric
and bounded, ``K(a, b) in [0, 1]``, with ``K(a, a) = 1`` for any nonzero
vector.

The Gaussian ``width`` is the *full* scale denominator::

    K(a, b) = exp(-||a - b||^2 / width)

Callers pass one number; no squaring or doubling happens internally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

COSINE = "cosine"
GAUSSIAN = "gaussian"

# Norm guard for the cosine kernel: a row whose norm falls below this is
# treated as having norm NORM_EPS, so a dead (all-zero) embedding yields
# the neutral similarity 0.5 instead of raising mid-training.
NORM_EPS = 1e-8


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus width. ``width`` is required for Gaussian, ignored for cosine."""

    family: str
    width: float | None = None

    def __post_init__(self):
        if self.family not in (COSINE, GAUSSIAN):
            raise ValueError(f"unknown kernel family: {self.family!r}")
        if self.family == GAUSSIAN:
            if self.width is None or not np.isfinite(self.width) or self.width <= 0:
                raise ValueError("Gaussian kernel requires a positive finite width")


def cosine_kernel() -> KernelSpec:
    return KernelSpec(COSINE)


def gaussian_kernel(width: float) -> KernelSpec:
    return KernelSpec(GAUSSIAN, float(width))


def _safe_norms(x: np.ndarray) -> np.ndarray:
    return np.maximum(np.linalg.norm(x, axis=-1), NORM_EPS)


def kernel_eval(a, b, spec: KernelSpec) -> float:
    """Evaluate the kernel on a single pair of vectors.

    Symmetric by construction (commutative reductions only), with the
    result in [0, 1].  Raises ValueError on dimension mismatch.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"vectors must share one dimension, got {a.shape} and {b.shape}")
    if spec.family == COSINE:
        cos = float(np.dot(a, b)) / (float(_safe_norms(a)) * float(_safe_norms(b)))
        cos = min(1.0, max(-1.0, cos))
        return 0.5 * (cos + 1.0)
    d2 = float(np.sum((a - b) ** 2))
    return float(np.exp(-d2 / spec.width))


def kernel_matrix(x: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """Full N x N kernel matrix of the rows of ``x``, self-pairs included.

    The result is exactly symmetric: the raw Gram product is averaged
    with its transpose before any nonlinearity, so entry (i, j) and
    entry (j, i) go through identical arithmetic.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError("expected an N x D matrix")
    if spec.family == COSINE:
        u = x / _safe_norms(x)[:, None]
        g = u @ u.T
        g = (g + g.T) / 2.0
        return (np.clip(g, -1.0, 1.0) + 1.0) / 2.0
    ss = np.einsum("ij,ij->i", x, x)
    g = x @ x.T
    g = (g + g.T) / 2.0
    d2 = np.clip(ss[:, None] + ss[None, :] - 2.0 * g, 0.0, None)
    return np.exp(-d2 / spec.width)
