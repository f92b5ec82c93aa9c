"""Batch affinity matrices: joint and conditional kernel densities.

Orientation convention, fixed once here: entry ``[i, j]`` of a
conditional matrix is the probability of sample *i* given conditioning
sample *j*, i.e. the normalization runs down each **column** (the
denominator sums kernel values against sample j over all k != j).
Consumers that need "the probability of j given i" read entry ``[j, i]``.
Diagonals are identically zero, never NaN; self-pairs are excluded from
every sum.
"""

from __future__ import annotations

import logging

import numpy as np

from .kernels import KernelSpec, kernel_matrix

log = logging.getLogger(__name__)

# A conditioning column whose off-diagonal kernel mass falls below this is
# geometrically degenerate (every partner at affinity ~0).
DENOM_FLOOR = 1e-12


def _checked_features(feats: np.ndarray) -> np.ndarray:
    feats = np.asarray(feats, dtype=float)
    if feats.ndim != 2:
        raise ValueError("expected an N x D feature matrix")
    if feats.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    if not np.all(np.isfinite(feats)):
        raise ValueError("feature matrix contains non-finite entries")
    return feats


def joint_density(feats: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """Kernel density estimate of the pairwise joint: ``K(x_i, x_j) / N`` off the diagonal."""
    feats = _checked_features(feats)
    k = kernel_matrix(feats, spec)
    np.fill_diagonal(k, 0.0)
    return k / feats.shape[0]


def kernel_and_conditionals(
    feats: np.ndarray, spec: KernelSpec
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(k, colsums, q)`` with the diagonal of ``k`` zeroed.

    ``q[:, j] = k[:, j] / colsums[j]`` is the conditional distribution
    for slot j.  Shared by the loss gradient, which needs all three.
    """
    feats = _checked_features(feats)
    k = kernel_matrix(feats, spec)
    np.fill_diagonal(k, 0.0)
    colsums = k.sum(axis=0)
    if np.any(colsums < DENOM_FLOOR):
        raise ValueError("degenerate geometry: a conditioning slot has near-zero kernel mass")
    q = k / colsums[None, :]
    return k, colsums, q


def conditional_probabilities(feats: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """Column-stochastic conditional matrix; each slot sums to 1 over its non-self partners."""
    _, _, q = kernel_and_conditionals(feats, spec)
    return q


def sample_batch(n_total: int, batch_size: int, rng_seed: int, epoch: int) -> list[np.ndarray]:
    """Split a per-epoch permutation of ``range(n_total)`` into consecutive chunks.

    The permutation is a deterministic function of ``(rng_seed, epoch)``.
    A trailing chunk of size < 2 is dropped (conditional probabilities
    are undefined on a single sample); shorter-than-full tails of size
    >= 2 are kept.
    """
    if batch_size < 2:
        raise ValueError("batch_size must be at least 2")
    if batch_size > n_total:
        raise ValueError("batch_size cannot exceed the number of samples")
    rng = np.random.default_rng([rng_seed, epoch])
    perm = rng.permutation(n_total)
    chunks = [perm[i : i + batch_size] for i in range(0, n_total, batch_size)]
    if len(chunks[-1]) < 2:
        log.debug("dropping tail batch of size %d in epoch %d", len(chunks[-1]), epoch)
        chunks.pop()
    return chunks
