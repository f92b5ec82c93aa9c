"""Content-based retrieval evaluation: cosine ranking, 11-point
interpolated average precision, and top-k precision.

Relevance is exact label equality.  Queries with no relevant database
item have undefined AP; they are excluded from every mean and counted
in the result.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .kernels import NORM_EPS

log = logging.getLogger(__name__)


@dataclass
class RetrievalIndex:
    db_feats: np.ndarray
    db_labels: np.ndarray

    def __post_init__(self):
        self.db_feats = np.asarray(self.db_feats, dtype=float)
        self.db_labels = np.asarray(self.db_labels)
        if self.db_feats.ndim != 2:
            raise ValueError("database features must be an N x D matrix")
        if self.db_labels.shape[0] != self.db_feats.shape[0]:
            raise ValueError("database label count does not match the features")


@dataclass
class RetrievalResult:
    map: float
    top_k: dict[int, float]
    per_query_ap: list[float]
    n_skipped: int


def rank(index: RetrievalIndex, query: np.ndarray) -> np.ndarray:
    """Database indices by descending cosine similarity; ties broken by ascending index."""
    query = np.asarray(query, dtype=float)
    if query.shape != (index.db_feats.shape[1],):
        raise ValueError(f"query dim {query.shape} does not match database dim {index.db_feats.shape[1]}")
    db = index.db_feats
    norms = np.maximum(np.linalg.norm(db, axis=1), NORM_EPS)
    qn = max(np.linalg.norm(query), NORM_EPS)
    sims = (db @ query) / (norms * qn)
    return np.argsort(-sims, kind="stable")


def average_precision_11pt(ranked_relevance, n_relevant_total: int) -> float:
    """Interpolated AP: mean over recall levels 0.0, 0.1, ..., 1.0 of the
    maximum precision at any cutoff reaching that recall.

    Levels never reached contribute 0.  Recall comparisons are done in
    integer arithmetic (10 * hits >= level * total), so no level is lost
    to rounding.
    """
    rel = np.asarray(ranked_relevance, dtype=bool)
    if n_relevant_total < 1:
        raise ValueError("n_relevant_total must be at least 1")
    hits = np.cumsum(rel)
    n_hits = int(hits[-1]) if rel.size else 0
    if n_hits > n_relevant_total:
        raise ValueError("relevance list contains more hits than n_relevant_total")
    precision = hits / np.arange(1, rel.size + 1)
    total = 0.0
    for level in range(11):
        reached = 10 * hits >= level * n_relevant_total
        if np.any(reached):
            total += float(precision[reached].max())
    return total / 11.0


def top_k_precision(ranked_relevance, k: int) -> float:
    """Fraction of relevant items among the first k ranked results."""
    rel = np.asarray(ranked_relevance, dtype=bool)
    if k < 1 or k > rel.size:
        raise ValueError(f"k={k} out of range for a list of {rel.size}")
    return float(rel[:k].sum()) / k


def evaluate(
    index: RetrievalIndex,
    queries: np.ndarray,
    query_labels,
    ks: list[int] | None = None,
) -> RetrievalResult:
    """Rank every query against the database and aggregate mAP and top-k precision."""
    queries = np.asarray(queries, dtype=float)
    query_labels = np.asarray(query_labels)
    ks = list(ks) if ks else []
    if queries.ndim != 2 or queries.shape[0] == 0:
        raise ValueError("query set is empty")
    if query_labels.shape[0] != queries.shape[0]:
        raise ValueError("query label count does not match the queries")
    for k in ks:
        if k < 1 or k > index.db_feats.shape[0]:
            raise ValueError(f"top-k value {k} out of range for database of {index.db_feats.shape[0]}")

    aps: list[float] = []
    topk_sums = {k: 0.0 for k in ks}
    n_skipped = 0
    for q, lab in zip(queries, query_labels):
        n_rel = int(np.sum(index.db_labels == lab))
        if n_rel == 0:
            n_skipped += 1
            continue
        order = rank(index, q)
        rel = index.db_labels[order] == lab
        aps.append(average_precision_11pt(rel, n_rel))
        for k in ks:
            topk_sums[k] += top_k_precision(rel, k)

    if not aps:
        log.error("every query was skipped: no query label occurs in the database")
        return RetrievalResult(map=float("nan"), top_k={k: float("nan") for k in ks},
                               per_query_ap=[], n_skipped=n_skipped)
    return RetrievalResult(
        map=float(np.mean(aps)),
        top_k={k: topk_sums[k] / len(aps) for k in ks},
        per_query_ap=aps,
        n_skipped=n_skipped,
    )
